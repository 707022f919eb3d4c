// SPDX-License-Identifier: MIT
#include "linklab/adsb.hpp"

#include <cmath>
#include <numbers>

#include "linklab/errors.hpp"

namespace linklab::adsb {

namespace {

constexpr int kNz = 15;
constexpr double kTwoPow17 = 131072.0;

// Index 0-63; '#' = not assignable from a callsign.
constexpr std::string_view kCharset =
    "#ABCDEFGHIJKLMNOPQRSTUVWXYZ##### ###############0123456789######";

int char_to_code(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A' + 1;
    if (c >= '0' && c <= '9') return c - '0' + 48;
    if (c == ' ') return 32;
    return -1;
}

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

double positive_fmod(double a, double b) {
    double r = std::fmod(a, b);
    return r < 0 ? r + b : r;
}

// floor(x + 0.5): the standard's rounding; negative operands round toward +inf.
long round_half_up(double x) { return static_cast<long>(std::floor(x + 0.5)); }

BitVec assemble(std::uint8_t df, std::uint8_t ca, std::uint32_t icao24, const BitVec& me) {
    BitVec raw;
    raw.append_uint(df, 5);
    raw.append_uint(ca, 3);
    raw.append_uint(icao24, 24);
    raw.append(me);
    raw.append_uint(crc24(raw), 24);
    return raw;
}

ModeSFrame make_frame(std::uint32_t icao24, const BitVec& me) {
    ModeSFrame f;
    f.icao24 = icao24;
    f.me = me;
    f.raw = assemble(f.df, f.ca, icao24, me);
    f.parity = static_cast<std::uint32_t>(f.raw.get_uint(88, 24));
    return f;
}

} // namespace

std::string_view charset6() { return kCharset; }

std::uint32_t crc24(const BitVec& data) {
    if (data.size() != 88) throw LengthError("crc24: input must be exactly 88 bits");
    std::uint32_t rem = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        rem ^= static_cast<std::uint32_t>(data[i]) << 23;
        bool msb = rem & 0x800000u;
        rem = (rem << 1) & 0xFFFFFFu;
        if (msb) rem ^= (kCrcPoly & 0xFFFFFFu);
    }
    return rem;
}

std::uint32_t crc24_remainder(const BitVec& frame) {
    // Same shift register, but the trailing 24 bits are data, not implicit zeros.
    std::uint32_t rem = 0;
    for (std::size_t i = 0; i + 24 < frame.size(); ++i) {
        rem ^= static_cast<std::uint32_t>(frame[i]) << 23;
        bool msb = rem & 0x800000u;
        rem = (rem << 1) & 0xFFFFFFu;
        if (msb) rem ^= (kCrcPoly & 0xFFFFFFu);
    }
    return rem ^ static_cast<std::uint32_t>(frame.get_uint(frame.size() - 24, 24));
}

void refresh_crc(BitVec& frame) {
    if (frame.size() != 112) throw LengthError("refresh_crc: frame must be 112 bits");
    frame.set_uint(88, 24, crc24(frame.slice(0, 88)));
}

int nl_zones(double lat_deg) {
    double a = std::abs(lat_deg);
    if (a >= 87.0) return 1;
    if (a < 1e-9) return 59;
    double num = 1.0 - std::cos(std::numbers::pi / (2.0 * kNz));
    double den = std::cos(deg2rad(a));
    double arg = 1.0 - num / (den * den);
    if (arg <= -1.0) return 1;
    int nl = static_cast<int>(std::floor(2.0 * std::numbers::pi / std::acos(arg)));
    return std::clamp(nl, 1, 59);
}

CprPosition cpr_encode(double lat_deg, double lon_deg, CprFormat format) {
    if (!(lat_deg >= -90.0 && lat_deg <= 90.0))
        throw ValidationError("cpr_encode: latitude outside [-90, 90]");
    int odd = format == CprFormat::Odd ? 1 : 0;
    double dlat = 360.0 / (4.0 * kNz - odd);
    long yz = round_half_up(kTwoPow17 * positive_fmod(lat_deg, dlat) / dlat);
    double rlat = dlat * (static_cast<double>(yz) / kTwoPow17 + std::floor(lat_deg / dlat));
    int nl = nl_zones(rlat) - odd;
    double dlon = 360.0 / std::max(nl, 1);
    long xz = round_half_up(kTwoPow17 * positive_fmod(lon_deg, dlon) / dlon);
    CprPosition out;
    out.lat_cpr = static_cast<std::uint32_t>(((yz % 131072) + 131072) % 131072);
    out.lon_cpr = static_cast<std::uint32_t>(((xz % 131072) + 131072) % 131072);
    out.format = format;
    return out;
}

GeoPos cpr_decode_global(const CprPosition& even, const CprPosition& odd, CprFormat most_recent) {
    if (even.format != CprFormat::Even || odd.format != CprFormat::Odd)
        throw ValidationError("cpr_decode_global: arguments must be one even and one odd position");
    double lat_e = even.lat_cpr, lon_e = even.lon_cpr;
    double lat_o = odd.lat_cpr, lon_o = odd.lon_cpr;
    double dlat_e = 360.0 / 60.0, dlat_o = 360.0 / 59.0;

    long j = round_half_up((59.0 * lat_e - 60.0 * lat_o) / kTwoPow17);
    auto modl = [](long a, long m) { return ((a % m) + m) % m; };
    double rlat_e = dlat_e * (static_cast<double>(modl(j, 60)) + lat_e / kTwoPow17);
    double rlat_o = dlat_o * (static_cast<double>(modl(j, 59)) + lat_o / kTwoPow17);
    if (rlat_e >= 270.0) rlat_e -= 360.0;
    if (rlat_o >= 270.0) rlat_o -= 360.0;
    if (rlat_e < -90.0 || rlat_e > 90.0 || rlat_o < -90.0 || rlat_o > 90.0)
        throw CprAmbiguityError("cpr: intermediate latitude out of range");
    if (nl_zones(rlat_e) != nl_zones(rlat_o))
        throw CprAmbiguityError("cpr: even/odd pair crosses a latitude zone boundary");

    GeoPos out;
    int nl = nl_zones(most_recent == CprFormat::Even ? rlat_e : rlat_o);
    long m = round_half_up((lon_e * (nl - 1) - lon_o * nl) / kTwoPow17);
    if (most_recent == CprFormat::Even) {
        int ni = std::max(nl, 1);
        out.lon = (360.0 / ni) * (static_cast<double>(modl(m, ni)) + lon_e / kTwoPow17);
        out.lat = rlat_e;
    } else {
        int ni = std::max(nl - 1, 1);
        out.lon = (360.0 / ni) * (static_cast<double>(modl(m, ni)) + lon_o / kTwoPow17);
        out.lat = rlat_o;
    }
    out.lon -= std::floor((out.lon + 180.0) / 360.0) * 360.0;
    return out;
}

void validate(const KinematicState& s) {
    if (!(s.latitude_deg >= -90.0 && s.latitude_deg <= 90.0))
        throw ValidationError("latitude outside [-90, 90]");
    if (!(s.longitude_deg >= -180.0 && s.longitude_deg < 180.0))
        throw ValidationError("longitude outside [-180, 180)");
    if (s.callsign.empty() || s.callsign.size() > 8)
        throw ValidationError("callsign must be 1-8 characters");
    for (char c : s.callsign)
        if (char_to_code(c) < 0)
            throw ValidationError("illegal callsign character '" + std::string(1, c) + "'");
    if (!(s.ground_speed_kt >= 0.0)) throw ValidationError("negative ground speed");
    if (!(s.track_deg >= 0.0 && s.track_deg < 360.0))
        throw ValidationError("track outside [0, 360)");
}

ModeSFrame encode_identification(std::uint32_t icao24, std::string_view callsign) {
    if (icao24 > 0xFFFFFF) throw ValidationError("icao24 wider than 24 bits");
    if (callsign.empty() || callsign.size() > 8)
        throw ValidationError("callsign must be 1-8 characters");
    BitVec me;
    me.append_uint(4, 5); // TC 4, category set A
    me.append_uint(0, 3);
    for (std::size_t i = 0; i < 8; ++i) {
        char c = i < callsign.size() ? callsign[i] : ' ';
        int code = char_to_code(c);
        if (code < 0)
            throw ValidationError("illegal callsign character '" + std::string(1, c) + "'");
        me.append_uint(static_cast<std::uint64_t>(code), 6);
    }
    return make_frame(icao24, me);
}

std::uint16_t encode_altitude_field(double altitude_ft) {
    long n = std::lround((altitude_ft + 1000.0) / 25.0);
    if (n < 0 || n > 2047)
        throw RangeError("altitude outside the 25 ft Q-bit range [-1000, 50175] ft");
    return static_cast<std::uint16_t>(((n >> 4) << 5) | (1u << 4) | (n & 0xF));
}

std::optional<double> decode_altitude_field(std::uint16_t field) {
    if (field == 0) return std::nullopt;      // no altitude information
    if (!((field >> 4) & 1)) return std::nullopt; // Q = 0 (100 ft Gillham) unsupported
    long n = static_cast<long>(((field >> 5) << 4) | (field & 0xF));
    return 25.0 * static_cast<double>(n) - 1000.0;
}

ModeSFrame encode_airborne_position(std::uint32_t icao24, const KinematicState& state,
                                    CprFormat format) {
    if (icao24 > 0xFFFFFF) throw ValidationError("icao24 wider than 24 bits");
    validate(state);
    std::uint16_t alt = encode_altitude_field(state.altitude_ft);
    CprPosition cpr = cpr_encode(state.latitude_deg, state.longitude_deg, format);
    BitVec me;
    me.append_uint(11, 5); // TC 11: airborne position, baro altitude
    me.append_uint(0, 2);  // surveillance status
    me.append_uint(0, 1);
    me.append_uint(alt, 12);
    me.append_uint(0, 1); // time flag
    me.append_uint(format == CprFormat::Odd ? 1 : 0, 1);
    me.append_uint(cpr.lat_cpr, 17);
    me.append_uint(cpr.lon_cpr, 17);
    return make_frame(icao24, me);
}

ModeSFrame encode_velocity(std::uint32_t icao24, const KinematicState& state) {
    validate(state);
    if (state.ground_speed_kt > 1022.0)
        throw RangeError("ground speed above 1022 kt (subtype 1 maximum)");
    double tr = deg2rad(state.track_deg);
    long ew = std::lround(state.ground_speed_kt * std::sin(tr));
    long ns = std::lround(state.ground_speed_kt * std::cos(tr));
    BitVec me;
    me.append_uint(19, 5);
    me.append_uint(1, 3); // subtype 1: ground speed, subsonic
    me.append_uint(0, 2); // intent change, IFR
    me.append_uint(0, 3); // NACv
    me.append_uint(ew < 0 ? 1 : 0, 1);
    me.append_uint(static_cast<std::uint64_t>(std::labs(ew)) + 1, 10);
    me.append_uint(ns < 0 ? 1 : 0, 1);
    me.append_uint(static_cast<std::uint64_t>(std::labs(ns)) + 1, 10);
    me.append_uint(0, 21); // vertical rate, reserved, GNSS delta
    return make_frame(icao24, me);
}

ModeSFrame encode_emergency(std::uint32_t icao24, int emergency_code) {
    if (icao24 > 0xFFFFFF) throw ValidationError("icao24 wider than 24 bits");
    if (emergency_code < 0 || emergency_code > 7)
        throw ValidationError("emergency code outside 0-7");
    BitVec me;
    me.append_uint(28, 5);
    me.append_uint(1, 3); // subtype 1: emergency/priority status
    me.append_uint(static_cast<std::uint64_t>(emergency_code), 3);
    me.append_uint(0, 13); // mode A code
    me.append_uint(0, 32);
    return make_frame(icao24, me);
}

Decoded decode_frame(const BitVec& raw, bool strict) {
    if (raw.size() != 112) throw LengthError("decode_frame: input must be 112 bits");
    Decoded d;
    d.df = static_cast<std::uint8_t>(raw.get_uint(0, 5));
    d.ca = static_cast<std::uint8_t>(raw.get_uint(5, 3));
    d.icao24 = static_cast<std::uint32_t>(raw.get_uint(8, 24));
    if (crc24_remainder(raw) != 0) d.diagnosis.flag(diag_flag::crc_failed);
    if (strict && d.diagnosis.has(diag_flag::crc_failed)) return d;
    if (d.df != 17) {
        d.diagnosis.flag(diag_flag::unknown_typecode);
        return d;
    }
    d.typecode = static_cast<std::uint8_t>(raw.get_uint(32, 5));
    if (d.typecode >= 1 && d.typecode <= 4) {
        d.kind = MsgKind::Identification;
        for (int i = 0; i < 8; ++i) {
            auto code = raw.get_uint(40 + static_cast<std::size_t>(i) * 6, 6);
            char c = kCharset[code];
            if (c == '#') d.diagnosis.bad_field("callsign");
            d.callsign.push_back(c);
        }
        while (!d.callsign.empty() && d.callsign.back() == ' ') d.callsign.pop_back();
    } else if (d.typecode >= 9 && d.typecode <= 18) {
        d.kind = MsgKind::AirbornePosition;
        auto alt = static_cast<std::uint16_t>(raw.get_uint(40, 12));
        d.altitude_ft = decode_altitude_field(alt);
        if (alt != 0 && !d.altitude_ft) d.diagnosis.bad_field("altitude");
        CprPosition cpr;
        cpr.format = raw.get_uint(53, 1) ? CprFormat::Odd : CprFormat::Even;
        cpr.lat_cpr = static_cast<std::uint32_t>(raw.get_uint(54, 17));
        cpr.lon_cpr = static_cast<std::uint32_t>(raw.get_uint(71, 17));
        d.cpr = cpr;
    } else if (d.typecode == 19) {
        d.kind = MsgKind::Velocity;
        auto subtype = raw.get_uint(37, 3);
        if (subtype != 1 && subtype != 2) {
            d.diagnosis.bad_field("velocity_subtype");
        } else {
            auto vew = raw.get_uint(46, 10);
            auto vns = raw.get_uint(57, 10);
            if (vew != 0 && vns != 0) {
                double ew = (static_cast<double>(vew) - 1.0) * (raw.get_uint(45, 1) ? -1.0 : 1.0);
                double ns = (static_cast<double>(vns) - 1.0) * (raw.get_uint(56, 1) ? -1.0 : 1.0);
                d.ground_speed_kt = std::hypot(ew, ns);
                double tr = std::atan2(ew, ns) * 180.0 / std::numbers::pi;
                if (tr < 0) tr += 360.0;
                d.track_deg = tr;
            }
        }
    } else if (d.typecode == 28) {
        d.kind = MsgKind::Status;
        auto subtype = raw.get_uint(37, 3);
        if (subtype == 1)
            d.emergency_state = static_cast<int>(raw.get_uint(40, 3));
        else
            d.diagnosis.bad_field("status_subtype");
    } else {
        d.diagnosis.flag(diag_flag::unknown_typecode);
    }
    return d;
}

std::vector<FieldSpec> field_map(int typecode) {
    std::vector<FieldSpec> out = {
        {"df", 0, 5}, {"ca", 5, 3}, {"icao24", 8, 24}, {"typecode", 32, 5}, {"parity", 88, 24},
    };
    if (typecode >= 1 && typecode <= 4) {
        out.push_back({"category", 37, 3});
        out.push_back({"callsign", 40, 48});
    } else if (typecode >= 9 && typecode <= 18) {
        out.push_back({"altitude_field", 40, 12});
        out.push_back({"cpr_format", 53, 1});
        out.push_back({"cpr_lat", 54, 17});
        out.push_back({"cpr_lon", 71, 17});
    } else if (typecode == 19) {
        out.push_back({"subtype", 37, 3});
        out.push_back({"ew_sign", 45, 1});
        out.push_back({"ew_velocity", 46, 10});
        out.push_back({"ns_sign", 56, 1});
        out.push_back({"ns_velocity", 57, 10});
    } else if (typecode == 28) {
        out.push_back({"subtype", 37, 3});
        out.push_back({"emergency_state", 40, 3});
        out.push_back({"squawk", 43, 13});
    }
    return out;
}

} // namespace linklab::adsb
