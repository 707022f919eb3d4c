// SPDX-License-Identifier: MIT
#include "linklab/epirb.hpp"

#include <cmath>
#include <sstream>

#include "linklab/errors.hpp"

namespace linklab::epirb {

namespace {

// 0-indexed field offsets inside the 144-bit message
constexpr std::size_t kFrameSyncOff = 15; // 9 bits
constexpr std::size_t kFormatOff = 24;
constexpr std::size_t kProtocolFlagOff = 25;
constexpr std::size_t kCountryOff = 26;   // 10 bits
constexpr std::size_t kProtoCodeOff = 36; // 4 bits
constexpr std::size_t kIdentityOff = 40;  // 24 bits
constexpr std::size_t kCoarsePosOff = 64; // 21 bits
constexpr std::size_t kBch1Off = 85;      // 21 bits
constexpr std::size_t kPdf2Off = 106;     // 26 bits
constexpr std::size_t kBch2Off = 132;     // 12 bits

constexpr std::uint32_t kFrameSyncNormal = 0b000101111;
constexpr std::uint32_t kFrameSyncSelfTest = 0b011010000;

// location-protocol codes (bits 37-40, 1-based)
constexpr std::uint32_t kCodeMaritime = 0b0010;
constexpr std::uint32_t kCodeAviation = 0b0011;
constexpr std::uint32_t kCodePlb = 0b0110;

// coarse grid "position unknown" sentinels (out-of-range grid values)
constexpr std::uint32_t kLatSentinel = 0x1FF;
constexpr std::uint32_t kLonSentinel = 0x3FF;

std::uint32_t bch_remainder(const BitVec& data, std::uint32_t gen, int degree) {
    const std::uint32_t mask = (1u << degree) - 1u;
    const std::uint32_t top = 1u << (degree - 1);
    const std::uint32_t poly = gen & mask;
    std::uint32_t reg = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        bool fb = ((reg & top) != 0) ^ (data[i] != 0);
        reg = (reg << 1) & mask;
        if (fb) reg ^= poly;
    }
    return reg;
}

} // namespace

std::string to_string(BeaconProtocol p) {
    switch (p) {
    case BeaconProtocol::MaritimeMmsi: return "maritime_mmsi";
    case BeaconProtocol::AviationIcao24: return "aviation_icao24";
    case BeaconProtocol::SerialPlb: return "serial_plb";
    }
    return "?";
}

BitVec bch_encode(const BitVec& data, const BchSpec& spec) {
    if (data.size() != spec.data_bits)
        throw LengthError("bch_encode: expected " + std::to_string(spec.data_bits) +
                          " data bits, got " + std::to_string(data.size()));
    BitVec out;
    out.append_uint(bch_remainder(data, spec.generator, spec.degree), spec.degree);
    return out;
}

BitVec encode_beacon(const BeaconMessage& msg) {
    if (!msg.long_format)
        throw ValidationError("short-format (112-bit) encoding is not supported");
    if (msg.country_code > 1023) throw ValidationError("country code wider than 10 bits");

    std::uint32_t proto_code = 0;
    std::uint32_t identity = msg.identity;
    switch (msg.protocol) {
    case BeaconProtocol::MaritimeMmsi:
        proto_code = kCodeMaritime;
        if (identity > 999999)
            throw ValidationError("maritime identity must be the trailing six MMSI digits");
        identity <<= 4; // 20-bit digits field + 4-bit specific-beacon number (0)
        break;
    case BeaconProtocol::AviationIcao24:
        proto_code = kCodeAviation;
        if (identity > 0xFFFFFF) throw ValidationError("icao24 wider than 24 bits");
        break;
    case BeaconProtocol::SerialPlb:
        proto_code = kCodePlb;
        if (identity > 0xFFFFFF) throw ValidationError("serial number wider than 24 bits");
        break;
    }

    BitVec v;
    v.append_uint(0x7FFF, 15); // bit sync
    v.append_uint(msg.self_test ? kFrameSyncSelfTest : kFrameSyncNormal, 9);

    BitVec pdf1;
    pdf1.append_uint(1, 1); // long format
    pdf1.append_uint(0, 1); // location protocol
    pdf1.append_uint(msg.country_code, 10);
    pdf1.append_uint(proto_code, 4);
    pdf1.append_uint(identity, 24);
    if (msg.position) {
        double lat = msg.position->lat_deg, lon = msg.position->lon_deg;
        if (!(lat >= -90.0 && lat <= 90.0)) throw ValidationError("latitude outside [-90, 90]");
        if (!(lon >= -180.0 && lon <= 180.0)) throw ValidationError("longitude outside [-180, 180]");
        auto qlat = static_cast<std::uint32_t>(std::llround(std::abs(lat) * 4.0));
        auto qlon = static_cast<std::uint32_t>(std::llround(std::abs(lon) * 4.0));
        pdf1.append_uint(lat < 0 ? 1 : 0, 1);
        pdf1.append_uint(qlat, 9);
        pdf1.append_uint(lon < 0 ? 1 : 0, 1);
        pdf1.append_uint(qlon, 10);
    } else {
        pdf1.append_uint(1, 1);
        pdf1.append_uint(kLatSentinel, 9);
        pdf1.append_uint(1, 1);
        pdf1.append_uint(kLonSentinel, 10);
    }
    v.append(pdf1);
    v.append(bch_encode(pdf1, kBch1Spec));

    BitVec pdf2;
    pdf2.append_uint(msg.position ? 1 : 0, 1); // position source: internal
    pdf2.append_uint(1, 1);                    // 121.5 MHz homing
    pdf2.append_uint(0, 12);                   // delta-lat offset, zero
    pdf2.append_uint(0, 12);                   // delta-lon offset, zero
    v.append(pdf2);
    v.append(bch_encode(pdf2, kBch2Spec));
    return v;
}

DecodedBeacon decode_beacon(const BitVec& bits, bool lenient) {
    if (bits.size() != kLongMessageBits)
        throw LengthError("decode_beacon: input must be 144 bits");
    DecodedBeacon out;
    BeaconMessage& m = out.fields;

    bool sync_ok = bits.get_uint(0, 15) == 0x7FFF;
    auto fs = static_cast<std::uint32_t>(bits.get_uint(kFrameSyncOff, 9));
    if (fs == kFrameSyncNormal)
        m.self_test = false;
    else if (fs == kFrameSyncSelfTest)
        m.self_test = true;
    else
        sync_ok = false;
    if (!sync_ok) out.diag.flag(diag_flag::bad_frame_sync);

    m.long_format = bits.get_uint(kFormatOff, 1) != 0;
    if (!m.long_format) out.diag.flag(diag_flag::short_format);
    m.country_code = static_cast<std::uint16_t>(bits.get_uint(kCountryOff, 10));

    auto code = static_cast<std::uint32_t>(bits.get_uint(kProtoCodeOff, 4));
    auto ident = static_cast<std::uint32_t>(bits.get_uint(kIdentityOff, 24));
    if (code == kCodeMaritime) {
        m.protocol = BeaconProtocol::MaritimeMmsi;
        m.identity = ident >> 4;
    } else if (code == kCodeAviation) {
        m.protocol = BeaconProtocol::AviationIcao24;
        m.identity = ident;
    } else if (code == kCodePlb) {
        m.protocol = BeaconProtocol::SerialPlb;
        m.identity = ident;
    } else {
        out.diag.bad_field("protocol_code");
        m.identity = ident;
    }

    auto lat_sign = bits.get_uint(kCoarsePosOff, 1);
    auto qlat = static_cast<std::uint32_t>(bits.get_uint(kCoarsePosOff + 1, 9));
    auto lon_sign = bits.get_uint(kCoarsePosOff + 10, 1);
    auto qlon = static_cast<std::uint32_t>(bits.get_uint(kCoarsePosOff + 11, 10));
    if (qlat == kLatSentinel && qlon == kLonSentinel) {
        m.position.reset();
    } else if (qlat <= 360 && qlon <= 720) {
        BeaconPosition pos;
        pos.lat_deg = (lat_sign ? -1.0 : 1.0) * static_cast<double>(qlat) / 4.0;
        pos.lon_deg = (lon_sign ? -1.0 : 1.0) * static_cast<double>(qlon) / 4.0;
        m.position = pos;
    } else {
        out.diag.bad_field("position");
        m.position.reset();
    }

    BitVec pdf1 = bits.slice(kFormatOff, kPdf1Bits);
    if (bch_remainder(pdf1, kBch1Gen, kBch1Degree) !=
        static_cast<std::uint32_t>(bits.get_uint(kBch1Off, kBch1Degree)))
        out.diag.flag(diag_flag::bch1_failed);
    BitVec pdf2 = bits.slice(kPdf2Off, kPdf2Bits);
    if (bch_remainder(pdf2, kBch2Gen, kBch2Degree) !=
        static_cast<std::uint32_t>(bits.get_uint(kBch2Off, kBch2Degree)))
        out.diag.flag(diag_flag::bch2_failed);

    bool hard_fail = out.diag.has(diag_flag::bch1_failed) || out.diag.has(diag_flag::bch2_failed) ||
                     out.diag.has(diag_flag::bad_frame_sync) || out.diag.has(diag_flag::short_format);
    if (lenient || !hard_fail) out.message = m;
    return out;
}

std::string dump(const DecodedBeacon& d) {
    std::ostringstream os;
    const BeaconMessage& m = d.fields;
    os << "protocol:  " << to_string(m.protocol) << (m.self_test ? " (self-test)" : "") << "\n";
    os << "country:   " << m.country_code << "\n";
    os << "identity:  ";
    switch (m.protocol) {
    case BeaconProtocol::MaritimeMmsi: os << "MMSI trailing digits " << m.identity; break;
    case BeaconProtocol::AviationIcao24: {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%06X", m.identity);
        os << "ICAO24 " << buf;
        break;
    }
    case BeaconProtocol::SerialPlb: os << "serial " << m.identity; break;
    }
    os << "\n";
    if (m.position)
        os << "position:  " << m.position->lat_deg << " " << m.position->lon_deg << "\n";
    else
        os << "position:  (not encoded)\n";
    if (!d.diag.clean()) {
        os << "diagnosis:";
        for (const auto& f : d.diag.flags) os << " " << f;
        for (const auto& f : d.diag.field_out_of_range) os << " field:" << f;
        os << "\n";
    }
    return os.str();
}

void refresh_bch(BitVec& frame) {
    if (frame.size() != kLongMessageBits) throw LengthError("refresh_bch: frame must be 144 bits");
    frame.set_uint(kBch1Off, kBch1Degree,
                   bch_remainder(frame.slice(kFormatOff, kPdf1Bits), kBch1Gen, kBch1Degree));
    frame.set_uint(kBch2Off, kBch2Degree,
                   bch_remainder(frame.slice(kPdf2Off, kPdf2Bits), kBch2Gen, kBch2Degree));
}

std::vector<FieldSpec> field_map() {
    return {
        {"bit_sync", 0, 15},
        {"frame_sync", kFrameSyncOff, 9},
        {"format_flag", kFormatOff, 1},
        {"protocol_flag", kProtocolFlagOff, 1},
        {"country", kCountryOff, 10},
        {"protocol_code", kProtoCodeOff, 4},
        {"identity", kIdentityOff, 24},
        {"position", kCoarsePosOff, 21},
        {"bch1", kBch1Off, 21},
        {"pdf2", kPdf2Off, 26},
        {"bch2", kBch2Off, 12},
    };
}

} // namespace linklab::epirb
