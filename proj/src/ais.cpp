// SPDX-License-Identifier: MIT
#include "linklab/ais.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "linklab/errors.hpp"

namespace linklab::ais {

namespace {

constexpr std::size_t kMaxArmoredPerSentence = 62;
constexpr int kMaxSafetyTextChars = 161; // 40 + 6*161 = 1006 <= 1008 bit cap

std::int32_t quantize_coord(double deg) { return static_cast<std::int32_t>(std::llround(deg * 600000.0)); }

void append_flag(BitVec& v) { v.append_uint(0x7E, 8); }

} // namespace

char sixbit_to_char(unsigned v) {
    v &= 0x3F;
    return v < 32 ? static_cast<char>(v + 64) : static_cast<char>(v);
}

int char_to_sixbit(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u >= 64 && u < 96) return static_cast<int>(u - 64); // '@'..'_'
    if (u >= 32 && u < 64) return static_cast<int>(u);      // ' '..'?'
    return -1;
}

AisMessage make_position_report(std::uint32_t mmsi, std::optional<double> lat_deg,
                                std::optional<double> lon_deg, std::optional<double> sog_kt,
                                std::optional<double> cog_deg, std::optional<int> heading_deg,
                                std::uint32_t nav_status) {
    if (mmsi > 0x3FFFFFFF) throw ValidationError("mmsi wider than 30 bits");
    if (nav_status > 15) throw ValidationError("nav_status outside 0-15");
    AisMessage m;
    m.msg_type = 1;
    m.mmsi = mmsi;
    m.nav_status = nav_status;
    if (lat_deg) {
        if (!(*lat_deg >= -90.0 && *lat_deg <= 90.0))
            throw ValidationError("latitude outside [-90, 90] (use nullopt for unavailable)");
        m.lat_raw = quantize_coord(*lat_deg);
    }
    if (lon_deg) {
        if (!(*lon_deg >= -180.0 && *lon_deg <= 180.0))
            throw ValidationError("longitude outside [-180, 180]");
        m.lon_raw = quantize_coord(*lon_deg);
    }
    if (sog_kt) {
        if (!(*sog_kt >= 0.0 && *sog_kt <= 102.2))
            throw ValidationError("SOG outside [0, 102.2] kt");
        m.sog_tenths = static_cast<std::uint32_t>(std::llround(*sog_kt * 10.0));
    }
    if (cog_deg) {
        if (!(*cog_deg >= 0.0 && *cog_deg < 360.0)) throw ValidationError("COG outside [0, 360)");
        m.cog_tenths = static_cast<std::uint32_t>(std::llround(*cog_deg * 10.0)) % 3600;
    }
    if (heading_deg) {
        if (*heading_deg < 0 || *heading_deg > 359) throw ValidationError("heading outside 0-359");
        m.heading_deg = static_cast<std::uint32_t>(*heading_deg);
    }
    m.second = 0;
    return m;
}

AisMessage make_class_b_report(std::uint32_t mmsi, std::optional<double> lat_deg,
                               std::optional<double> lon_deg, std::optional<double> sog_kt,
                               std::optional<double> cog_deg, std::optional<int> heading_deg) {
    AisMessage m = make_position_report(mmsi, lat_deg, lon_deg, sog_kt, cog_deg, heading_deg, 15);
    m.msg_type = 18;
    m.nav_status = 0;
    return m;
}

AisMessage make_safety_broadcast(std::uint32_t mmsi, std::string_view text) {
    if (mmsi > 0x3FFFFFFF) throw ValidationError("mmsi wider than 30 bits");
    if (text.size() > kMaxSafetyTextChars)
        throw ValidationError("safety text longer than 161 characters");
    for (char c : text)
        if (char_to_sixbit(c) < 0)
            throw ValidationError("character not in the 6-bit alphabet: '" + std::string(1, c) + "'");
    AisMessage m;
    m.msg_type = 14;
    m.mmsi = mmsi;
    m.text = text;
    return m;
}

BitVec encode_payload(const AisMessage& msg) {
    BitVec v;
    v.append_uint(static_cast<std::uint64_t>(msg.msg_type), 6);
    v.append_uint(msg.repeat, 2);
    v.append_uint(msg.mmsi, 30);
    if (msg.msg_type == 1) {
        v.append_uint(msg.nav_status, 4);
        v.append_uint(static_cast<std::uint64_t>(static_cast<std::uint8_t>(msg.rot_raw)), 8);
        v.append_uint(msg.sog_tenths, 10);
        v.append_uint(msg.position_accuracy ? 1 : 0, 1);
        v.append_uint(static_cast<std::uint64_t>(static_cast<std::uint32_t>(msg.lon_raw)) & 0xFFFFFFF, 28);
        v.append_uint(static_cast<std::uint64_t>(static_cast<std::uint32_t>(msg.lat_raw)) & 0x7FFFFFF, 27);
        v.append_uint(msg.cog_tenths, 12);
        v.append_uint(msg.heading_deg, 9);
        v.append_uint(msg.second, 6);
        v.append_uint(msg.maneuver, 2);
        v.append_uint(0, 3);
        v.append_uint(msg.raim ? 1 : 0, 1);
        v.append_uint(msg.radio_status, 19);
    } else if (msg.msg_type == 18) {
        v.append_uint(0, 8);
        v.append_uint(msg.sog_tenths, 10);
        v.append_uint(msg.position_accuracy ? 1 : 0, 1);
        v.append_uint(static_cast<std::uint64_t>(static_cast<std::uint32_t>(msg.lon_raw)) & 0xFFFFFFF, 28);
        v.append_uint(static_cast<std::uint64_t>(static_cast<std::uint32_t>(msg.lat_raw)) & 0x7FFFFFF, 27);
        v.append_uint(msg.cog_tenths, 12);
        v.append_uint(msg.heading_deg, 9);
        v.append_uint(msg.second, 6);
        v.append_uint(0, 2);
        v.append_uint(1, 1); // CS unit
        v.append_uint(0, 5); // display, DSC, band, msg22, assigned
        v.append_uint(msg.raim ? 1 : 0, 1);
        v.append_uint(msg.radio_status, 20);
    } else if (msg.msg_type == 14) {
        v.append_uint(0, 2); // spare
        for (char c : msg.text) {
            int code = char_to_sixbit(c);
            if (code < 0) throw ValidationError("character not in the 6-bit alphabet");
            v.append_uint(static_cast<std::uint64_t>(code), 6);
        }
    } else {
        throw ValidationError("unsupported AIS message type " + std::to_string(msg.msg_type));
    }
    return v;
}

AisMessage decode_payload(const BitVec& p, Diagnosis* diag) {
    Diagnosis local;
    Diagnosis& d = diag ? *diag : local;
    AisMessage m;
    if (p.size() < 40) {
        d.flag(diag_flag::truncated);
        return m;
    }
    m.msg_type = static_cast<int>(p.get_uint(0, 6));
    m.repeat = static_cast<std::uint32_t>(p.get_uint(6, 2));
    m.mmsi = static_cast<std::uint32_t>(p.get_uint(8, 30));
    if (m.msg_type == 1 || m.msg_type == 18) {
        if (p.size() < 168) {
            d.flag(diag_flag::truncated);
            return m;
        }
        std::size_t o = m.msg_type == 1 ? 0 : 8; // type 18 has an 8-bit reserved block
        if (m.msg_type == 1) {
            m.nav_status = static_cast<std::uint32_t>(p.get_uint(38, 4));
            m.rot_raw = static_cast<std::int32_t>(p.get_int(42, 8));
            o = 12; // nav_status + rot
        }
        m.sog_tenths = static_cast<std::uint32_t>(p.get_uint(38 + o, 10));
        m.position_accuracy = p.get_uint(48 + o, 1) != 0;
        m.lon_raw = static_cast<std::int32_t>(p.get_int(49 + o, 28));
        m.lat_raw = static_cast<std::int32_t>(p.get_int(77 + o, 27));
        m.cog_tenths = static_cast<std::uint32_t>(p.get_uint(104 + o, 12));
        m.heading_deg = static_cast<std::uint32_t>(p.get_uint(116 + o, 9));
        m.second = static_cast<std::uint32_t>(p.get_uint(125 + o, 6));
        if (m.msg_type == 1) {
            m.maneuver = static_cast<std::uint32_t>(p.get_uint(143, 2));
            m.raim = p.get_uint(148, 1) != 0;
            m.radio_status = static_cast<std::uint32_t>(p.get_uint(149, 19));
        } else {
            m.raim = p.get_uint(147, 1) != 0;
            m.radio_status = static_cast<std::uint32_t>(p.get_uint(148, 20));
        }
        if (m.lat_raw != kLatUnavailableRaw && std::abs(m.lat_raw) > 90 * 600000)
            d.bad_field("lat");
        if (m.lon_raw != kLonUnavailableRaw && std::abs(m.lon_raw) > 180 * 600000)
            d.bad_field("lon");
        if (m.cog_tenths > 3600) d.bad_field("cog");
        if (m.heading_deg > 359 && m.heading_deg != 511) d.bad_field("heading");
        if (m.second > 63) d.bad_field("second");
    } else if (m.msg_type == 14) {
        std::size_t nchars = (p.size() - 40) / 6;
        for (std::size_t i = 0; i < nchars; ++i)
            m.text.push_back(sixbit_to_char(
                static_cast<unsigned>(p.get_uint(40 + i * 6, 6))));
        // byte-alignment padding decodes as trailing '@'s; strip them
        while (!m.text.empty() && m.text.back() == '@') m.text.pop_back();
    } else {
        d.flag(diag_flag::unknown_typecode);
    }
    return m;
}

std::string armor_6bit(const BitVec& bits, int& fill_bits) {
    BitVec padded = bits;
    fill_bits = static_cast<int>((6 - padded.size() % 6) % 6);
    for (int i = 0; i < fill_bits; ++i) padded.push_back(0);
    std::string out;
    out.reserve(padded.size() / 6);
    for (std::size_t i = 0; i < padded.size(); i += 6) {
        auto v = padded.get_uint(i, 6);
        out.push_back(static_cast<char>(v < 40 ? 48 + v : 56 + v));
    }
    return out;
}

BitVec dearmor_6bit(std::string_view armored, int fill_bits) {
    BitVec out;
    for (char c : armored) {
        int v = c - 48;
        if (v > 40) v -= 8;
        if (v < 0 || v > 63 || (c >= 88 && c <= 95))
            throw ParseError("character outside the armor alphabet: '" + std::string(1, c) + "'");
        out.append_uint(static_cast<std::uint64_t>(v), 6);
    }
    if (fill_bits < 0 || fill_bits > 5 || static_cast<std::size_t>(fill_bits) > out.size())
        throw ParseError("invalid fill bit count");
    return out.slice(0, out.size() - static_cast<std::size_t>(fill_bits));
}

std::uint8_t nmea_checksum(std::string_view body) {
    std::uint8_t x = 0;
    for (char c : body) x ^= static_cast<std::uint8_t>(c);
    return x;
}

namespace {

std::string finish_sentence(std::string body) {
    char buf[4];
    std::snprintf(buf, sizeof buf, "%02X", nmea_checksum(body));
    return "!" + body + "*" + buf;
}

} // namespace

std::vector<std::string> build_aivdm_payload(const BitVec& payload, char channel) {
    int fill = 0;
    std::string armored = armor_6bit(payload, fill);
    std::vector<std::string> out;
    std::size_t total = std::max<std::size_t>(1, (armored.size() + kMaxArmoredPerSentence - 1) /
                                                     kMaxArmoredPerSentence);
    for (std::size_t part = 0; part < total; ++part) {
        std::string chunk = armored.substr(part * kMaxArmoredPerSentence, kMaxArmoredPerSentence);
        bool last = part + 1 == total;
        std::string body = "AIVDM," + std::to_string(total) + "," + std::to_string(part + 1) + ",";
        if (total > 1) body += "0"; // sequential message id, fixed for determinism
        body += ",";
        body += channel;
        body += "," + chunk + "," + std::to_string(last ? fill : 0);
        out.push_back(finish_sentence(std::move(body)));
    }
    return out;
}

std::vector<std::string> build_aivdm(const AisMessage& msg, char channel) {
    return build_aivdm_payload(encode_payload(msg), channel);
}

namespace {

std::vector<std::string> split_fields(std::string_view body) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t c = body.find(',', pos);
        if (c == std::string_view::npos) {
            out.emplace_back(body.substr(pos));
            break;
        }
        out.emplace_back(body.substr(pos, c - pos));
        pos = c + 1;
    }
    return out;
}

} // namespace

AivdmPayload parse_aivdm(const std::vector<std::string>& sentences) {
    if (sentences.empty()) throw ParseError("no sentences");
    std::string armored;
    int fill = 0;
    char channel = 'A';
    std::size_t expect_total = 0;
    for (std::size_t idx = 0; idx < sentences.size(); ++idx) {
        std::string_view s = sentences[idx];
        while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
        if (s.size() < 10 || s.front() != '!') throw ParseError("not an NMEA sentence");
        std::size_t star = s.rfind('*');
        if (star == std::string_view::npos || star + 3 != s.size())
            throw ParseError("missing or malformed checksum");
        std::string_view body = s.substr(1, star - 1);
        unsigned stated = 0;
        if (std::sscanf(std::string(s.substr(star + 1, 2)).c_str(), "%x", &stated) != 1)
            throw ParseError("bad checksum digits");
        if (nmea_checksum(body) != stated) throw ParseError("NMEA checksum mismatch");
        auto f = split_fields(body);
        if (f.size() != 7 || (f[0] != "AIVDM" && f[0] != "AIVDO"))
            throw ParseError("not an AIVDM sentence");
        std::size_t total = std::stoul(f[1]);
        std::size_t num = std::stoul(f[2]);
        if (idx == 0) expect_total = total;
        if (total != expect_total || num != idx + 1)
            throw ParseError("sentence part counters out of order");
        if (!f[4].empty()) channel = f[4][0];
        armored += f[5];
        if (num == total) fill = std::stoi(f[6]);
    }
    if (sentences.size() != expect_total) throw ParseError("incomplete sentence group");
    return {dearmor_6bit(armored, fill), channel};
}

std::uint16_t crc16(std::span<const std::uint8_t> data) {
    std::uint16_t crc = 0xFFFF;
    for (std::uint8_t b : data) {
        crc ^= b;
        for (int i = 0; i < 8; ++i)
            crc = (crc & 1u) ? static_cast<std::uint16_t>((crc >> 1) ^ 0x8408) :
                               static_cast<std::uint16_t>(crc >> 1);
    }
    return static_cast<std::uint16_t>(~crc);
}

BitVec stuff_bits(const BitVec& bits) {
    BitVec out;
    int ones = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        out.push_back(bits[i]);
        if (bits[i]) {
            if (++ones == 5) {
                out.push_back(0);
                ones = 0;
            }
        } else {
            ones = 0;
        }
    }
    return out;
}

BitVec unstuff_bits(const BitVec& bits, bool* error) {
    BitVec out;
    if (error) *error = false;
    int ones = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (ones == 5) {
            ones = 0;
            if (bits[i]) {
                if (error) *error = true; // six 1s: flag or abort leaked in
                out.push_back(1);
            }
            continue; // stuffed zero dropped
        }
        out.push_back(bits[i]);
        ones = bits[i] ? ones + 1 : 0;
    }
    return out;
}

BitVec nrzi_encode(const BitVec& bits) {
    BitVec out;
    int level = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (!bits[i]) level ^= 1;
        out.push_back(level);
    }
    return out;
}

BitVec nrzi_decode(const BitVec& bits) {
    BitVec out;
    int prev = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        out.push_back(bits[i] == prev ? 1 : 0);
        prev = bits[i];
    }
    return out;
}

BitVec default_training() {
    BitVec t;
    for (int i = 0; i < 24; ++i) t.push_back(i % 2);
    return t;
}

AisAirFrame build_air_frame_payload(const BitVec& payload, const AirFrameOptions& opts) {
    AisAirFrame f;
    f.payload_bits = payload;
    f.training = (opts.training.empty() && !opts.zero_training) ? default_training() : opts.training;
    if (f.training.size() > 64) throw ValidationError("training longer than 64 bits");

    BitVec data = payload;
    while (data.size() % 8 != 0) data.push_back(0);
    auto bytes = data.to_bytes();
    f.fcs = crc16(bytes);
    if (opts.invert_crc) f.fcs = static_cast<std::uint16_t>(~f.fcs);

    BitVec tx = data.reversed_per_byte(); // LSB-first line order
    for (int i = 0; i < 16; ++i) tx.push_back((f.fcs >> i) & 1u);

    BitVec stuffed = opts.omit_stuffing ? tx : stuff_bits(tx);
    f.frame_bits = f.training;
    append_flag(f.frame_bits);
    f.frame_bits.append(stuffed);
    append_flag(f.frame_bits);
    f.nrzi_bits = nrzi_encode(f.frame_bits);
    return f;
}

AisAirFrame build_air_frame(const AisMessage& msg, const AirFrameOptions& opts) {
    return build_air_frame_payload(encode_payload(msg), opts);
}

namespace {

bool is_flag_at(const BitVec& b, std::size_t i) {
    if (i + 8 > b.size()) return false;
    return b.get_uint(i, 8) == 0x7E;
}

} // namespace

std::vector<AirDeframed> deframe_air(const BitVec& nrzi_stream) {
    std::vector<AirDeframed> out;
    BitVec bits = nrzi_decode(nrzi_stream);
    std::size_t i = 0;
    while (i + 8 <= bits.size()) {
        if (!is_flag_at(bits, i)) {
            ++i;
            continue;
        }
        // measure the alternating run directly before the opening flag
        std::size_t run = 0;
        while (run < i) {
            std::size_t k = i - 1 - run;
            if (run == 0 || bits[k] != bits[k + 1])
                ++run;
            else
                break;
        }
        AirDeframed d;
        d.flag_pos = i;
        d.training_seen = run;
        d.training_normal_phase = run == 0 || bits[i - 1] == 1;

        // collect until the closing flag, unstuffing on the fly
        BitVec data;
        std::size_t j = i + 8;
        int ones = 0;
        bool closed = false, aborted = false;
        while (j < bits.size()) {
            if (ones == 5) {
                if (!bits[j]) {
                    ones = 0;
                    ++j;
                    continue; // stuffed zero
                }
                // six 1s: closing flag if followed by 0
                if (j + 1 < bits.size() && !bits[j + 1]) {
                    closed = true;
                    j += 2;
                } else {
                    aborted = true;
                }
                // the flag's leading 0 and five 1s are the last 6 collected bits
                break;
            }
            data.push_back(bits[j]);
            ones = bits[j] ? ones + 1 : 0;
            ++j;
        }
        if (!closed) {
            if (aborted) {
                // treat as noise, resume scanning after this flag
                i = j + 1;
                continue;
            }
            d.diag.flag(diag_flag::unterminated);
            out.push_back(std::move(d));
            break;
        }
        // drop the partial flag bits (0 + five 1s) that were collected
        if (data.size() < 6 + 16) {
            d.diag.flag(diag_flag::truncated);
            out.push_back(std::move(d));
            i = j;
            continue;
        }
        data = data.slice(0, data.size() - 6);
        if (data.size() < 16 || (data.size() - 16) % 8 != 0) {
            d.diag.flag(diag_flag::length_mismatch);
            out.push_back(std::move(d));
            i = j;
            continue;
        }
        std::uint16_t fcs = 0;
        for (int k = 0; k < 16; ++k)
            fcs |= static_cast<std::uint16_t>(data[data.size() - 16 + static_cast<std::size_t>(k)])
                   << k;
        BitVec tx = data.slice(0, data.size() - 16);
        BitVec payload = tx.reversed_per_byte();
        d.crc_ok = crc16(payload.to_bytes()) == fcs;
        if (!d.crc_ok) d.diag.flag(diag_flag::crc_failed);
        d.payload_bits = std::move(payload);
        out.push_back(std::move(d));
        i = j;
    }
    return out;
}

std::vector<FieldSpec> field_map(int msg_type) {
    std::vector<FieldSpec> out = {{"msg_type", 0, 6}, {"repeat", 6, 2}, {"mmsi", 8, 30}};
    if (msg_type == 1) {
        out.push_back({"nav_status", 38, 4});
        out.push_back({"rot", 42, 8});
        out.push_back({"sog", 50, 10});
        out.push_back({"lon_raw", 61, 28});
        out.push_back({"lat_raw", 89, 27});
        out.push_back({"cog", 116, 12});
        out.push_back({"heading", 128, 9});
        out.push_back({"second", 137, 6});
    } else if (msg_type == 18) {
        out.push_back({"sog", 46, 10});
        out.push_back({"lon_raw", 57, 28});
        out.push_back({"lat_raw", 85, 27});
        out.push_back({"cog", 112, 12});
        out.push_back({"heading", 124, 9});
        out.push_back({"second", 133, 6});
    } else if (msg_type == 14) {
        out.push_back({"text", 40, 0}); // width depends on the message
    }
    return out;
}

} // namespace linklab::ais
