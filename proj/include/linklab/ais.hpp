// SPDX-License-Identifier: MIT
//
// AIS (ITU-R M.1371) codec at two layers.
//
// Application layer: message types 1 (position report), 14 (safety-related
// broadcast), 18 (class B position), packed MSB-first and carried in
// 6-bit-armored !AIVDM sentences.
//
// Air interface: 0101... training, HDLC flags (0x7E), data bytes LSB-first,
// CRC-16 (X.25 FCS: poly 0x1021 reflected, init 0xFFFF, complemented),
// bit stuffing (a 0 after five 1s), then NRZI (transition on 0) feeding the
// GMSK modulator. The training pattern, CRC inversion, and stuffing are all
// parameterized so receiver behavior against malformed frames is testable.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linklab/bitvec.hpp"
#include "linklab/diag.hpp"

namespace linklab::ais {

inline constexpr std::int32_t kLonUnavailableRaw = 181 * 600000;  // 0x6791AC0
inline constexpr std::int32_t kLatUnavailableRaw = 91 * 600000;

struct AisMessage {
    int msg_type = 1;
    std::uint32_t repeat = 0;
    std::uint32_t mmsi = 0;

    // types 1 / 18 (defaults are the "unavailable" sentinels)
    std::uint32_t nav_status = 15;
    std::int32_t rot_raw = -128;
    std::uint32_t sog_tenths = 1023;
    bool position_accuracy = false;
    std::int32_t lon_raw = kLonUnavailableRaw; // 1/10000 arc-minute
    std::int32_t lat_raw = kLatUnavailableRaw;
    std::uint32_t cog_tenths = 3600;
    std::uint32_t heading_deg = 511;
    std::uint32_t second = 60;
    std::uint32_t maneuver = 0;
    bool raim = false;
    std::uint32_t radio_status = 0;

    // type 14
    std::string text;

    double lat_deg() const { return lat_raw / 600000.0; }
    double lon_deg() const { return lon_raw / 600000.0; }
    bool lat_available() const { return lat_raw != kLatUnavailableRaw; }
    bool lon_available() const { return lon_raw != kLonUnavailableRaw; }

    bool operator==(const AisMessage&) const = default;
};

/// Type 1. Pass nullopt for unavailable fields (encoded as sentinels).
/// Out-of-range non-sentinel values throw ValidationError.
AisMessage make_position_report(std::uint32_t mmsi, std::optional<double> lat_deg,
                                std::optional<double> lon_deg, std::optional<double> sog_kt,
                                std::optional<double> cog_deg, std::optional<int> heading_deg,
                                std::uint32_t nav_status);

/// Type 18 (class B).
AisMessage make_class_b_report(std::uint32_t mmsi, std::optional<double> lat_deg,
                               std::optional<double> lon_deg, std::optional<double> sog_kt,
                               std::optional<double> cog_deg, std::optional<int> heading_deg);

/// Type 14; text up to 161 chars of the 6-bit alphabet.
AisMessage make_safety_broadcast(std::uint32_t mmsi, std::string_view text);

/// Application-layer bits (168 for types 1/18, 40 + 6n for type 14).
BitVec encode_payload(const AisMessage& msg);
AisMessage decode_payload(const BitVec& payload, Diagnosis* diag = nullptr);

/// 6-bit text alphabet used by type 14 (and vessel names): value -> char.
char sixbit_to_char(unsigned v);
int char_to_sixbit(char c); // -1 for unrepresentable characters

// --- NMEA 0183 / AIVDM ---

/// Values 0-39 -> ASCII 48+v, 40-63 -> 56+v. Pads to a 6-bit boundary and
/// reports the pad width in fill_bits.
std::string armor_6bit(const BitVec& bits, int& fill_bits);
BitVec dearmor_6bit(std::string_view armored, int fill_bits);

/// XOR of all bytes between '!' and '*'.
std::uint8_t nmea_checksum(std::string_view body);

/// One or more `!AIVDM,...*hh` sentences (armored payload split at 62 chars).
std::vector<std::string> build_aivdm(const AisMessage& msg, char channel);
std::vector<std::string> build_aivdm_payload(const BitVec& payload, char channel);

struct AivdmPayload {
    BitVec payload;
    char channel = 'A';
};
/// Reassemble one message from its sentence group; validates checksums and
/// part counters. Throws ParseError on malformed input.
AivdmPayload parse_aivdm(const std::vector<std::string>& sentences);

// --- air interface ---

/// X.25 FCS over bytes (reflected 0x1021, init 0xFFFF, output complemented).
std::uint16_t crc16(std::span<const std::uint8_t> data);

/// Insert a 0 after five consecutive 1s.
BitVec stuff_bits(const BitVec& bits);
/// Inverse; six consecutive 1s set `*error`.
BitVec unstuff_bits(const BitVec& bits, bool* error = nullptr);

/// Transition encodes 0, initial line level 0.
BitVec nrzi_encode(const BitVec& bits);
BitVec nrzi_decode(const BitVec& bits);

BitVec default_training(); // 24 bits, 0101...01

struct AirFrameOptions {
    BitVec training;            // empty() => default 24-bit pattern unless zero_training
    bool zero_training = false; // explicit empty training field
    bool invert_crc = false;
    bool omit_stuffing = false;
};

struct AisAirFrame {
    BitVec training;
    BitVec payload_bits; // application payload (before byte padding)
    std::uint16_t fcs = 0;
    BitVec frame_bits;   // training + flag + stuffed data + flag (pre-NRZI)
    BitVec nrzi_bits;    // what the modem transmits
};

/// Training length must be <= 64 bits.
AisAirFrame build_air_frame(const AisMessage& msg, const AirFrameOptions& opts = {});
AisAirFrame build_air_frame_payload(const BitVec& payload, const AirFrameOptions& opts = {});

struct AirDeframed {
    BitVec payload_bits;        // byte-aligned data bits (before CRC)
    std::size_t flag_pos = 0;   // bit index of the opening flag in the stream
    std::size_t training_seen = 0; // alternating bits immediately before the flag
    bool training_normal_phase = true; // last training bit was 1
    bool crc_ok = false;
    Diagnosis diag;
};

/// Scan an NRZI bit stream for flag-delimited frames. Total over arbitrary
/// input; CRC failures are reported, not dropped.
std::vector<AirDeframed> deframe_air(const BitVec& nrzi_stream);

std::vector<FieldSpec> field_map(int msg_type);

} // namespace linklab::ais
