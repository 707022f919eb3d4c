// SPDX-License-Identifier: MIT
//
// Mode S Extended Squitter (1090ES) DF17 codec.
//
// Frame layout (112 bits, 1-based as in the transponder docs):
//   DF 1-5 | CA 6-8 | ICAO24 9-32 | ME 33-88 | PI 89-112
//
// ME layouts handled here:
//   TC 1-4   identification: TC 1-5 | CAT 6-8 | 8 x 6-bit chars 9-56
//   TC 9-18  airborne position: TC | SS 6-7 | SAF 8 | ALT 9-20 | T 21 |
//            F 22 | CPR-LAT 23-39 | CPR-LON 40-56
//   TC 19/1  velocity: TC | ST 6-8 | IC | IFR | NACv 11-13 | Sew 14 |
//            Vew 15-24 | Sns 25 | Vns 26-35 | rest zeroed
//   TC 28/1  aircraft status: TC | ST 6-8 | emergency 9-11 | squawk 12-24
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linklab/bitvec.hpp"
#include "linklab/diag.hpp"

namespace linklab::adsb {

/// Mode S CRC generator, x^24 + ... + 1.
inline constexpr std::uint32_t kCrcPoly = 0x1FFF409;

/// Parity over an 88-bit data prefix (remainder of data * x^24). Throws
/// LengthError unless the input is exactly 88 bits.
std::uint32_t crc24(const BitVec& data);

/// Remainder over a whole 112-bit frame; zero for a valid frame.
std::uint32_t crc24_remainder(const BitVec& frame);

/// Recompute the PI field from bits 1-88 in place.
void refresh_crc(BitVec& frame);

// --- position (CPR, airborne, NZ = 15) ---

enum class CprFormat { Even, Odd };

struct CprPosition {
    std::uint32_t lat_cpr = 0; // 17 bits
    std::uint32_t lon_cpr = 0; // 17 bits
    CprFormat format = CprFormat::Even;
};

struct GeoPos {
    double lat = 0.0;
    double lon = 0.0;
};

/// Longitude-zone count for a latitude.
int nl_zones(double lat_deg);

/// Requires lat in [-90, 90]; lon is wrapped.
CprPosition cpr_encode(double lat_deg, double lon_deg, CprFormat format);

/// Global CPR decode from an even/odd pair. Throws CprAmbiguityError when
/// the pair straddles a latitude-zone boundary (NL mismatch) or the
/// intermediate latitude is unusable; never returns a wrong position.
GeoPos cpr_decode_global(const CprPosition& even, const CprPosition& odd, CprFormat most_recent);

// --- messages ---

struct KinematicState {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_ft = 0.0;
    double ground_speed_kt = 0.0;
    double track_deg = 0.0; // clockwise from true north
    std::string callsign;   // 1-8 chars, A-Z 0-9 space
    bool squawk_emergency = false;
};

/// Throws ValidationError on out-of-range fields or illegal callsign chars.
void validate(const KinematicState& state);

struct ModeSFrame {
    std::uint8_t df = 17;
    std::uint8_t ca = 5;
    std::uint32_t icao24 = 0;
    BitVec me;            // 56 bits
    std::uint32_t parity = 0;
    BitVec raw;           // 112 bits, CRC remainder zero for encoder output
};

ModeSFrame encode_identification(std::uint32_t icao24, std::string_view callsign);
ModeSFrame encode_airborne_position(std::uint32_t icao24, const KinematicState& state,
                                    CprFormat format);
ModeSFrame encode_velocity(std::uint32_t icao24, const KinematicState& state);
/// TC 28 subtype 1; emergency_code 0-7 (1 = general emergency).
ModeSFrame encode_emergency(std::uint32_t icao24, int emergency_code);

/// 12-bit altitude field, Q-bit set, 25 ft increments, -1000 ft offset.
/// Throws RangeError outside [-1000, 50175] ft.
std::uint16_t encode_altitude_field(double altitude_ft);
std::optional<double> decode_altitude_field(std::uint16_t field);

enum class MsgKind { Identification, AirbornePosition, Velocity, Status, Unknown };

struct Decoded {
    MsgKind kind = MsgKind::Unknown;
    std::uint8_t df = 0;
    std::uint8_t ca = 0;
    std::uint8_t typecode = 0;
    std::uint32_t icao24 = 0;
    std::string callsign;                    // identification
    std::optional<CprPosition> cpr;          // airborne position
    std::optional<double> altitude_ft;       // airborne position
    std::optional<double> ground_speed_kt;   // velocity
    std::optional<double> track_deg;         // velocity
    std::optional<int> emergency_state;      // status
    Diagnosis diagnosis;
};

/// Total over any 112-bit input. Strict mode stops at CRC failure; lenient
/// mode decodes best-effort and reports everything in `diagnosis`.
/// Throws LengthError only when the input is not 112 bits.
Decoded decode_frame(const BitVec& raw, bool strict);

/// Named field ranges for a given typecode (raw overrides, fuzzing).
std::vector<FieldSpec> field_map(int typecode);

/// 6-bit identification charset; index 32 is space, '#' marks illegal codes.
std::string_view charset6();

} // namespace linklab::adsb
