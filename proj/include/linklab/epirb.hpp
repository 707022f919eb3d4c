// SPDX-License-Identifier: MIT
//
// COSPAS-SARSAT 406 MHz beacon codec, long-format (144-bit) location
// protocols:
//
//   bits   1-15  bit sync (all 1s)
//   bits  16-24  frame sync: 000101111 normal, 011010000 self-test
//   bits  25-85  PDF-1: format flag, protocol flag, 10-bit country code,
//                4-bit protocol code, 24-bit identification, 21-bit coarse
//                position (1/4 degree grid)
//   bits  86-106 BCH-1, 21 check bits over PDF-1
//   bits 107-132 PDF-2: position source, homing flag, refined-position
//                offsets (defaults, zero delta)
//   bits 133-144 BCH-2, 12 check bits over PDF-2
//
// Both BCH generators are products of minimal polynomials (GF(2^7) for
// BCH-1, GF(2^6) for BCH-2); the test suite rebuilds them from the
// primitive polynomials and checks the pinned constants.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linklab/bitvec.hpp"
#include "linklab/diag.hpp"

namespace linklab::epirb {

/// x^21 + x^18 + x^17 + x^15 + x^14 + x^12 + x^11 + x^8 + x^7 + x^6 + x^5 + x + 1
inline constexpr std::uint32_t kBch1Gen = 0x26D9E3;
inline constexpr int kBch1Degree = 21;
/// x^12 + x^10 + x^8 + x^5 + x^4 + x^3 + 1
inline constexpr std::uint32_t kBch2Gen = 0x1539;
inline constexpr int kBch2Degree = 12;

inline constexpr std::size_t kPdf1Bits = 61;
inline constexpr std::size_t kPdf2Bits = 26;
inline constexpr std::size_t kLongMessageBits = 144;

enum class BeaconProtocol { MaritimeMmsi, AviationIcao24, SerialPlb };

std::string to_string(BeaconProtocol p);

struct BeaconPosition {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

struct BeaconMessage {
    bool self_test = false;
    bool long_format = true; // only long-format encoding is exposed
    BeaconProtocol protocol = BeaconProtocol::MaritimeMmsi;
    std::uint16_t country_code = 0; // 10-bit MID
    // MaritimeMmsi: trailing six digits of the MMSI (0-999999).
    // AviationIcao24: 24-bit aircraft address. SerialPlb: 24-bit serial.
    std::uint32_t identity = 0;
    std::optional<BeaconPosition> position;

    bool operator==(const BeaconMessage&) const = default;
};

struct BchSpec {
    std::uint32_t generator; // with the top bit
    int degree;
    std::size_t data_bits;   // expected dividend width
};

inline constexpr BchSpec kBch1Spec{kBch1Gen, kBch1Degree, kPdf1Bits};
inline constexpr BchSpec kBch2Spec{kBch2Gen, kBch2Degree, kPdf2Bits};

/// Systematic remainder of data * x^degree mod generator. Throws LengthError
/// when the data width does not match the spec.
BitVec bch_encode(const BitVec& data, const BchSpec& spec);

/// Throws ValidationError for identity/country overflow or unsupported
/// short format.
BitVec encode_beacon(const BeaconMessage& msg);

struct DecodedBeacon {
    std::optional<BeaconMessage> message; // nullopt in strict mode on failure
    BeaconMessage fields;                 // best-effort field slice
    Diagnosis diag;
};

/// Total over any 144-bit input. Strict requires both BCH fields and a
/// recognized frame sync; lenient returns fields plus the diagnosis.
DecodedBeacon decode_beacon(const BitVec& bits, bool lenient);

/// Human-readable plotter-style dump of a decode result.
std::string dump(const DecodedBeacon& d);

/// Recompute both BCH fields in place (used by the raw-override path).
void refresh_bch(BitVec& frame);

std::vector<FieldSpec> field_map();

} // namespace linklab::epirb
