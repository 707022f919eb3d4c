// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace linklab {

/// Lenient decoders never throw on malformed input; they return the
/// best-effort decode plus one of these. Flag names are stable strings so
/// the harness can histogram them across protocols.
namespace diag_flag {
inline constexpr const char* crc_failed = "crc_failed";
inline constexpr const char* unknown_typecode = "unknown_typecode";
inline constexpr const char* bch1_failed = "bch1_failed";
inline constexpr const char* bch2_failed = "bch2_failed";
inline constexpr const char* bad_frame_sync = "bad_frame_sync";
inline constexpr const char* bad_version = "bad_version";
inline constexpr const char* length_mismatch = "length_mismatch";
inline constexpr const char* truncated = "truncated";
inline constexpr const char* bad_escape = "bad_escape";
inline constexpr const char* unterminated = "unterminated";
inline constexpr const char* short_format = "short_format";
inline constexpr const char* preamble_not_detected = "preamble_not_detected";
} // namespace diag_flag

struct Diagnosis {
    std::vector<std::string> flags;
    std::vector<std::string> field_out_of_range;

    bool clean() const { return flags.empty() && field_out_of_range.empty(); }

    bool has(std::string_view f) const {
        return std::find(flags.begin(), flags.end(), f) != flags.end();
    }

    void flag(std::string_view f) {
        if (!has(f)) flags.emplace_back(f);
    }

    void bad_field(std::string_view name) {
        if (std::find(field_out_of_range.begin(), field_out_of_range.end(), name) ==
            field_out_of_range.end())
            field_out_of_range.emplace_back(name);
    }
};

/// Named bit range inside an encoded message. Codecs publish these so the
/// fuzzer and the raw-override path can mutate specific fields without
/// knowing the layout.
struct FieldSpec {
    std::string name;
    std::size_t offset; // bits
    std::size_t width;  // bits
};

} // namespace linklab
