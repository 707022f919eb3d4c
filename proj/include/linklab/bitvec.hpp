// SPDX-License-Identifier: MIT
//
// Bit-level message buffer used by every codec. One element per bit,
// MSB-first field packing, uppercase-hex rendering.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linklab {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits) : bits_(nbits, 0) {}

    /// Parse uppercase/lowercase hex. When nbits is given the trailing pad
    /// bits of the last nibble are discarded; otherwise size = 4 * digits.
    static BitVec from_hex(std::string_view hex, std::optional<std::size_t> nbits = {});
    static BitVec from_bytes(std::span<const std::uint8_t> bytes);
    /// Parse a string of '0'/'1' characters.
    static BitVec from_string(std::string_view s);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, int v) { bits_.at(i) = v ? 1 : 0; }
    void flip(std::size_t i) { bits_.at(i) ^= 1; }

    void push_back(int v) { bits_.push_back(v ? 1 : 0); }
    void append(const BitVec& other);
    /// Append `width` bits of `value`, most significant first.
    void append_uint(std::uint64_t value, int width);

    /// Read `width` bits starting at `offset`, MSB first. Bounds-checked.
    std::uint64_t get_uint(std::size_t offset, int width) const;
    /// Two's-complement read.
    std::int64_t get_int(std::size_t offset, int width) const;
    void set_uint(std::size_t offset, int width, std::uint64_t value);

    BitVec slice(std::size_t offset, std::size_t len) const;

    /// Pack into bytes, MSB of byte 0 = bit 0. Last byte zero-padded.
    std::vector<std::uint8_t> to_bytes() const;
    /// Uppercase hex, zero-padded to a nibble boundary.
    std::string to_hex() const;
    std::string to_string01() const;

    /// Reverse bit order within each 8-bit group (LSB-first line coding).
    /// Requires size % 8 == 0.
    BitVec reversed_per_byte() const;

    auto begin() const { return bits_.begin(); }
    auto end() const { return bits_.end(); }

    bool operator==(const BitVec&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

} // namespace linklab
