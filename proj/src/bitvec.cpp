// SPDX-License-Identifier: MIT
#include "linklab/bitvec.hpp"

#include <stdexcept>

#include "linklab/errors.hpp"

namespace linklab {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

} // namespace

BitVec BitVec::from_hex(std::string_view hex, std::optional<std::size_t> nbits) {
    BitVec out;
    for (char c : hex) {
        int v = hex_digit(c);
        if (v < 0) throw ParseError("invalid hex digit '" + std::string(1, c) + "'");
        out.append_uint(static_cast<std::uint64_t>(v), 4);
    }
    if (nbits) {
        if (*nbits > out.size() || out.size() - *nbits >= 4)
            throw ParseError("bit count does not match hex digit count");
        out.bits_.resize(*nbits);
    }
    return out;
}

BitVec BitVec::from_bytes(std::span<const std::uint8_t> bytes) {
    BitVec out;
    for (std::uint8_t b : bytes) out.append_uint(b, 8);
    return out;
}

BitVec BitVec::from_string(std::string_view s) {
    BitVec out;
    for (char c : s) {
        if (c != '0' && c != '1') throw ParseError("invalid bit character");
        out.push_back(c == '1');
    }
    return out;
}

void BitVec::append(const BitVec& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitVec::append_uint(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) bits_.push_back((value >> i) & 1u);
}

std::uint64_t BitVec::get_uint(std::size_t offset, int width) const {
    if (width < 0 || width > 64 || offset + static_cast<std::size_t>(width) > bits_.size())
        throw std::out_of_range("BitVec::get_uint out of range");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | bits_[offset + static_cast<std::size_t>(i)];
    return v;
}

std::int64_t BitVec::get_int(std::size_t offset, int width) const {
    std::uint64_t v = get_uint(offset, width);
    if (width < 64 && (v & (1ull << (width - 1))))
        return static_cast<std::int64_t>(v) - (1ll << width);
    return static_cast<std::int64_t>(v);
}

void BitVec::set_uint(std::size_t offset, int width, std::uint64_t value) {
    if (width < 0 || width > 64 || offset + static_cast<std::size_t>(width) > bits_.size())
        throw std::out_of_range("BitVec::set_uint out of range");
    for (int i = 0; i < width; ++i)
        bits_[offset + static_cast<std::size_t>(i)] = (value >> (width - 1 - i)) & 1u;
}

BitVec BitVec::slice(std::size_t offset, std::size_t len) const {
    if (offset + len > bits_.size()) throw std::out_of_range("BitVec::slice out of range");
    BitVec out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                     bits_.begin() + static_cast<std::ptrdiff_t>(offset + len));
    return out;
}

std::vector<std::uint8_t> BitVec::to_bytes() const {
    std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

std::string BitVec::to_hex() const {
    static const char* digits = "0123456789ABCDEF";
    std::string out;
    out.reserve((bits_.size() + 3) / 4);
    for (std::size_t i = 0; i < bits_.size(); i += 4) {
        unsigned v = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            v <<= 1;
            if (i + j < bits_.size()) v |= bits_[i + j];
        }
        out.push_back(digits[v]);
    }
    return out;
}

std::string BitVec::to_string01() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(b ? '1' : '0');
    return out;
}

BitVec BitVec::reversed_per_byte() const {
    if (bits_.size() % 8 != 0) throw LengthError("bit count not a multiple of 8");
    BitVec out(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); i += 8)
        for (std::size_t j = 0; j < 8; ++j) out.bits_[i + j] = bits_[i + 7 - j];
    return out;
}

} // namespace linklab
