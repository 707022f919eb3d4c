// SPDX-License-Identifier: MIT
//
// Protocol-tagged frames, timed schedules, and the shared replay text format:
//
//   # protocol=adsb            (comment/header lines start with '#')
//   @12500 8D4840D6202CC371C32CE0576098
//   @512500 8D4840D658C382D690C8AC2863A7
//
// One frame per line, uppercase hex, optional `@<microseconds>` prefix.
// Frames whose bit count is not a multiple of 4 carry a `/<nbits>` suffix.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "linklab/bitvec.hpp"

namespace linklab {

enum class Protocol { Adsb, Ais, AisAir, Epirb, Gdl90, Ccsds };

std::string to_string(Protocol p);
std::optional<Protocol> protocol_from_string(std::string_view s);

struct Frame {
    Protocol protocol = Protocol::Adsb;
    BitVec bits;
    std::uint64_t timestamp_us = 0;

    bool operator==(const Frame&) const = default;
};

struct ScheduleEntry {
    std::uint64_t t_us = 0;
    std::uint32_t transmitter = 0;
    Frame frame;

    bool operator==(const ScheduleEntry&) const = default;
};

/// Ordered (timestamp, transmitter, frame) triples. Generators keep
/// timestamps non-decreasing and transmitter ids < transmitters.
struct FrameSchedule {
    std::vector<ScheduleEntry> entries;
    std::uint32_t transmitters = 1;

    void add(std::uint64_t t_us, Frame f, std::uint32_t tx = 0) {
        f.timestamp_us = t_us;
        entries.push_back({t_us, tx, std::move(f)});
    }
    std::size_t size() const { return entries.size(); }
    std::uint64_t duration_us() const { return entries.empty() ? 0 : entries.back().t_us; }
    void sort_by_time();

    bool operator==(const FrameSchedule&) const = default;
};

namespace replay {

std::string to_line(const Frame& f);
/// Parses `[@us ]HEX[/nbits]`. Protocol comes from the caller.
Frame parse_line(std::string_view line, Protocol protocol);

/// Serialize to replay text (with a `# protocol=` header).
std::string to_text(const std::vector<Frame>& frames, Protocol protocol);
std::string to_text(const FrameSchedule& schedule, Protocol protocol);

/// Parse replay text; protocol from the header unless `forced` is given.
std::vector<Frame> parse_text(std::string_view text, std::optional<Protocol> forced = {});

void write_file(const std::filesystem::path& path, const std::vector<Frame>& frames,
                Protocol protocol);
void write_file(const std::filesystem::path& path, const FrameSchedule& schedule,
                Protocol protocol);
std::vector<Frame> read_file(const std::filesystem::path& path,
                             std::optional<Protocol> forced = {});

} // namespace replay

/// Write bytes to `path` atomically (temp file + rename).
void atomic_write(const std::filesystem::path& path, std::string_view content);

} // namespace linklab
