// SPDX-License-Identifier: MIT
#include "linklab/frame.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "linklab/errors.hpp"

namespace linklab {

std::string to_string(Protocol p) {
    switch (p) {
    case Protocol::Adsb: return "adsb";
    case Protocol::Ais: return "ais";
    case Protocol::AisAir: return "ais_air";
    case Protocol::Epirb: return "epirb";
    case Protocol::Gdl90: return "gdl90";
    case Protocol::Ccsds: return "ccsds";
    }
    return "?";
}

std::optional<Protocol> protocol_from_string(std::string_view s) {
    if (s == "adsb") return Protocol::Adsb;
    if (s == "ais") return Protocol::Ais;
    if (s == "ais_air") return Protocol::AisAir;
    if (s == "epirb") return Protocol::Epirb;
    if (s == "gdl90") return Protocol::Gdl90;
    if (s == "ccsds") return Protocol::Ccsds;
    return std::nullopt;
}

void FrameSchedule::sort_by_time() {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ScheduleEntry& a, const ScheduleEntry& b) { return a.t_us < b.t_us; });
}

namespace replay {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

} // namespace

std::string to_line(const Frame& f) {
    std::string out;
    out += "@" + std::to_string(f.timestamp_us) + " ";
    out += f.bits.to_hex();
    if (f.bits.size() % 4 != 0) out += "/" + std::to_string(f.bits.size());
    return out;
}

Frame parse_line(std::string_view line, Protocol protocol) {
    Frame f;
    f.protocol = protocol;
    std::string_view s = trim(line);
    if (!s.empty() && s.front() == '@') {
        s.remove_prefix(1);
        std::size_t sp = s.find_first_of(" \t");
        if (sp == std::string_view::npos) throw ParseError("replay line: timestamp without frame");
        std::uint64_t t = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + sp, t);
        if (ec != std::errc() || ptr != s.data() + sp) throw ParseError("replay line: bad timestamp");
        f.timestamp_us = t;
        s = trim(s.substr(sp + 1));
    }
    std::optional<std::size_t> nbits;
    std::size_t slash = s.find('/');
    if (slash != std::string_view::npos) {
        std::size_t n = 0;
        auto tail = s.substr(slash + 1);
        auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), n);
        if (ec != std::errc() || ptr != tail.data() + tail.size())
            throw ParseError("replay line: bad bit count");
        nbits = n;
        s = s.substr(0, slash);
    }
    if (s.empty()) throw ParseError("replay line: empty frame");
    f.bits = BitVec::from_hex(s, nbits);
    return f;
}

std::string to_text(const std::vector<Frame>& frames, Protocol protocol) {
    std::string out = "# protocol=" + to_string(protocol) + "\n";
    for (const auto& f : frames) out += to_line(f) + "\n";
    return out;
}

std::string to_text(const FrameSchedule& schedule, Protocol protocol) {
    std::string out = "# protocol=" + to_string(protocol) + "\n";
    for (const auto& e : schedule.entries) out += to_line(e.frame) + "\n";
    return out;
}

std::vector<Frame> parse_text(std::string_view text, std::optional<Protocol> forced) {
    std::vector<Frame> out;
    std::optional<Protocol> proto = forced;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                              : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '#') {
            auto eq = line.find("protocol=");
            if (!forced && eq != std::string_view::npos)
                proto = protocol_from_string(trim(line.substr(eq + 9)));
            continue;
        }
        if (!proto) throw ParseError("replay file: protocol not specified");
        out.push_back(parse_line(line, *proto));
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::vector<Frame>& frames,
                Protocol protocol) {
    atomic_write(path, to_text(frames, protocol));
}

void write_file(const std::filesystem::path& path, const FrameSchedule& schedule,
                Protocol protocol) {
    atomic_write(path, to_text(schedule, protocol));
}

std::vector<Frame> read_file(const std::filesystem::path& path, std::optional<Protocol> forced) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), forced);
}

} // namespace replay

void atomic_write(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace linklab
