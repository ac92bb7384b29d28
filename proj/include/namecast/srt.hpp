#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace namecast {

// One timed dialogue turn. After clean_segments, the position in the list
// (not `index`) is the instance number used everywhere downstream.
struct SubtitleSegment {
    int index = 0;           // 1-based ordinal as written in the file
    long long start_ms = 0;
    long long end_ms = 0;
    std::string raw_text;    // text lines joined by a single space
    std::string clean_text;  // empty until clean_segments has run
};

// Parses UTF-8 SRT (optional BOM, CRLF tolerated). Throws ParseError naming
// the 1-based block number on malformed input. Empty input yields an empty
// list.
std::vector<SubtitleSegment> parse_srt(std::string_view bytes);

// Removes bracketed descriptions and dialogue-dash markers, collapses
// whitespace, drops segments that end up empty and segments carrying two
// dashed speaker lines. Original `index` values are kept.
std::vector<SubtitleSegment> clean_segments(const std::vector<SubtitleSegment>& segments);

// Canonical SRT emission (CRLF-free, "HH:MM:SS,mmm --> HH:MM:SS,mmm").
std::string write_srt(const std::vector<SubtitleSegment>& segments);

}  // namespace namecast
