#include "namecast/srt.hpp"

#include <cctype>
#include <cstdio>

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"

namespace namecast {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// "HH:MM:SS,mmm" with exactly three millisecond digits.
bool parse_timestamp(std::string_view s, long long& out_ms) {
    if (s.size() != 12) return false;
    for (std::size_t i = 0; i < 12; ++i) {
        char c = s[i];
        if (i == 2 || i == 5) {
            if (c != ':') return false;
        } else if (i == 8) {
            if (c != ',') return false;
        } else if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    auto num = [&](std::size_t pos, std::size_t len) {
        long long v = 0;
        for (std::size_t i = 0; i < len; ++i) v = v * 10 + (s[pos + i] - '0');
        return v;
    };
    long long hh = num(0, 2), mm = num(3, 2), ss = num(6, 2), ms = num(9, 3);
    if (mm > 59 || ss > 59) return false;
    out_ms = ((hh * 60 + mm) * 60 + ss) * 1000 + ms;
    return true;
}

std::string format_timestamp(long long ms) {
    long long hh = ms / 3600000;
    long long mm = (ms / 60000) % 60;
    long long ss = (ms / 1000) % 60;
    long long mmm = ms % 1000;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld,%03lld", hh, mm, ss, mmm);
    return buf;
}

std::string block_err(int block, const std::string& msg) {
    return "SRT block " + std::to_string(block) + ": " + msg;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool in_space = true;  // trims leading whitespace too
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out += ' ';
            out += c;
            in_space = false;
        }
    }
    return out;
}

// Deletes "[ ... ]" spans; an unmatched "[" deletes to end of text.
std::string strip_brackets(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '[') {
            std::size_t close = s.find(']', i + 1);
            if (close == std::string_view::npos) break;
            i = close + 1;
        } else {
            out += s[i++];
        }
    }
    return out;
}

}  // namespace

std::vector<SubtitleSegment> parse_srt(std::string_view bytes) {
    if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xEF &&
        static_cast<unsigned char>(bytes[1]) == 0xBB &&
        static_cast<unsigned char>(bytes[2]) == 0xBF) {
        bytes.remove_prefix(3);
    }
    std::vector<std::string> lines = split_lines(bytes);

    std::vector<SubtitleSegment> segments;
    std::size_t pos = 0;
    int block = 0;
    while (pos < lines.size()) {
        if (trim(lines[pos]).empty()) {
            ++pos;
            continue;
        }
        ++block;
        SubtitleSegment seg;

        std::string index_line = trim(lines[pos]);
        if (!all_digits(index_line))
            throw ParseError(block_err(block, "expected numeric index line, got '" + index_line + "'"));
        seg.index = static_cast<int>(parse_int(index_line, "SRT index"));
        if (seg.index != block)
            throw ParseError(block_err(block, "index " + index_line + " does not match block count"));
        ++pos;

        if (pos >= lines.size()) throw ParseError(block_err(block, "missing timing line"));
        std::string timing = trim(lines[pos]);
        std::size_t arrow = timing.find(" --> ");
        long long start = 0, end = 0;
        if (arrow == std::string::npos || !parse_timestamp(timing.substr(0, arrow), start) ||
            !parse_timestamp(timing.substr(arrow + 5), end))
            throw ParseError(block_err(block, "malformed timing line '" + timing + "'"));
        if (start >= end)
            throw ParseError(block_err(block, "start time is not before end time"));
        seg.start_ms = start;
        seg.end_ms = end;
        ++pos;

        std::string text;
        while (pos < lines.size() && !trim(lines[pos]).empty()) {
            if (!text.empty()) text += ' ';
            text += lines[pos];
            ++pos;
        }
        seg.raw_text = text;

        if (!segments.empty() && seg.start_ms < segments.back().start_ms)
            throw ParseError(block_err(block, "segments out of order by start time"));
        segments.push_back(std::move(seg));
    }
    return segments;
}

std::vector<SubtitleSegment> clean_segments(const std::vector<SubtitleSegment>& segments) {
    std::vector<SubtitleSegment> out;
    for (const SubtitleSegment& seg : segments) {
        std::string text = collapse_whitespace(strip_brackets(seg.raw_text));

        // Dialogue-dash markers sat at line starts before lines were joined,
        // so they survive only at the front or right after a space.
        int dash_lines = text.rfind("- ", 0) == 0 ? 1 : 0;
        for (std::size_t at = text.find(" - "); at != std::string::npos;
             at = text.find(" - ", at + 1))
            ++dash_lines;
        if (dash_lines >= 2) continue;  // two simultaneous speakers

        if (text.rfind("- ", 0) == 0) text.erase(0, 2);
        for (std::size_t at = text.find(" - "); at != std::string::npos; at = text.find(" - "))
            text.erase(at, 2);

        text = collapse_whitespace(text);
        if (text.empty()) continue;

        SubtitleSegment cleaned = seg;
        cleaned.clean_text = std::move(text);
        out.push_back(std::move(cleaned));
    }
    return out;
}

std::string write_srt(const std::vector<SubtitleSegment>& segments) {
    std::string out;
    for (const SubtitleSegment& seg : segments) {
        out += std::to_string(seg.index);
        out += '\n';
        out += format_timestamp(seg.start_ms);
        out += " --> ";
        out += format_timestamp(seg.end_ms);
        out += '\n';
        out += seg.raw_text;
        out += "\n\n";
    }
    return out;
}

}  // namespace namecast
