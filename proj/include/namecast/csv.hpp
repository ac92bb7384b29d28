#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace namecast {

// Splits one CSV line on commas. No quoting: none of the file formats here
// carry embedded commas.
std::vector<std::string> split_csv_line(std::string_view line);

// Splits text into lines, accepting LF and CRLF. A trailing newline does not
// produce an empty final line.
std::vector<std::string> split_lines(std::string_view text);

std::string trim(std::string_view s);

// Shortest representation that round-trips the exact double value.
std::string format_double(double v);

double parse_double(std::string_view s, const std::string& what);
long long parse_int(std::string_view s, const std::string& what);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace namecast
