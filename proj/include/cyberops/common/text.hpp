#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cyberops {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_on(std::string_view s, std::string_view sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool contains_ci(std::string_view haystack, std::string_view needle);

// Shortest decimal form that parses back to the same double. Used wherever
// exports must be byte-stable across runs.
std::string format_double(double v);

// Reads a whole file; throws IoError when the file cannot be opened.
std::string read_text_file(const std::string& path);

// Writes a whole file, creating parent directories; throws IoError on failure.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace cyberops
