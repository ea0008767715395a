#pragma once
// Small text I/O helpers shared by the file formats in this project.
// All floating point values are written with std::to_chars (shortest
// round-trip form) so that parse(emit(v)) == v bit for bit.

#include <string>
#include <string_view>
#include <vector>

namespace rccm {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Strict double parse; throws std::runtime_error on trailing garbage.
double parse_double(std::string_view s);
long parse_long(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
// Split on any run of whitespace, skipping empty fields.
std::vector<std::string> split_ws(std::string_view s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace rccm
