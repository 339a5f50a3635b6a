#pragma once

#include <string>
#include <vector>

namespace moosize {

// Shortest decimal form that round-trips exactly; used for every number we
// serialise so reload-then-re-export is byte identical.
std::string format_double(double value);
double parse_double(const std::string& text);  // throws Error(Parse) on junk

std::vector<std::string> split(const std::string& line, char sep);
std::string trim(const std::string& s);

std::string read_file(const std::string& path);        // throws Error(Io)
void write_file(const std::string& path, const std::string& content);

}  // namespace moosize
