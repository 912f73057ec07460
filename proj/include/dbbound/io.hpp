#pragma once

#include <map>
#include <string>
#include <string_view>

namespace dbbound {

// Writes to a temporary sibling and renames it over `path`.
void atomic_write(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);

// Flat "key = value" lines; '#' starts a comment. Duplicate keys are an
// InputError naming the key and line.
std::map<std::string, std::string> parse_key_values(std::string_view text, const std::string& origin);
std::map<std::string, std::string> read_key_value_file(const std::string& path);

// "%a" representation, exact for round trips.
std::string hex_float(double v);

}  // namespace dbbound
