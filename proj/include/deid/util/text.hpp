#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace deid::util {

/// ASCII lowercase copy.
std::string to_lower(std::string_view s);

/// ASCII case-insensitive equality.
bool iequals(std::string_view a, std::string_view b);

/// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

bool starts_with(std::string_view s, std::string_view prefix);

}  // namespace deid::util
