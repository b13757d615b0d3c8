#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hopfgroup::detail {

std::string_view trim(std::string_view s);

/// Split on commas that are not nested inside (), [] or {}.
std::vector<std::string_view> split_top_level(std::string_view s, char sep = ',');

/// Integer, "a/b", or "a/p^k". Returns false on malformed input.
bool parse_rational(std::string_view s, mpq_class& out);

bool parse_int(std::string_view s, long long& out);

}  // namespace hopfgroup::detail
