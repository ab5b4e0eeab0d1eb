#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace vrprox {

// Locale-independent number formatting for CSV artifacts: 17 significant
// digits, enough to round-trip any double exactly.
std::string format_double(double value);
std::string format_int(std::int64_t value);

// Locale-independent parsing counterparts.
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

}  // namespace vrprox
