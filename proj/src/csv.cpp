#include "vrprox/csv.hpp"

#include <stdexcept>

namespace vrprox {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_int(std::int64_t value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::invalid_argument("parse_double: bad number '" +
                                std::string(text) + "'");
  return value;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::invalid_argument("parse_int: bad integer '" +
                                std::string(text) + "'");
  return value;
}

}  // namespace vrprox
