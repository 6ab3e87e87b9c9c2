#include "natanzon/halfint.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw DomainError("not an integer or half-integer: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const int num = parse_int(text.substr(0, slash), whole);
    const int den = parse_int(text.substr(slash + 1), whole);
    if (den == 1) return HalfInt(num);
    if (den == 2) return from_doubled(num);
    throw DomainError("denominator must be 1 or 2: '" + std::string(whole) + "'");
  }
  if (text.find('.') != std::string_view::npos || text.find('e') != std::string_view::npos) {
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(std::string(text), &used);
      if (used != text.size()) throw DomainError("");
    } catch (const std::exception&) {
      throw DomainError("not an integer or half-integer: '" + std::string(whole) + "'");
    }
    const double twice = 2.0 * v;
    if (std::abs(twice - std::round(twice)) > 1e-12) {
      throw DomainError("not an integer or half-integer: '" + std::string(whole) + "'");
    }
    return from_doubled(static_cast<int>(std::lround(twice)));
  }
  return HalfInt(parse_int(text, whole));
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(doubled_ / 2);
  return std::to_string(doubled_) + "/2";
}

}  // namespace natanzon
