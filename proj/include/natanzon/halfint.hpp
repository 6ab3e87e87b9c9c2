#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace natanzon {

/// Integer or half-integer stored as twice its value, so that m = doubled/2
/// is exact and comparisons never touch floating point.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int whole) : doubled_(2 * whole) {}

  static constexpr HalfInt from_doubled(int doubled) {
    HalfInt h;
    h.doubled_ = doubled;
    return h;
  }

  /// Accepts "1", "-1", "1/2", "-3/2", "0.5", "-1.5".
  static HalfInt parse(std::string_view text);

  constexpr int doubled() const { return doubled_; }
  constexpr double value() const { return doubled_ / 2.0; }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }

  constexpr HalfInt operator-() const { return from_doubled(-doubled_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_doubled(doubled_ + o.doubled_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_doubled(doubled_ - o.doubled_); }

  constexpr auto operator<=>(const HalfInt&) const = default;

  /// "0", "1", "-1/2", "3/2".
  std::string str() const;

 private:
  int doubled_ = 0;
};

}  // namespace natanzon
