#pragma once

#include "tmoebius/core/numeric.hpp"

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tmoebius {

/// Exact element of ½ℤ, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_doubled(std::int64_t doubled) {
    HalfInt h;
    h.doubled_ = doubled;
    return h;
  }
  static constexpr HalfInt from_integer(std::int64_t n) { return from_doubled(2 * n); }

  /// Accepts "p", "p/2" and "p/1". Decimals are rejected.
  static HalfInt parse(std::string_view text) {
    Rational r;
    try {
      r = parse_rational(text);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("not a half-integer: '" + std::string(text) + "'");
    }
    Rational twice = r * 2;
    if (!is_integral(twice)) {
      throw std::invalid_argument("not a half-integer: '" + std::string(text) + "'");
    }
    return from_doubled(static_cast<std::int64_t>(tmoebius::as_integer(twice)));
  }

  constexpr std::int64_t doubled() const { return doubled_; }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }

  std::int64_t as_integer() const {
    if (!is_integer()) throw std::domain_error("half-integer " + to_string() + " is not an integer");
    return doubled_ / 2;
  }

  Rational to_rational() const { return Rational(doubled_, 2); }

  std::string to_string() const {
    if (is_integer()) return std::to_string(doubled_ / 2);
    return std::to_string(doubled_) + "/2";
  }

  constexpr HalfInt operator+(HalfInt o) const { return from_doubled(doubled_ + o.doubled_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_doubled(doubled_ - o.doubled_); }
  constexpr HalfInt operator-() const { return from_doubled(-doubled_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    doubled_ += o.doubled_;
    return *this;
  }

  constexpr auto operator<=>(const HalfInt&) const = default;

 private:
  std::int64_t doubled_ = 0;
};

}  // namespace tmoebius
