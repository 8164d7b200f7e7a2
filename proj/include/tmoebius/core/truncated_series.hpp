#pragma once

#include "tmoebius/core/divisors.hpp"
#include "tmoebius/core/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius {

/// Power series in y known up to and including y^order.
template <class Coeff = Rational>
class TruncatedSeries {
 public:
  TruncatedSeries() : coeffs_(1, Coeff(0)) {}
  explicit TruncatedSeries(int order) : coeffs_(check_order(order) + 1, Coeff(0)) {}
  TruncatedSeries(int order, std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(check_order(order) + 1, Coeff(0));
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Coeff>& coefficients() const { return coeffs_; }

  Coeff operator[](int n) const {
    if (n < 0 || n > order()) return Coeff(0);
    return coeffs_[n];
  }
  void set(int n, const Coeff& c) {
    if (n < 0 || n > order()) throw std::out_of_range("series index beyond truncation");
    coeffs_[n] = c;
  }
  void add(int n, const Coeff& c) {
    if (n >= 0 && n <= order()) coeffs_[n] += c;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Coeff& c) { return c == 0; });
  }

  TruncatedSeries truncated(int order) const {
    return TruncatedSeries(std::min(order, this->order()), coeffs_);
  }

  TruncatedSeries operator+(const TruncatedSeries& o) const {
    int n = std::min(order(), o.order());
    TruncatedSeries r(n);
    for (int i = 0; i <= n; ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return r;
  }
  TruncatedSeries operator-(const TruncatedSeries& o) const {
    int n = std::min(order(), o.order());
    TruncatedSeries r(n);
    for (int i = 0; i <= n; ++i) r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return r;
  }
  TruncatedSeries operator*(const TruncatedSeries& o) const {
    int n = std::min(order(), o.order());
    TruncatedSeries r(n);
    for (int i = 0; i <= n; ++i) {
      if (coeffs_[i] == 0) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (o.coeffs_[j] != 0) r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
      }
    }
    return r;
  }
  TruncatedSeries scaled(const Coeff& s) const {
    TruncatedSeries r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  /// f(y) ↦ f(y^k). The result keeps the same truncation order.
  TruncatedSeries substitute_power(int k) const {
    if (k < 1) throw std::invalid_argument("substitute_power: k must be positive");
    TruncatedSeries r(order());
    for (int i = 0; i * k <= order(); ++i) r.coeffs_[i * k] = coeffs_[i];
    return r;
  }

  /// f(y) ↦ f(-y).
  TruncatedSeries negate_variable() const {
    TruncatedSeries r = *this;
    for (int i = 1; i <= order(); i += 2) r.coeffs_[i] = -r.coeffs_[i];
    return r;
  }

  /// D = y d/dy.
  TruncatedSeries derivative() const {
    TruncatedSeries r(order());
    for (int i = 0; i <= order(); ++i) r.coeffs_[i] = coeffs_[i] * i;
    return r;
  }
  TruncatedSeries derivative(int times) const {
    TruncatedSeries r = *this;
    for (int t = 0; t < times; ++t) r = r.derivative();
    return r;
  }

  TruncatedSeries even_part() const {
    TruncatedSeries r(order());
    for (int i = 0; i <= order(); i += 2) r.coeffs_[i] = coeffs_[i];
    return r;
  }
  TruncatedSeries odd_part() const {
    TruncatedSeries r(order());
    for (int i = 1; i <= order(); i += 2) r.coeffs_[i] = coeffs_[i];
    return r;
  }

  template <class Other>
  TruncatedSeries<Other> convert() const {
    std::vector<Other> c(coeffs_.begin(), coeffs_.end());
    return TruncatedSeries<Other>(order(), std::move(c));
  }

  bool operator==(const TruncatedSeries& o) const { return coeffs_ == o.coeffs_; }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i <= order(); ++i) {
      if (coeffs_[i] == 0) continue;
      std::string c = tmoebius::to_string(coeffs_[i]);
      bool negative = c[0] == '-';
      if (negative) c.erase(0, 1);
      if (s.empty()) {
        if (negative) s += "-";
      } else {
        s += negative ? " - " : " + ";
      }
      if (i == 0) {
        s += c;
      } else {
        if (c != "1") s += c + "*";
        s += i == 1 ? "y" : "y^" + std::to_string(i);
      }
    }
    s += s.empty() ? "O(y^" : " + O(y^";
    s += std::to_string(order() + 1) + ")";
    return s;
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("series order must be nonnegative");
    return order;
  }

  std::vector<Coeff> coeffs_;
};

/// G₂(y) = Σ_{n≥1} σ₁(n) yⁿ.
template <class Coeff = Rational>
TruncatedSeries<Coeff> eisenstein_G2(int order) {
  TruncatedSeries<Coeff> s(order);
  for (int n = 1; n <= order; ++n) s.set(n, Coeff(sigma1(n)));
  return s;
}

/// H(y) = Σ_{n≥1} σ̃₁(n) yⁿ.
template <class Coeff = Rational>
TruncatedSeries<Coeff> series_H(int order) {
  TruncatedSeries<Coeff> s(order);
  for (int n = 1; n <= order; ++n) s.set(n, Coeff(sigma1_tilde(n)));
  return s;
}

template <class Coeff = Rational>
TruncatedSeries<Coeff> series_H0(int order) {
  return series_H<Coeff>(order).even_part();
}

template <class Coeff = Rational>
TruncatedSeries<Coeff> series_H1(int order) {
  return series_H<Coeff>(order).odd_part();
}

}  // namespace tmoebius
