#pragma once

#include "tmoebius/core/numeric.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace tmoebius {

/// Finite Laurent polynomial in q^{1/2}. Exponents are stored doubled, so the
/// key k stands for q^{k/2}. Zero coefficients are never stored.
template <class Coeff>
class LaurentPolynomial {
 public:
  using Terms = std::map<std::int64_t, Coeff>;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(const Coeff& constant) { add_term(0, constant); }

  static LaurentPolynomial monomial(std::int64_t doubled_exp, const Coeff& c) {
    LaurentPolynomial p;
    p.add_term(doubled_exp, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(std::int64_t doubled_exp) const {
    auto it = terms_.find(doubled_exp);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(std::int64_t doubled_exp, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(doubled_exp, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Coeff evaluate_at_one() const {
    Coeff s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// Image under q ↦ q^{-1}.
  LaurentPolynomial inverted() const {
    LaurentPolynomial r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  bool is_palindromic() const { return *this == inverted(); }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPolynomial operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    r += o;
    return r;
  }
  LaurentPolynomial operator-(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }
  LaurentPolynomial operator*(const LaurentPolynomial& o) const {
    LaurentPolynomial r;
    for (const auto& [e1, c1] : terms_) {
      for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    }
    return r;
  }
  LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

  LaurentPolynomial scaled(const Coeff& s) const {
    LaurentPolynomial r;
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }

  template <class Other>
  LaurentPolynomial<Other> convert() const {
    LaurentPolynomial<Other> r;
    for (const auto& [e, c] : terms_) r.add_term(e, Other(c));
    return r;
  }

  bool operator==(const LaurentPolynomial& o) const { return terms_ == o.terms_; }

  /// Human readable, highest exponent first, e.g. "q^(1/2) + q^(-1/2)".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string coef = tmoebius::to_string(c);
      bool negative = !coef.empty() && coef[0] == '-';
      if (negative) coef.erase(0, 1);
      if (s.empty()) {
        if (negative) s += "-";
      } else {
        s += negative ? " - " : " + ";
      }
      if (e == 0) {
        s += coef;
        continue;
      }
      if (coef != "1") s += coef + "*";
      s += "q";
      if (e != 2) {
        s += "^" + (e % 2 == 0 ? std::to_string(e / 2) : "(" + std::to_string(e) + "/2)");
      }
    }
    return s;
  }

 private:
  Terms terms_;
};

/// [m]_q = Σ_{j=0}^{m-1} q^{(m-1)/2 - j}.
inline LaurentPolynomial<Integer> q_analog(std::int64_t m) {
  if (m <= 0) throw std::domain_error("q_analog: m must be positive, got " + std::to_string(m));
  LaurentPolynomial<Integer> p;
  for (std::int64_t j = 0; j < m; ++j) p.add_term((m - 1) - 2 * j, Integer(1));
  return p;
}

/// Renders a doubled exponent as "k" or "k/2".
inline std::string doubled_to_string(std::int64_t doubled) {
  if (doubled % 2 == 0) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

}  // namespace tmoebius
