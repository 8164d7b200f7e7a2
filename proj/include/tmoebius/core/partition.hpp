#pragma once

#include "tmoebius/core/numeric.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tmoebius {

/// A multiset of positive integers, kept weakly decreasing.
///
/// `norm()` is ‖μ‖ = Σ i·μ_i (the sum of the parts) and `length()` is
/// |μ| = Σ μ_i (the number of parts), where μ_i counts parts equal to i.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
      if (p <= 0) throw std::invalid_argument("partition parts must be positive");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }

  /// Parses a comma separated list such as "2,1,1". The empty string is ∅.
  static Partition parse(std::string_view text) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto comma = text.find(',', pos);
      auto token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      if (token.empty()) throw std::invalid_argument("empty part in partition list");
      Integer v = parse_integer(token);
      if (v <= 0 || v > 1'000'000) throw std::invalid_argument("partition parts must be positive");
      parts.push_back(static_cast<int>(v));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
      if (pos == text.size()) throw std::invalid_argument("trailing comma in partition list");
    }
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  int norm() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  int length() const { return static_cast<int>(parts_.size()); }

  int multiplicity(int i) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
  }

  /// μ_i for i = 1..max part; index 0 unused.
  std::vector<int> multiplicity_vector() const {
    std::vector<int> m(parts_.empty() ? 1 : parts_.front() + 1, 0);
    for (int p : parts_) ++m[p];
    return m;
  }

  /// ∏_i μ_i!, the order of the symmetry group permuting equal parts.
  Integer symmetry_order() const {
    Integer r = 1;
    std::map<int, int> counts;
    for (int p : parts_) ++counts[p];
    for (auto [part, c] : counts) r *= factorial(c);
    return r;
  }

  Partition operator+(const Partition& o) const {
    std::vector<int> all = parts_;
    all.insert(all.end(), o.parts_.begin(), o.parts_.end());
    return Partition(std::move(all));
  }

  bool contains(const Partition& sub) const {
    for (int p : sub.parts_) {
      if (sub.multiplicity(p) > multiplicity(p)) return false;
    }
    return true;
  }

  Partition minus(const Partition& sub) const {
    if (!contains(sub)) throw std::invalid_argument("partition is not a sub-multiset");
    std::vector<int> rest = parts_;
    for (int p : sub.parts_) rest.erase(std::find(rest.begin(), rest.end(), p));
    return Partition(std::move(rest));
  }

  /// All distinct sub-multisets, in a deterministic order.
  std::vector<Partition> sub_multisets() const {
    std::map<int, int> counts;
    for (int p : parts_) ++counts[p];
    std::vector<std::pair<int, int>> items(counts.rbegin(), counts.rend());
    std::vector<Partition> out;
    std::vector<int> current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == items.size()) {
        out.emplace_back(current);
        return;
      }
      for (int k = 0; k <= items[i].second; ++k) {
        for (int j = 0; j < k; ++j) current.push_back(items[i].first);
        rec(i + 1);
        for (int j = 0; j < k; ++j) current.pop_back();
      }
    };
    rec(0);
    return out;
  }

  /// Exponential notation, e.g. "1^2 2^1"; "∅" renders as "0".
  std::string to_string() const {
    if (parts_.empty()) return "0";
    std::map<int, int> counts;
    for (int p : parts_) ++counts[p];
    std::string s;
    for (auto [part, c] : counts) {
      if (!s.empty()) s += ' ';
      s += std::to_string(part) + "^" + std::to_string(c);
    }
    return s;
  }

  /// Comma separated, decreasing.
  std::string to_list() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of n, each weakly decreasing, in reverse lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  if (n >= 0) rec(n, n);
  return out;
}

}  // namespace tmoebius
