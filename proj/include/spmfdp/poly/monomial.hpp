#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spmfdp/error.hpp"

namespace spmfdp::poly {

/// Position of a name in the fixed global unknown order. Names outside the
/// built-in list rank after it and are ordered by name among themselves.
inline int variable_rank(std::string_view name) {
  static constexpr std::array<std::string_view, 13> kOrder{
      "q0", "q1", "q2", "q3", "x1", "x2", "x3", "y1", "y2", "y3", "a", "b", "c"};
  for (std::size_t i = 0; i < kOrder.size(); ++i)
    if (kOrder[i] == name) return static_cast<int>(i);
  return static_cast<int>(kOrder.size());
}

/// Strict "comes before" in the global unknown order; earlier is more
/// significant in lexicographic comparisons.
inline bool variable_before(std::string_view lhs, std::string_view rhs) {
  const int rl = variable_rank(lhs), rr = variable_rank(rhs);
  if (rl != rr) return rl < rr;
  return lhs < rhs;
}

inline bool is_valid_variable_name(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

/// Power product of named unknowns. Factors are kept sorted by the global
/// unknown order and zero exponents are never stored.
class Monomial {
 public:
  using Factor = std::pair<std::string, std::uint32_t>;

  Monomial() = default;

  Monomial(std::initializer_list<Factor> factors) {
    for (const auto& [name, exp] : factors) multiply_by(name, exp);
  }

  static Monomial variable(std::string name, std::uint32_t exponent = 1) {
    Monomial m;
    m.multiply_by(std::move(name), exponent);
    return m;
  }

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::uint32_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return factors_.empty(); }

  std::uint32_t exponent(std::string_view name) const {
    for (const auto& [n, e] : factors_)
      if (n == name) return e;
    return 0;
  }

  template <class Names>
  std::uint32_t degree_in(const Names& names) const {
    std::uint32_t d = 0;
    for (const auto& [n, e] : factors_)
      if (std::find(std::begin(names), std::end(names), n) != std::end(names)) d += e;
    return d;
  }

  void multiply_by(std::string name, std::uint32_t exponent) {
    if (!is_valid_variable_name(name)) throw Error(ErrorCode::kInvalidInput, "bad unknown name '" + name + "'");
    if (exponent == 0) return;
    auto it = std::lower_bound(factors_.begin(), factors_.end(), name,
                               [](const Factor& f, const std::string& n) { return variable_before(f.first, n); });
    if (it != factors_.end() && it->first == name) {
      it->second += exponent;
    } else {
      factors_.insert(it, Factor{std::move(name), exponent});
    }
    degree_ += exponent;
  }

  friend Monomial operator*(const Monomial& lhs, const Monomial& rhs) {
    Monomial out;
    out.factors_.reserve(lhs.factors_.size() + rhs.factors_.size());
    auto a = lhs.factors_.begin(), b = rhs.factors_.begin();
    while (a != lhs.factors_.end() || b != rhs.factors_.end()) {
      if (b == rhs.factors_.end() || (a != lhs.factors_.end() && variable_before(a->first, b->first))) {
        out.factors_.push_back(*a++);
      } else if (a == lhs.factors_.end() || variable_before(b->first, a->first)) {
        out.factors_.push_back(*b++);
      } else {
        out.factors_.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    out.degree_ = lhs.degree_ + rhs.degree_;
    return out;
  }

  bool divides(const Monomial& other) const {
    for (const auto& [n, e] : factors_)
      if (other.exponent(n) < e) return false;
    return true;
  }

  /// other / this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const {
    Monomial out;
    for (const auto& [n, e] : other.factors_) {
      const auto mine = exponent(n);
      if (e > mine) out.factors_.emplace_back(n, e - mine);
    }
    for (const auto& f : out.factors_) out.degree_ += f.second;
    return out;
  }

  /// Splits into (part in `names`, remaining part).
  template <class Names>
  std::pair<Monomial, Monomial> split(const Names& names) const {
    std::pair<Monomial, Monomial> out;
    for (const auto& f : factors_) {
      const bool inside = std::find(std::begin(names), std::end(names), f.first) != std::end(names);
      Monomial& dst = inside ? out.first : out.second;
      dst.factors_.push_back(f);
      dst.degree_ += f.second;
    }
    return out;
  }

  /// "q0^2*q1"; the unit monomial prints as "1".
  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [n, e] : factors_) {
      if (!s.empty()) s += '*';
      s += n;
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  /// Graded lexicographic comparison: negative, zero or positive.
  friend int grlex_compare(const Monomial& lhs, const Monomial& rhs) {
    if (lhs.degree_ != rhs.degree_) return lhs.degree_ < rhs.degree_ ? -1 : 1;
    auto a = lhs.factors_.begin(), b = rhs.factors_.begin();
    while (a != lhs.factors_.end() && b != rhs.factors_.end()) {
      if (a->first == b->first) {
        if (a->second != b->second) return a->second < b->second ? -1 : 1;
        ++a;
        ++b;
      } else {
        return variable_before(a->first, b->first) ? 1 : -1;
      }
    }
    if (a != lhs.factors_.end()) return 1;
    if (b != rhs.factors_.end()) return -1;
    return 0;
  }

  friend bool operator==(const Monomial& lhs, const Monomial& rhs) { return lhs.factors_ == rhs.factors_; }

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Orders monomials from largest to smallest so that map iteration yields
/// the canonical printing order.
struct GrlexDescending {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const { return grlex_compare(lhs, rhs) > 0; }
};

}  // namespace spmfdp::poly
