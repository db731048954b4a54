#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spmfdp/error.hpp"
#include "spmfdp/poly/monomial.hpp"
#include "spmfdp/poly/rational.hpp"

namespace spmfdp::poly {

/// Converts an exact coefficient into the scalar type used for evaluation.
template <class T>
T from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>) {
    return r;
  } else if constexpr (std::is_same_v<T, double>) {
    return r.get_d();
  } else {
    return T(r.get_num().get_str()) / T(r.get_den().get_str());
  }
}

/// Sparse multivariate polynomial over the rationals. All polynomials live in
/// one ring whose unknowns follow the fixed global order, so any two values
/// can be combined.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  MultiPoly() = default;
  MultiPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MultiPoly(int c) : MultiPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static MultiPoly variable(const std::string& name) { return term(Monomial::variable(name), 1); }

  static MultiPoly term(Monomial m, const Rational& c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Total degree; the zero polynomial reports -1.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree()); }

  template <class Names>
  int degree_in(const Names& names) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree_in(names)));
    return d;
  }

  int degree_in(const std::string& name) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.exponent(name)));
    return d;
  }

  /// Unknowns that occur with a nonzero exponent, in global order.
  std::vector<std::string> unknowns() const {
    std::vector<std::string> out;
    for (const auto& [m, c] : terms_)
      for (const auto& f : m.factors())
        if (std::find(out.begin(), out.end(), f.first) == out.end()) out.push_back(f.first);
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) { return variable_before(a, b); });
    return out;
  }

  const std::pair<const Monomial, Rational>& leading_term() const {
    if (terms_.empty()) throw Error(ErrorCode::kInvalidInput, "leading term of the zero polynomial");
    return *terms_.begin();
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& rhs) { return *this = *this * rhs; }

  friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
  friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs -= rhs; }
  friend MultiPoly operator-(MultiPoly p) {
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }

  friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
    MultiPoly out;
    for (const auto& [ma, ca] : lhs.terms_)
      for (const auto& [mb, cb] : rhs.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  friend MultiPoly operator*(MultiPoly p, const Rational& s) {
    if (s == 0) return {};
    for (auto& [m, c] : p.terms_) c *= s;
    return p;
  }
  friend MultiPoly operator*(const Rational& s, MultiPoly p) { return std::move(p) * s; }

  friend bool operator==(const MultiPoly& lhs, const MultiPoly& rhs) { return lhs.terms_ == rhs.terms_; }
  friend bool operator!=(const MultiPoly& lhs, const MultiPoly& rhs) { return !(lhs == rhs); }

  MultiPoly pow(unsigned n) const {
    MultiPoly result(1), base = *this;
    while (n) {
      if (n & 1u) result *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return result;
  }

  /// Image under the substitution homomorphism name -> polynomial. Unbound
  /// unknowns are left alone; all replacements are simultaneous.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& bindings) const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
      MultiPoly image = MultiPoly::term(Monomial{}, c);
      Monomial kept;
      for (const auto& [name, exp] : m.factors()) {
        auto it = bindings.find(name);
        if (it == bindings.end()) {
          kept.multiply_by(name, exp);
        } else {
          image *= it->second.pow(exp);
        }
      }
      if (!kept.is_one()) image = image * MultiPoly::term(kept, 1);
      out += image;
    }
    return out;
  }

  /// Renames unknowns; a pure relabelling, so no arithmetic beyond re-sorting.
  MultiPoly rename(const std::map<std::string, std::string>& names) const {
    std::map<std::string, MultiPoly> bindings;
    for (const auto& [from, to] : names) bindings.emplace(from, variable(to));
    return substitute(bindings);
  }

  /// Evaluates with every unknown bound through `value_of(name) -> T`.
  template <class T, class Lookup>
  T evaluate(Lookup&& value_of) const {
    T sum = T(0);
    for (const auto& [m, c] : terms_) {
      T prod = from_rational<T>(c);
      for (const auto& [name, exp] : m.factors()) {
        const T v = value_of(name);
        for (std::uint32_t k = 0; k < exp; ++k) prod *= v;
      }
      sum += prod;
    }
    return sum;
  }

  /// Groups terms by their power product in `names`; each value is the
  /// coefficient polynomial in the remaining unknowns.
  template <class Names>
  std::map<Monomial, MultiPoly, GrlexDescending> coefficients_in(const Names& names) const {
    std::map<Monomial, MultiPoly, GrlexDescending> out;
    for (const auto& [m, c] : terms_) {
      auto [inside, rest] = m.split(names);
      out[inside].add_term(rest, c);
    }
    return out;
  }

  std::string to_string() const;

 private:
  TermMap terms_;
};

/// q with q*d == p. Throws NotDivisible if the division leaves a remainder.
inline MultiPoly exact_quotient(MultiPoly p, const MultiPoly& d) {
  if (d.is_zero()) throw Error(ErrorCode::kNotDivisible, "division by the zero polynomial");
  const auto& [lead_m, lead_c] = d.leading_term();
  MultiPoly q;
  while (!p.is_zero()) {
    const auto [pm, pc] = p.leading_term();
    if (!lead_m.divides(pm))
      throw Error(ErrorCode::kNotDivisible, "(" + p.to_string() + ") is not a multiple of (" + d.to_string() + ")");
    MultiPoly step = MultiPoly::term(lead_m.quotient_of(pm), pc / lead_c);
    p -= step * d;
    q += step;
  }
  return q;
}

inline std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    const Rational mag = abs(c);
    if (m.is_one()) {
      s += spmfdp::to_string(mag);
    } else {
      if (mag != 1) s += spmfdp::to_string(mag) + "*";
      s += m.to_string();
    }
    first = false;
  }
  return s;
}

/// Parses the canonical text form, e.g. "3/5*q0^2 - 8/5*q0*q1 + 1". Terms
/// may repeat and appear in any order; the result is canonical.
inline MultiPoly parse_poly(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::kParse, why + " at offset " + std::to_string(pos) + " in '" + std::string(text) + "'");
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_digits = [&] {
    const auto start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  };
  auto read_name = [&] {
    const auto start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    return std::string(text.substr(start, pos - start));
  };

  MultiPoly out;
  skip_ws();
  if (pos == text.size()) throw fail("empty polynomial");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;
    Rational coeff(sign);
    Monomial mono;
    bool have_factor = false;
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::string num(read_digits());
        std::string den = "1";
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          den = std::string(read_digits());
          if (den.empty()) throw fail("missing denominator");
        }
        coeff *= parse_rational(num + "/" + den);
      } else if (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_') {
        std::string name = read_name();
        std::uint32_t exp = 1;
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip_ws();
          auto digits = read_digits();
          if (digits.empty()) throw fail("missing exponent");
          exp = static_cast<std::uint32_t>(std::stoul(std::string(digits)));
        }
        mono.multiply_by(name, exp);
      } else {
        throw fail("unexpected character");
      }
      have_factor = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!have_factor) throw fail("dangling sign");
    out.add_term(mono, coeff);
  }
  return out;
}

}  // namespace spmfdp::poly
