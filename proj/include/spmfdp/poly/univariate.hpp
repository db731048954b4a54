#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spmfdp/error.hpp"
#include "spmfdp/poly/multipoly.hpp"

namespace spmfdp::poly {

/// Dense univariate polynomial with exact coefficients in ascending degree.
/// The leading coefficient is kept nonzero; the zero polynomial has no
/// coefficients.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  UnivariatePoly(std::vector<Rational> ascending, std::string unknown)
      : coeffs_(std::move(ascending)), unknown_(std::move(unknown)) {
    trim();
  }

  static UnivariatePoly from_multipoly(const MultiPoly& p, const std::string& unknown) {
    std::vector<Rational> c;
    for (const auto& [m, coef] : p.terms()) {
      const auto e = m.exponent(unknown);
      if (m.degree() != e)
        throw Error(ErrorCode::kInvalidInput, "polynomial is not univariate in " + unknown + ": " + p.to_string());
      if (c.size() <= e) c.resize(e + 1);
      c[e] += coef;
    }
    return {std::move(c), unknown};
  }

  MultiPoly to_multipoly() const {
    MultiPoly p;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      p.add_term(Monomial::variable(unknown_, static_cast<std::uint32_t>(k)), coeffs_[k]);
    return p;
  }

  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  const std::string& unknown() const noexcept { return unknown_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  /// True when every odd-degree coefficient vanishes.
  bool is_even() const {
    for (std::size_t k = 1; k < coeffs_.size(); k += 2)
      if (coeffs_[k] != 0) return false;
    return true;
  }

  UnivariatePoly monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> c = coeffs_;
    const Rational lead = c.back();
    for (auto& x : c) x /= lead;
    return {std::move(c), unknown_};
  }

  UnivariatePoly renamed(std::string unknown) const { return {coeffs_, std::move(unknown)}; }

  template <class T>
  T evaluate(const T& x) const {
    T acc = T(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + from_rational<T>(*it);
    return acc;
  }

  UnivariatePoly derivative() const {
    std::vector<Rational> c;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) c.push_back(coeffs_[k] * static_cast<long>(k));
    return {std::move(c), unknown_};
  }

  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
    if (a.is_zero() || b.is_zero()) return {{}, a.unknown_};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return {std::move(c), a.unknown_};
  }

  UnivariatePoly pow(unsigned n) const {
    UnivariatePoly r({Rational(1)}, unknown_);
    for (unsigned k = 0; k < n; ++k) r = r * *this;
    return r;
  }

  /// Long division: (quotient, remainder).
  friend std::pair<UnivariatePoly, UnivariatePoly> divide(const UnivariatePoly& num, const UnivariatePoly& den) {
    if (den.is_zero()) throw Error(ErrorCode::kNotDivisible, "division by the zero polynomial");
    std::vector<Rational> rem = num.coeffs_;
    if (num.degree() < den.degree()) return {UnivariatePoly({}, num.unknown_), num};
    std::vector<Rational> quot(rem.size() - den.coeffs_.size() + 1);
    for (std::size_t k = quot.size(); k-- > 0;) {
      const Rational factor = rem[k + den.coeffs_.size() - 1] / den.leading();
      quot[k] = factor;
      if (factor == 0) continue;
      for (std::size_t j = 0; j < den.coeffs_.size(); ++j) rem[k + j] -= factor * den.coeffs_[j];
    }
    return {UnivariatePoly(std::move(quot), num.unknown_), UnivariatePoly(std::move(rem), num.unknown_)};
  }

  friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) {
    return a.coeffs_ == b.coeffs_ && (a.is_zero() || a.unknown_ == b.unknown_);
  }

  std::string to_string() const { return to_multipoly().to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
  std::string unknown_;
};

/// Exact quotient; throws NotDivisible on a nonzero remainder.
inline UnivariatePoly exact_quotient(const UnivariatePoly& num, const UnivariatePoly& den) {
  auto [q, r] = divide(num, den);
  if (!r.is_zero())
    throw Error(ErrorCode::kNotDivisible, "(" + num.to_string() + ") is not a multiple of (" + den.to_string() + ")");
  return q;
}

/// The unique polynomial of degree < points.size() through the samples
/// (Newton divided differences, exact).
inline UnivariatePoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                                  const std::string& unknown) {
  if (xs.size() != ys.size() || xs.empty()) throw Error(ErrorCode::kInvalidInput, "interpolation needs matching samples");
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      const Rational gap = xs[i] - xs[i - j];
      if (gap == 0) throw Error(ErrorCode::kInvalidInput, "interpolation nodes must be distinct");
      dd[i] = (dd[i] - dd[i - 1]) / gap;
      if (i == j) break;
    }
  // Horner on the Newton form
  std::vector<Rational> acc{dd[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    std::vector<Rational> next(acc.size() + 1);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] -= acc[k] * xs[i];
    }
    next[0] += dd[i];
    acc = std::move(next);
  }
  return {std::move(acc), unknown};
}

}  // namespace spmfdp::poly
