#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "spmfdp/error.hpp"
#include "spmfdp/poly/multipoly.hpp"

namespace spmfdp::poly {

/// Dense matrix of polynomials, row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static PolyMatrix identity(std::size_t n) {
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = MultiPoly(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  MultiPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const MultiPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool is_constant() const {
    for (const auto& e : entries_)
      if (!e.is_constant()) return false;
    return true;
  }

  PolyMatrix substitute(const std::map<std::string, MultiPoly>& bindings) const {
    PolyMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i].substitute(bindings);
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<MultiPoly> entries_;
};

/// A monomial ideal used to truncate products during expansion: any term
/// divisible by one of the generators is dropped.
class TruncationRule {
 public:
  TruncationRule() = default;
  explicit TruncationRule(std::vector<Monomial> generators) : generators_(std::move(generators)) {}

  /// The ideal generated by every monomial of total degree `degree` in `names`,
  /// e.g. (a^2, b^2, c^2, ab, ac, bc) for degree 2 in {a, b, c}.
  static TruncationRule total_degree_at_least(const std::vector<std::string>& names, unsigned degree) {
    std::vector<Monomial> gens;
    std::vector<unsigned> exps(names.size(), 0);
    // enumerate exponent vectors summing to `degree`
    auto rec = [&](auto&& self, std::size_t idx, unsigned left) -> void {
      if (idx + 1 == names.size()) {
        exps[idx] = left;
        Monomial m;
        for (std::size_t i = 0; i < names.size(); ++i) m.multiply_by(names[i], exps[i]);
        gens.push_back(std::move(m));
        return;
      }
      for (unsigned e = 0; e <= left; ++e) {
        exps[idx] = e;
        self(self, idx + 1, left - e);
      }
    };
    if (!names.empty()) rec(rec, 0, degree);
    return TruncationRule(std::move(gens));
  }

  const std::vector<Monomial>& generators() const noexcept { return generators_; }

  bool kills(const Monomial& m) const {
    for (const auto& g : generators_)
      if (g.divides(m)) return true;
    return false;
  }

  MultiPoly reduce(const MultiPoly& p) const {
    MultiPoly out;
    for (const auto& [m, c] : p.terms())
      if (!kills(m)) out.add_term(m, c);
    return out;
  }

  MultiPoly multiply(const MultiPoly& lhs, const MultiPoly& rhs) const {
    MultiPoly out;
    for (const auto& [ma, ca] : lhs.terms())
      for (const auto& [mb, cb] : rhs.terms()) {
        Monomial m = ma * mb;
        if (!kills(m)) out.add_term(m, ca * cb);
      }
    return out;
  }

 private:
  std::vector<Monomial> generators_;
};

/// Exact determinant of an n x n rational matrix (row-major) by fraction-free
/// Bareiss elimination on integer-scaled rows.
inline Rational rational_determinant(const std::vector<Rational>& entries, std::size_t n) {
  if (entries.size() != n * n) throw Error(ErrorCode::kNonSquare, "entry count does not match n*n");
  if (n == 0) return Rational(1);
  std::vector<Integer> a(n * n);
  Rational scale(1);
  for (std::size_t r = 0; r < n; ++r) {
    Integer row_lcm = 1;
    for (std::size_t c = 0; c < n; ++c) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), entries[r * n + c].get_den_mpz_t());
    for (std::size_t c = 0; c < n; ++c) {
      const Rational& e = entries[r * n + c];
      a[r * n + c] = e.get_num() * (row_lcm / e.get_den());
    }
    scale *= Rational(row_lcm);
  }
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row * n + k] == 0) ++swap_row;
      if (swap_row == n) return Rational(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap_row * n + c]);
      sign = -sign;
    }
    const Integer& pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i * n + j] * pivot - a[i * n + k] * a[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = std::move(v);
      }
      a[i * n + k] = 0;
    }
    prev = pivot;
  }
  Rational det(a[n * n - 1] * sign);
  det /= scale;
  return det;
}

namespace detail {

inline MultiPoly minor_expansion(const PolyMatrix& m, const TruncationRule* rule) {
  const std::size_t n = m.rows();
  if (n > 30) throw Error(ErrorCode::kInvalidInput, "expansion by minors supports at most 30 columns");
  // memo[mask] = determinant of rows [n - popcount(mask), n) restricted to columns in mask
  std::unordered_map<std::uint32_t, MultiPoly> memo;
  auto mul = [&](const MultiPoly& x, const MultiPoly& y) { return rule ? rule->multiply(x, y) : x * y; };
  auto rec = [&](auto&& self, std::uint32_t mask) -> MultiPoly {
    const auto count = static_cast<std::size_t>(__builtin_popcount(mask));
    if (count == 0) return MultiPoly(1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const std::size_t row = n - count;
    MultiPoly acc;
    int position = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (1u << col))) continue;
      const MultiPoly& entry = m(row, col);
      if (!entry.is_zero()) {
        MultiPoly sub = self(self, mask & ~(1u << col));
        if (!sub.is_zero()) {
          MultiPoly prod = mul(entry, sub);
          if (position % 2 == 0) {
            acc += prod;
          } else {
            acc -= prod;
          }
        }
      }
      ++position;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1u);
  return rec(rec, full);
}

}  // namespace detail

/// Exact determinant. Constant matrices go through Bareiss; polynomial
/// entries use memoized expansion by minors. With a truncation rule every
/// partial product is reduced modulo the rule's monomial ideal, so the result
/// equals the full determinant reduced modulo that ideal.
inline MultiPoly determinant(const PolyMatrix& m, const std::optional<TruncationRule>& truncation = std::nullopt) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::kNonSquare,
                "determinant of a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  const std::size_t n = m.rows();
  if (!truncation && m.is_constant()) {
    std::vector<Rational> entries(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) entries[r * n + c] = m(r, c).constant_term();
    return MultiPoly(rational_determinant(entries, n));
  }
  MultiPoly det = detail::minor_expansion(m, truncation ? &*truncation : nullptr);
  return truncation ? truncation->reduce(det) : det;
}

}  // namespace spmfdp::poly
