#pragma once

#include <utility>
#include <vector>

#include "spmfdp/poly/univariate.hpp"
#include "spmfdp/solver/radical.hpp"

namespace spmfdp::solver {

using poly::UnivariatePoly;

inline UnivariatePoly polynomial_gcd(UnivariatePoly a, UnivariatePoly b) {
  while (!b.is_zero()) {
    auto [q, r] = divide(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

/// p / gcd(p, p'): same roots, all simple.
inline UnivariatePoly squarefree_part(const UnivariatePoly& p) {
  if (p.degree() <= 0) return p;
  const UnivariatePoly g = polynomial_gcd(p, p.derivative());
  return exact_quotient(p, g).monic();
}

namespace detail {

inline int sign_at(const UnivariatePoly& p, const Rational& x) { return sgn(p.evaluate(x)); }

inline int sign_changes(const std::vector<UnivariatePoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

/// Real roots of a nonzero polynomial, each isolated exactly with a Sturm
/// chain and refined by rational bisection to width 2^-bits. Values are
/// returned ascending, one per distinct root.
inline std::vector<HighFloat> real_roots(const UnivariatePoly& p, unsigned bits = 190) {
  std::vector<HighFloat> out;
  if (p.degree() <= 0) return out;
  const UnivariatePoly f = squarefree_part(p);
  std::vector<UnivariatePoly> chain{f, f.derivative()};
  while (chain.back().degree() > 0) {
    auto [q, r] = divide(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    std::vector<Rational> neg = r.coefficients();
    for (auto& c : neg) c = -c;
    chain.push_back(UnivariatePoly(std::move(neg), f.unknown()));
  }
  // Cauchy bound
  Rational bound = 0;
  for (int k = 0; k < f.degree(); ++k) bound = std::max(bound, Rational(abs(f.coefficient(k)) / abs(f.leading())));
  bound += 1;

  const Rational width = Rational(1) / Rational(Integer(1) << bits);
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  std::vector<Rational> exact;
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int n = detail::sign_changes(chain, lo) - detail::sign_changes(chain, hi);  // roots in (lo, hi]
    if (n == 0) continue;
    if (n > 1) {
      const Rational mid = (lo + hi) / 2;
      stack.push_back({mid, hi});
      stack.push_back({lo, mid});
      continue;
    }
    // exactly one root in (lo, hi]; a zero at lo belongs to another interval
    int slo = detail::sign_at(f, lo);
    bool done = false;
    while (!done && (slo == 0 || detail::sign_at(f, hi) == 0)) {
      if (detail::sign_at(f, hi) == 0) {
        exact.push_back(hi);
        done = true;
        break;
      }
      const Rational mid = (lo + hi) / 2;
      if (detail::sign_changes(chain, lo) - detail::sign_changes(chain, mid) == 1) hi = mid; else lo = mid;
      slo = detail::sign_at(f, lo);
    }
    if (done) continue;
    while (hi - lo > width) {
      const Rational mid = (lo + hi) / 2;
      const int sm = detail::sign_at(f, mid);
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      if (sm == slo) lo = mid; else hi = mid;
    }
    exact.push_back((lo + hi) / 2);
  }
  std::sort(exact.begin(), exact.end());
  exact.erase(std::unique(exact.begin(), exact.end()), exact.end());
  for (const auto& r : exact) out.push_back(poly::from_rational<HighFloat>(r));
  return out;
}

}  // namespace spmfdp::solver
