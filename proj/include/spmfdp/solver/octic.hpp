#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spmfdp/error.hpp"
#include "spmfdp/poly/univariate.hpp"
#include "spmfdp/solver/radical.hpp"

namespace spmfdp::solver {

using poly::UnivariatePoly;

/// A real root with its closed form. `value` carries the full working
/// precision; `multiplicity` counts coalesced roots of the t-quartic.
struct RadicalRoot {
  HighFloat value;
  RadicalExpr expression;
  unsigned multiplicity = 1;

  double to_double() const { return value.convert_to<double>(); }
};

/// Root accounting of an even octic g(x) = h(x^2).
struct OcticRoots {
  std::vector<RadicalRoot> real;     // ascending
  unsigned complex_t_roots = 0;      // non-real roots of the t-quartic
  unsigned negative_t_roots = 0;     // real t < 0, i.e. purely imaginary x
  bool resolvent_rational = false;   // Ferrari resolvent had a rational root
  std::array<HighComplex, 4> t_roots;
};

namespace detail {

/// Value of a polynomial with integer coefficients (ascending) at z.
inline Integer eval_integer(const std::vector<Integer>& c, const Integer& z) {
  Integer acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// Integer roots of a monic integer cubic, found exactly: the critical
/// points split the line into monotone runs and each run is bisected over
/// the integers.
inline std::vector<Integer> integer_roots_monic_cubic(const std::vector<Integer>& c) {
  // c = {c0, c1, c2, 1}
  Integer bound = 1;
  for (std::size_t k = 0; k < 3; ++k) bound = std::max(bound, Integer(abs(c[k]) + 1));
  std::vector<Integer> cuts{-bound};
  // f'(z) = 3z^2 + 2 c2 z + c1, critical points (-c2 +- sqrt(c2^2 - 3 c1)) / 3
  const Integer disc = c[2] * c[2] - 3 * c[1];
  if (disc >= 0) {
    const Integer s = sqrt(disc);
    for (const Integer& numer : {Integer(-c[2] - s - 1), Integer(-c[2] + s + 1)}) {
      Integer q;
      mpz_fdiv_q_ui(q.get_mpz_t(), numer.get_mpz_t(), 3);
      if (q > -bound && q < bound) {
        for (int d = -1; d <= 1; ++d) cuts.push_back(q + d);
      }
    }
  }
  cuts.push_back(bound);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Integer> roots;
  auto add = [&](const Integer& z) {
    if (eval_integer(c, z) == 0 && std::find(roots.begin(), roots.end(), z) == roots.end()) roots.push_back(z);
  };
  for (const auto& z : cuts) add(z);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Integer lo = cuts[k], hi = cuts[k + 1];
    const int slo = sgn(eval_integer(c, lo)), shi = sgn(eval_integer(c, hi));
    if (slo == 0 || shi == 0 || slo == shi) continue;
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      const int sm = sgn(eval_integer(c, mid));
      if (sm == 0) {
        lo = mid;
        break;
      }
      if (sm == slo) lo = mid; else hi = mid;
    }
    add(lo);
    add(hi);
  }
  return roots;
}

}  // namespace detail

/// Rational roots of a cubic with rational coefficients (ascending, degree
/// exactly 3), found exactly.
inline std::vector<Rational> rational_roots_cubic(const std::array<Rational, 4>& coeffs) {
  if (coeffs[3] == 0) throw Error(ErrorCode::kWrongDegree, "cubic has zero leading coefficient");
  Integer common = 1;
  for (const auto& c : coeffs) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
  std::array<Integer, 4> ic;
  for (std::size_t k = 0; k < 4; ++k) ic[k] = Rational(coeffs[k] * common).get_num();
  // a z^3 + b z^2 + c z + d; substituting z = w / a gives the monic
  // w^3 + b w^2 + a c w + a^2 d, whose rational roots are integers
  const Integer& a = ic[3];
  std::vector<Integer> monic{a * a * ic[0], a * ic[1], ic[2], 1};
  std::vector<Rational> out;
  for (const auto& w : detail::integer_roots_monic_cubic(monic)) {
    Rational r(w, a);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

/// Four roots of t^4 + a3 t^3 + a2 t^2 + a1 t + a0 as radical expressions
/// (Ferrari, with Cardano for the resolvent when it has no rational root).
struct QuarticSolution {
  std::array<RadicalExpr, 4> roots;
  bool resolvent_rational = false;
};

inline QuarticSolution solve_quartic_radicals(const std::array<Rational, 4>& lower) {
  const Rational &a3 = lower[3], &a2 = lower[2], &a1 = lower[1], &a0 = lower[0];
  // depressed quartic y^4 + p y^2 + q y + r with t = y - a3/4
  const Rational shift = a3 / 4;
  const Rational p = a2 - 3 * a3 * a3 / 8;
  const Rational q = a1 - a3 * a2 / 2 + a3 * a3 * a3 / 8;
  const Rational r = a0 - a3 * a1 / 4 + a3 * a3 * a2 / 16 - 3 * a3 * a3 * a3 * a3 / 256;

  QuarticSolution out;
  if (q == 0) {
    // biquadratic: y^2 = (-p +- sqrt(p^2 - 4r)) / 2
    const RadicalExpr d = sqrt(RadicalExpr(Rational(p * p - 4 * r)));
    const RadicalExpr u1 = (RadicalExpr(Rational(-p)) + d) / RadicalExpr(2);
    const RadicalExpr u2 = (RadicalExpr(Rational(-p)) - d) / RadicalExpr(2);
    const RadicalExpr y1 = sqrt(u1), y2 = sqrt(u2);
    out.roots = {y1 - shift, -y1 - shift, y2 - shift, -y2 - shift};
    out.resolvent_rational = true;
    return out;
  }

  // resolvent 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0; any root m != 0 works
  const std::array<Rational, 4> resolvent{Rational(-q * q), Rational(2 * p * p - 8 * r), Rational(8 * p),
                                          Rational(8)};
  RadicalExpr m;
  const auto rational = rational_roots_cubic(resolvent);
  // prefer a positive rational root: it keeps sqrt(2m) real
  auto best = std::max_element(rational.begin(), rational.end());
  if (best != rational.end()) {
    m = *best;
    out.resolvent_rational = true;
  } else {
    // Cardano on m^3 + p m^2 + (p^2/4 - r) m - q^2/8, shifted by m = z - p/3
    const Rational c1 = p * p / 4 - r, c0 = -q * q / 8;
    const Rational big_p = c1 - p * p / 3;
    const Rational big_q = 2 * p * p * p / 27 - p * c1 / 3 + c0;
    const Rational delta = big_q * big_q / 4 + big_p * big_p * big_p / 27;
    RadicalExpr z;
    if (big_p == 0) {
      z = -cbrt(RadicalExpr(big_q));
    } else {
      const RadicalExpr sd = sqrt(RadicalExpr(delta));
      RadicalExpr inner = RadicalExpr(Rational(-big_q / 2)) + sd;
      if (big_q > 0) inner = RadicalExpr(Rational(-big_q / 2)) - sd;  // avoid cancellation
      const RadicalExpr u = cbrt(inner);
      z = u - RadicalExpr(big_p) / (RadicalExpr(3) * u);
    }
    m = z - RadicalExpr(Rational(p / 3));
  }
  const RadicalExpr s = sqrt(RadicalExpr(2) * m);
  const RadicalExpr base = -(RadicalExpr(2) * m) - RadicalExpr(Rational(2 * p));
  const RadicalExpr skew = RadicalExpr(Rational(2 * q)) / s;
  const RadicalExpr d_plus = sqrt(base - skew);
  const RadicalExpr d_minus = sqrt(base + skew);
  const RadicalExpr half(Rational(1, 2));
  out.roots = {(s + d_plus) * half - shift, (s - d_plus) * half - shift, (-s + d_minus) * half - shift,
               (-s - d_minus) * half - shift};
  return out;
}

struct OcticOptions {
  double cluster_tol = 1e-20;   // t-roots closer than this are one multiple root
  double imag_tol = 1e-30;      // |Im t| below this counts as real
};

/// Real roots of an even degree-8 polynomial, via the quartic in t = x^2.
inline OcticRoots solve_even_octic(const UnivariatePoly& g, const OcticOptions& opts = {}) {
  if (g.degree() != 8) throw Error(ErrorCode::kWrongDegree, "expected degree 8, got " + std::to_string(g.degree()));
  if (!g.is_even()) throw Error(ErrorCode::kNotEven, "polynomial has odd-degree terms");
  const Rational lead = g.leading();
  std::array<Rational, 4> lower;
  for (std::size_t k = 0; k < 4; ++k) lower[k] = g.coefficient(2 * k) / lead;
  const QuarticSolution quartic = solve_quartic_radicals(lower);

  OcticRoots out;
  out.resolvent_rational = quartic.resolvent_rational;
  struct RealT {
    HighFloat value;
    RadicalExpr expr;
    unsigned multiplicity;
  };
  std::vector<RealT> reals;
  for (std::size_t k = 0; k < 4; ++k) {
    const HighComplex v = quartic.roots[k].evaluate<HighComplex>();
    out.t_roots[k] = v;
    const HighFloat scale = std::max(HighFloat(1), HighFloat(abs(v)));
    if (abs(v.imag()) > opts.imag_tol * scale) {
      ++out.complex_t_roots;
      continue;
    }
    reals.push_back({v.real(), quartic.roots[k], 1});
  }
  std::sort(reals.begin(), reals.end(), [](const RealT& a, const RealT& b) { return a.value < b.value; });
  // coalesce clusters into their midpoint
  std::vector<RealT> merged;
  for (const auto& t : reals) {
    if (!merged.empty() && abs(t.value - merged.back().value / merged.back().multiplicity) < opts.cluster_tol) {
      merged.back().value += t.value;
      merged.back().expr = merged.back().expr + t.expr;
      ++merged.back().multiplicity;
    } else {
      merged.push_back(t);
    }
  }
  for (auto& t : merged) {
    if (t.multiplicity > 1) {
      t.value /= t.multiplicity;
      t.expr = t.expr / RadicalExpr(static_cast<long>(t.multiplicity));
    }
    if (t.value < 0 && abs(t.value) > opts.cluster_tol) {
      out.negative_t_roots += t.multiplicity;
      continue;
    }
    const RadicalExpr x = sqrt(t.expr);
    const HighFloat xv = t.value <= 0 ? HighFloat(0) : HighFloat(sqrt(t.value));
    if (xv == 0) {
      out.real.push_back({HighFloat(0), x, 2 * t.multiplicity});
      continue;
    }
    out.real.push_back({xv, x, t.multiplicity});
    out.real.push_back({HighFloat(-xv), -x, t.multiplicity});
  }
  std::sort(out.real.begin(), out.real.end(), [](const RadicalRoot& a, const RadicalRoot& b) { return a.value < b.value; });
  return out;
}

}  // namespace spmfdp::solver
