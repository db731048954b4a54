#pragma once

#include <random>
#include <string>
#include <vector>

#include "spmfdp/dixon/quadric_system.hpp"
#include "spmfdp/poly/multipoly.hpp"
#include "spmfdp/spm/quaternion.hpp"
#include "spmfdp/spm/system.hpp"

namespace testing_support {

using spmfdp::Integer;
using spmfdp::Rational;
using spmfdp::poly::Monomial;
using spmfdp::poly::MultiPoly;

inline Rational small_rational(std::mt19937& rng, int span = 9) {
  std::uniform_int_distribution<int> num(-span, span), den(1, span);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Rational nonzero_rational(std::mt19937& rng, int span = 9) {
  Rational r;
  do r = small_rational(rng, span);
  while (r == 0);
  return r;
}

/// Exact point on the unit circle from a random half-angle tangent.
inline spmfdp::spm::SinCos circle_point(std::mt19937& rng, int span = 40) {
  std::uniform_int_distribution<int> d(1, span), coin(0, 1);
  Rational t(d(rng), d(rng));
  t.canonicalize();
  if (coin(rng)) t = -t;
  const Rational den = 1 + t * t;
  return {Rational(2 * t / den), Rational((1 - t * t) / den)};
}

inline std::array<spmfdp::spm::SinCos, 3> motor_draw(std::mt19937& rng) {
  return {circle_point(rng), circle_point(rng), circle_point(rng)};
}

/// Positive q0 roots of the worked example, 20 digits.
inline constexpr std::array<const char*, 4> kWorkedRoots{"0.22420547189459831634", "0.24102325734564694455",
                                                         "0.87935205040860456901", "0.34406346396151611679"};

inline std::array<double, 4> worked_roots() {
  return {std::stod(kWorkedRoots[0]), std::stod(kWorkedRoots[1]), std::stod(kWorkedRoots[2]), std::stod(kWorkedRoots[3])};
}

/// (r1, r2, -r3, -r4)
inline spmfdp::spm::Quat worked_solution() {
  const auto r = worked_roots();
  return {r[0], r[1], -r[2], -r[3]};
}

inline std::array<spmfdp::spm::SinCos, 3> worked_motors() {
  return {{{Rational(3, 5), Rational(4, 5)}, {Rational(5, 13), Rational(12, 13)}, {Rational(7, 25), Rational(24, 25)}}};
}

/// Random polynomial with `terms` terms of total degree <= `max_degree`.
inline MultiPoly random_poly(std::mt19937& rng, const std::vector<std::string>& names, int terms, int max_degree) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(names.size()) - 1), deg(0, max_degree);
  MultiPoly p;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) m.multiply_by(names[static_cast<std::size_t>(pick(rng))], 1);
    p.add_term(m, small_rational(rng));
  }
  return p;
}

/// Random quadric in `names` (all monomials of degree <= 2 with random
/// coefficients) adjusted so that it vanishes at `root`.
inline MultiPoly quadric_through(std::mt19937& rng, const std::vector<std::string>& names, const std::vector<Rational>& root) {
  MultiPoly p;
  for (std::size_t i = 0; i < names.size(); ++i) {
    p.add_term(Monomial::variable(names[i]), small_rational(rng));
    for (std::size_t j = i; j < names.size(); ++j) {
      Monomial m = Monomial::variable(names[i]);
      m.multiply_by(names[j], 1);
      p.add_term(m, small_rational(rng));
    }
  }
  const Rational at = p.evaluate<Rational>([&](const std::string& n) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return root[i];
    return Rational(0);
  });
  return p - MultiPoly(at);
}

/// Four random quadrics in q1, q2, q3 sharing the root `root`.
inline spmfdp::dixon::QuadricSystem planted_system(std::mt19937& rng, std::vector<Rational>& root) {
  const std::vector<std::string> names{"q1", "q2", "q3"};
  root = {small_rational(rng), small_rational(rng), small_rational(rng)};
  spmfdp::dixon::QuadricSystem sys;
  for (auto& f : sys.polys) f = quadric_through(rng, names, root);
  sys.eliminated = {"q1", "q2", "q3"};
  return sys;
}

}  // namespace testing_support
