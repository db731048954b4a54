#pragma once

#include <array>
#include <map>
#include <string>

#include "spmfdp/poly/multipoly.hpp"
#include "spmfdp/poly/univariate.hpp"
#include "spmfdp/spm/system.hpp"

namespace spmfdp::spm {

using poly::UnivariatePoly;

/// w, w1, w2, w3 evaluated at one set of exact motor data.
struct GCoefficients {
  Rational w, w1, w2, w3;
};

/// The four coefficient forms as polynomials in A1, B1, A2, B2, A3, B3.
inline const std::array<MultiPoly, 4>& g_coefficient_forms() {
  static const std::array<MultiPoly, 4> forms = [] {
    const MultiPoly w = poly::parse_poly("A2^2*A3^2 + A2^2*B3^2 + B2^2*B3^2") *
                        poly::parse_poly("A1^2*A3^2 + B1^2*A3^2 + B1^2*B3^2") *
                        poly::parse_poly("A1^2*A2^2 + A1^2*B2^2 + B1^2*B2^2");
    const MultiPoly w1 = poly::parse_poly(
      "3*A1^4*A2^4*A3^4 + 2*A1^2*B1^2*A2^4*A3^4 + 2*A1^4*A2^2*B2^2*A3^4"
      " + 5*A1^2*B1^2*A2^2*B2^2*A3^4 + 3*B1^4*A2^2*B2^2*A3^4 + 2*A1*B1^3*A2^3*B2*A3^3*B3"
      " + 2*A1^3*B1*A2*B2^3*A3^3*B3 + 3*A1^4*B2^4*A3^2*B3^2 + 2*A1*B1^3*A2*B2^3*A3^3*B3"
      " + 2*A1^4*A2^4*A3^2*B3^2 + 5*A1^2*B1^2*A2^4*A3^2*B3^2 + 5*A1^4*A2^2*B2^2*A3^2*B3^2"
      " + 9*A1^2*B1^2*A2^2*B2^2*A3^2*B3^2 + 5*B1^4*A2^2*B2^2*A3^2*B3^2"
      " + 5*A1^2*B1^2*B2^4*A3^2*B3^2 + 2*B1^4*B2^4*A3^2*B3^2 + 2*A1^3*B1*A2^3*B2*A3*B3^3"
      " + 2*A1*B1^3*A2^3*B2*A3*B3^3 + 2*A1^3*B1*A2*B2^3*A3*B3^3 + 6*A1*B1^3*A2*B2^3*A3*B3^3"
      " + 3*A1^2*B1^2*A2^4*B3^4 + 5*A1^2*B1^2*A2^2*B2^2*B3^4 + 2*B1^4*A2^2*B2^2*B3^4"
      " + 2*A1^2*B1^2*B2^4*B3^4");
    const MultiPoly w2 = poly::parse_poly(
      "A1^4*A2^4*A3^4 + A1^2*B1^2*A2^2*B2^2*A3^4 + B1^4*A2^2*B2^2*A3^4"
      " - 2*A1^3*B1*A2^3*B2*A3^3*B3 + 2*A1*B1^3*A2^3*B2*A3^3*B3 + 2*A1^3*B1*A2*B2^3*A3^3*B3"
      " + 2*A1*B1^3*A2*B2^3*A3^3*B3 + A1^2*B1^2*A2^4*A3^2*B3^2 + A1^4*A2^2*B2^2*A3^2*B3^2"
      " + 7*A1^2*B1^2*A2^2*B2^2*A3^2*B3^2 + B1^4*A2^2*B2^2*A3^2*B3^2 + A1^4*B2^4*A3^2*B3^2"
      " + A1^2*B1^2*B2^4*A3^2*B3^2 + 2*A1^3*B1*A2^3*B2*A3*B3^3 + 2*A1*B1^3*A2^3*B2*A3*B3^3"
      " + 2*A1^3*B1*A2*B2^3*A3*B3^3 + A1^2*B1^2*A2^4*B3^4 + A1^2*B1^2*A2^2*B2^2*B3^4");
    const MultiPoly w3 = poly::parse_poly(
      "-A1^4*A2^4*A3^4 + A1^2*B1^2*A2^2*B2^2*A3^4 + B1^4*A2^2*B2^2*A3^4"
      " + 4*A1^3*B1*A2^3*B2*A3^3*B3 + 2*A1*B1^3*A2^3*B2*A3^3*B3 + 2*A1^3*B1*A2*B2^3*A3^3*B3"
      " + A1^4*B2^4*A3^2*B3^2 + 2*A1*B1^3*A2*B2^3*A3^3*B3 + A1^2*B1^2*A2^4*A3^2*B3^2"
      " + A1^4*A2^2*B2^2*A3^2*B3^2 + A1^2*B1^2*A2^2*B2^2*A3^2*B3^2 + B1^4*A2^2*B2^2*A3^2*B3^2"
      " + A1^2*B1^2*B2^4*A3^2*B3^2 + 2*A1^3*B1*A2^3*B2*A3*B3^3 + 2*A1*B1^3*A2^3*B2*A3*B3^3"
      " + 2*A1^3*B1*A2*B2^3*A3*B3^3 + 2*A1*B1^3*A2*B2^3*A3*B3^3 + A1^2*B1^2*A2^4*B3^4"
      " + A1^2*B1^2*A2^2*B2^2*B3^4");
    return std::array<MultiPoly, 4>{w, w1, w2, w3};
  }();
  return forms;
}

inline GCoefficients g_coefficients(const std::array<SinCos, 3>& ab) {
  std::map<std::string, Rational> values;
  for (std::size_t i = 0; i < 3; ++i) {
    values["A" + std::to_string(i + 1)] = ab[i].sin;
    values["B" + std::to_string(i + 1)] = ab[i].cos;
  }
  const auto lookup = [&](const std::string& name) { return values.at(name); };
  const auto& f = g_coefficient_forms();
  return {f[0].evaluate<Rational>(lookup), f[1].evaluate<Rational>(lookup), f[2].evaluate<Rational>(lookup),
          f[3].evaluate<Rational>(lookup)};
}

/// Even octic in `unknown` whose roots are the non-extraneous q0 values:
///   -2^24 w^2 t^8 + 2^24 w^2 t^6 - 2^21 w w1 t^4 + 2^20 w w2 t^2 - 2^16 w3^2
inline UnivariatePoly closed_form_G(const GCoefficients& g, const std::string& unknown = "q0") {
  const Rational w2x = g.w * g.w;
  std::vector<Rational> c(9);
  c[8] = -16777216 * w2x;
  c[6] = 16777216 * w2x;
  c[4] = -2097152 * g.w * g.w1;
  c[2] = 1048576 * g.w * g.w2;
  c[0] = -65536 * g.w3 * g.w3;
  return UnivariatePoly(std::move(c), unknown);
}

inline UnivariatePoly closed_form_G(const MotorAngles& m, const std::string& unknown = "q0") {
  return closed_form_G(g_coefficients(exact_sin_cos(m)), unknown);
}

}  // namespace spmfdp::spm
