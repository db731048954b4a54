#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "spmfdp/dixon/quadric_system.hpp"
#include "spmfdp/error.hpp"
#include "spmfdp/spm/quaternion.hpp"

namespace spmfdp::spm {

using Vec3 = std::array<Rational, 3>;
using dixon::QuadricSystem;

/// One leg's geometric condition w^T (Q nu) = c: `w` is the fixed motor axis,
/// `nu` the platform axis in the moving frame.
struct LegCondition {
  Vec3 w;
  Vec3 nu;
  Rational c;

  void validate() const {
    auto zero = [](const Vec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; };
    if (zero(w) || zero(nu)) throw Error(ErrorCode::kInvalidInput, "leg axes must be nonzero");
  }
};

/// Exact (sin, cos) pair of a motor angle.
struct SinCos {
  Rational sin;
  Rational cos;
};

/// Motor angles in radians, optionally overridden by exact sine/cosine pairs.
struct MotorAngles {
  std::array<double, 3> theta{};
  std::optional<std::array<SinCos, 3>> exact;

  static MotorAngles from_exact(const std::array<SinCos, 3>& pairs) {
    MotorAngles m;
    m.exact = pairs;
    for (std::size_t i = 0; i < 3; ++i) m.theta[i] = std::atan2(pairs[i].sin.get_d(), pairs[i].cos.get_d());
    return m;
  }

  void validate() const {
    if (!exact) {
      for (double t : theta)
        if (!std::isfinite(t)) throw Error(ErrorCode::kInvalidInput, "motor angle is not finite");
      return;
    }
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& p = (*exact)[i];
      if (p.sin * p.sin + p.cos * p.cos != 1)
        throw Error(ErrorCode::kInvalidInput, "sin^2 + cos^2 != 1 for motor " + std::to_string(i + 1));
    }
  }
};

/// Rational point on the unit circle near angle `theta`, through the
/// tangent half-angle t = tan(theta/2) rounded to a rational within `tol`:
/// sin = 2t/(1+t^2), cos = (1-t^2)/(1+t^2), so sin^2 + cos^2 = 1 exactly.
inline SinCos rationalize_angle(double theta, double tol = 1e-15) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::kInvalidInput, "motor angle is not finite");
  double wrapped = std::remainder(theta, 2 * std::numbers::pi);  // (-pi, pi]
  if (std::abs(std::abs(wrapped) - std::numbers::pi) < 1e-12) return {Rational(0), Rational(-1)};
  const Rational t = approximate_rational(std::tan(wrapped / 2), tol);
  const Rational denom = 1 + t * t;
  return {Rational(2 * t / denom), Rational((1 - t * t) / denom)};
}

/// The exact (A_i, B_i) = (sin, cos) pairs used to build the system.
inline std::array<SinCos, 3> exact_sin_cos(const MotorAngles& m) {
  m.validate();
  if (m.exact) return *m.exact;
  return {rationalize_angle(m.theta[0]), rationalize_angle(m.theta[1]), rationalize_angle(m.theta[2])};
}

inline std::array<std::string, 4> quaternion_unknowns() { return {"q0", "q1", "q2", "q3"}; }

/// f_i = w_i^T Q(q) nu_i - c_i for the three legs and f4 = |q|^2 - 1, with
/// q0 retained and q1, q2, q3 eliminated.
inline QuadricSystem build_generic_system(const std::array<LegCondition, 3>& legs) {
  const auto rot = symbolic_rotation();
  QuadricSystem sys;
  for (std::size_t i = 0; i < 3; ++i) {
    legs[i].validate();
    MultiPoly f = -MultiPoly(legs[i].c);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        const Rational weight = legs[i].w[r] * legs[i].nu[c];
        if (weight != 0) f += rot[r][c] * weight;
      }
    sys.polys[i] = std::move(f);
  }
  MultiPoly norm(-1);
  for (const auto& name : quaternion_unknowns()) norm += MultiPoly::variable(name).pow(2);
  sys.polys[3] = std::move(norm);
  sys.eliminated = {"q1", "q2", "q3"};
  sys.retained = "q0";
  return sys;
}

/// Leg data of the 3-R(RRR)R architecture: w columns (0,B1,A1), (B2,A2,0),
/// (A3,0,B3); nu columns e3, e2, e1; all constants zero.
inline std::array<LegCondition, 3> architecture_legs(const std::array<SinCos, 3>& ab) {
  const Rational zero(0), one(1);
  return {LegCondition{{zero, ab[0].cos, ab[0].sin}, {zero, zero, one}, zero},
          LegCondition{{ab[1].cos, ab[1].sin, zero}, {zero, one, zero}, zero},
          LegCondition{{ab[2].sin, zero, ab[2].cos}, {one, zero, zero}, zero}};
}

inline QuadricSystem build_3rrrr_system(const MotorAngles& m) {
  return build_generic_system(architecture_legs(exact_sin_cos(m)));
}

}  // namespace spmfdp::spm
