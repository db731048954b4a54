#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "spmfdp/error.hpp"
#include "spmfdp/poly/multipoly.hpp"

namespace spmfdp::spm {

using poly::MultiPoly;

/// q0 + q1 e1 + q2 e2 + q3 e3. T is double for numeric work or Rational
/// for exact checks.
template <class T>
struct Quaternion {
  T q0{}, q1{}, q2{}, q3{};

  std::array<T, 4> as_array() const { return {q0, q1, q2, q3}; }
  static Quaternion from_array(const std::array<T, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

  T norm_squared() const { return q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3; }
  Quaternion operator-() const { return {-q0, -q1, -q2, -q3}; }
  Quaternion conjugate() const { return {q0, -q1, -q2, -q3}; }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

using Quat = Quaternion<double>;

/// Max-norm distance between two quaternion 4-tuples.
inline double max_distance(const Quat& a, const Quat& b) {
  return std::max({std::abs(a.q0 - b.q0), std::abs(a.q1 - b.q1), std::abs(a.q2 - b.q2), std::abs(a.q3 - b.q3)});
}

using RotationMatrix = Eigen::Matrix3d;

/// Orientation matrix with entries quadratic in the quaternion coordinates.
template <class T>
std::array<std::array<T, 3>, 3> rotation_entries(const Quaternion<T>& q) {
  const T two = T(2);
  return {{{q.q0 * q.q0 + q.q1 * q.q1 - q.q2 * q.q2 - q.q3 * q.q3, two * (q.q1 * q.q2 - q.q0 * q.q3),
            two * (q.q0 * q.q2 + q.q1 * q.q3)},
           {two * (q.q1 * q.q2 + q.q0 * q.q3), q.q0 * q.q0 - q.q1 * q.q1 + q.q2 * q.q2 - q.q3 * q.q3,
            two * (q.q2 * q.q3 - q.q0 * q.q1)},
           {two * (q.q1 * q.q3 - q.q0 * q.q2), two * (q.q0 * q.q1 + q.q2 * q.q3),
            q.q0 * q.q0 - q.q1 * q.q1 - q.q2 * q.q2 + q.q3 * q.q3}}};
}

/// The same matrix with symbolic entries in the unknowns q0..q3.
inline std::array<std::array<MultiPoly, 3>, 3> symbolic_rotation() {
  return rotation_entries(Quaternion<MultiPoly>{MultiPoly::variable("q0"), MultiPoly::variable("q1"),
                                                MultiPoly::variable("q2"), MultiPoly::variable("q3")});
}

/// Rotation for a unit quaternion. Inputs whose norm is off by at most 1e-6
/// are normalized first; anything further off raises NotUnit.
inline RotationMatrix quaternion_to_rotation(Quat q) {
  const double norm = std::sqrt(q.norm_squared());
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-6)
    throw Error(ErrorCode::kNotUnit, "quaternion norm " + std::to_string(norm) + " is not 1");
  q = {q.q0 / norm, q.q1 / norm, q.q2 / norm, q.q3 / norm};
  const auto e = rotation_entries(q);
  RotationMatrix r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return r;
}

/// sigma1..sigma4 followed by their negations:
///   sigma1 = (s0, s1, s2, s3)    sigma2 = (s1, -s0, -s3, s2)
///   sigma3 = (s2, s3, -s0, -s1)  sigma4 = (s3, -s2, s1, -s0)
template <class T>
std::array<Quaternion<T>, 8> symmetry_orbit(const Quaternion<T>& s) {
  const Quaternion<T> s1 = s;
  const Quaternion<T> s2{s.q1, -s.q0, -s.q3, s.q2};
  const Quaternion<T> s3{s.q2, s.q3, -s.q0, -s.q1};
  const Quaternion<T> s4{s.q3, -s.q2, s.q1, -s.q0};
  return {s1, s2, s3, s4, -s1, -s2, -s3, -s4};
}

/// The eight half-coordinate points +-rho_k shared by every member of the
/// 3-R(RRR)R family regardless of the motor angles.
inline std::array<Quaternion<Rational>, 8> extraneous_set() {
  const Rational h(1, 2);
  const Quaternion<Rational> r1{h, h, h, h}, r2{h, -h, -h, h}, r3{h, h, -h, -h}, r4{h, -h, h, -h};
  return {r1, r2, r3, r4, -r1, -r2, -r3, -r4};
}

inline Quat to_double(const Quaternion<Rational>& q) { return {q.q0.get_d(), q.q1.get_d(), q.q2.get_d(), q.q3.get_d()}; }

/// Distance from `q` to the nearest extraneous point.
inline double distance_to_extraneous(const Quat& q) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : extraneous_set()) best = std::min(best, max_distance(q, to_double(r)));
  return best;
}

}  // namespace spmfdp::spm
