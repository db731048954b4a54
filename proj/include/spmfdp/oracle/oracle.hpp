#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "spmfdp/dixon/quadric_system.hpp"
#include "spmfdp/error.hpp"
#include "spmfdp/spm/quaternion.hpp"

namespace spmfdp::oracle {

using dixon::QuadricSystem;
using spm::Quat;

struct OracleConfig {
  int grid_resolution = 24;   // samples per hyperspherical angle
  int newton_iters = 50;
  double residual_tol = 1e-12;
  double dedup_tol = 1e-8;

  void validate() const {
    if (grid_resolution < 8) throw Error(ErrorCode::kInvalidInput, "grid resolution must be at least 8");
    if (newton_iters < 1) throw Error(ErrorCode::kInvalidInput, "need at least one Newton iteration");
    if (!(residual_tol > 0) || !(dedup_tol > 0)) throw Error(ErrorCode::kInvalidInput, "tolerances must be positive");
  }
};

/// f(q) = q^T H q + g^T q + c for each of the four equations, in (q0..q3).
class DenseQuadrics {
 public:
  explicit DenseQuadrics(const QuadricSystem& sys) {
    const QuadricSystem b = sys.bound();
    const std::array<std::string, 4> names{"q0", "q1", "q2", "q3"};
    for (std::size_t i = 0; i < 4; ++i) {
      h_[i].setZero();
      g_[i].setZero();
      c_[i] = 0;
      for (const auto& [m, coeff] : b.polys[i].terms()) {
        std::array<int, 4> e{};
        int deg = 0;
        for (const auto& [name, k] : m.factors()) {
          auto it = std::find(names.begin(), names.end(), name);
          if (it == names.end()) throw Error(ErrorCode::kInvalidInput, "oracle needs a system in q0..q3 only; found '" + name + "'");
          e[static_cast<std::size_t>(it - names.begin())] = static_cast<int>(k);
          deg += static_cast<int>(k);
        }
        const double v = coeff.get_d();
        if (deg > 2) throw Error(ErrorCode::kInvalidInput, "oracle needs quadrics");
        if (deg == 0) {
          c_[i] += v;
          continue;
        }
        std::vector<int> idx;
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < e[static_cast<std::size_t>(j)]; ++k) idx.push_back(j);
        if (deg == 1) {
          g_[i](idx[0]) += v;
        } else if (idx[0] == idx[1]) {
          h_[i](idx[0], idx[0]) += v;
        } else {
          h_[i](idx[0], idx[1]) += v / 2;
          h_[i](idx[1], idx[0]) += v / 2;
        }
      }
    }
  }

  Eigen::Vector4d value(const Eigen::Vector4d& q) const {
    Eigen::Vector4d f;
    for (int i = 0; i < 4; ++i) f(i) = q.dot(h_[static_cast<std::size_t>(i)] * q) + g_[static_cast<std::size_t>(i)].dot(q) + c_[static_cast<std::size_t>(i)];
    return f;
  }

  Eigen::Matrix4d jacobian(const Eigen::Vector4d& q) const {
    Eigen::Matrix4d j;
    for (int i = 0; i < 4; ++i) j.row(i) = (2 * h_[static_cast<std::size_t>(i)] * q + g_[static_cast<std::size_t>(i)]).transpose();
    return j;
  }

 private:
  std::array<Eigen::Matrix4d, 4> h_;
  std::array<Eigen::Vector4d, 4> g_;
  std::array<double, 4> c_{};
};

/// Damped Newton from one seed; returns the point and its final residual.
inline std::pair<Eigen::Vector4d, double> newton_from(const DenseQuadrics& f, Eigen::Vector4d q, int iters, double tol) {
  Eigen::Vector4d fx = f.value(q);
  double res = fx.cwiseAbs().maxCoeff();
  for (int it = 0; it < iters && res > tol * 1e-3; ++it) {
    Eigen::FullPivLU<Eigen::Matrix4d> lu(f.jacobian(q));
    if (!lu.isInvertible()) break;
    const Eigen::Vector4d step = lu.solve(fx);
    double lambda = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 30; ++halving) {
      const Eigen::Vector4d trial = q - lambda * step;
      const Eigen::Vector4d ft = f.value(trial);
      const double rt = ft.cwiseAbs().maxCoeff();
      if (std::isfinite(rt) && rt < res) {
        q = trial;
        fx = ft;
        res = rt;
        moved = true;
        break;
      }
      lambda /= 2;
    }
    if (!moved) break;
  }
  return {q, res};
}

/// All real solutions found by Newton from a hyperspherical grid of seeds
/// on the unit 3-sphere. Includes extraneous points; sorted lexicographically.
inline std::vector<Quat> oracle_solve(const QuadricSystem& sys, const OracleConfig& cfg = {}) {
  cfg.validate();
  const DenseQuadrics f(sys);
  const int n = cfg.grid_resolution;
  const double pi = std::numbers::pi;
  std::vector<Quat> out;
  for (int a = 0; a < n; ++a) {
    const double psi = pi * (a + 0.5) / n;
    for (int b = 0; b < n; ++b) {
      const double theta = pi * (b + 0.5) / n;
      for (int c = 0; c < n; ++c) {
        const double phi = 2 * pi * (c + 0.5) / n;
        const Eigen::Vector4d seed(std::cos(psi), std::sin(psi) * std::cos(theta),
                                   std::sin(psi) * std::sin(theta) * std::cos(phi),
                                   std::sin(psi) * std::sin(theta) * std::sin(phi));
        const auto [q, res] = newton_from(f, seed, cfg.newton_iters, cfg.residual_tol);
        if (!(res <= cfg.residual_tol)) continue;
        const Quat p{q(0), q(1), q(2), q(3)};
        const bool seen = std::any_of(out.begin(), out.end(), [&](const Quat& o) { return spm::max_distance(o, p) < cfg.dedup_tol; });
        if (!seen) out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Quat& x, const Quat& y) { return x.as_array() < y.as_array(); });
  return out;
}

/// f1..f4 at q, evaluated exactly.
inline std::array<Rational, 4> verify_point(const QuadricSystem& sys, const spm::Quaternion<Rational>& q) {
  const QuadricSystem b = sys.bound();
  const auto coords = q.as_array();
  std::array<Rational, 4> out;
  for (std::size_t i = 0; i < 4; ++i)
    out[i] = b.polys[i].evaluate<Rational>([&](const std::string& name) {
      if (name.size() == 2 && name[0] == 'q' && name[1] >= '0' && name[1] <= '3') return coords[static_cast<std::size_t>(name[1] - '0')];
      throw Error(ErrorCode::kInvalidInput, "unbound unknown '" + name + "'");
    });
  return out;
}

/// f1..f4 at q in double precision.
inline std::array<double, 4> verify_point(const QuadricSystem& sys, const Quat& q) {
  const QuadricSystem b = sys.bound();
  const auto coords = q.as_array();
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i)
    out[i] = b.polys[i].evaluate<double>([&](const std::string& name) {
      if (name.size() == 2 && name[0] == 'q' && name[1] >= '0' && name[1] <= '3') return coords[static_cast<std::size_t>(name[1] - '0')];
      throw Error(ErrorCode::kInvalidInput, "unbound unknown '" + name + "'");
    });
  return out;
}

inline double max_abs(const std::array<double, 4>& r) {
  return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2]), std::abs(r[3])});
}

}  // namespace spmfdp::oracle
