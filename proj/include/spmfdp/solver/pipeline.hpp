#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spmfdp/dixon/dixon.hpp"
#include "spmfdp/error.hpp"
#include "spmfdp/spm/closed_form.hpp"
#include "spmfdp/spm/quaternion.hpp"
#include "spmfdp/spm/system.hpp"
#include "spmfdp/solver/octic.hpp"
#include "spmfdp/solver/real_roots.hpp"

namespace spmfdp::solver {

using dixon::QuadricSystem;
using poly::MultiPoly;
using spm::Quat;

/// (2x - 1)^4 (2x + 1)^4 in `unknown`.
inline UnivariatePoly extraneous_factor(const std::string& unknown = "q0") {
  return UnivariatePoly({Rational(-1), Rational(0), Rational(4)}, unknown).pow(4);
}

/// Divides out (2x - 1)^4 (2x + 1)^4 exactly. The quotient of a family
/// determinant is an even octic; anything else is rejected.
inline UnivariatePoly strip_extraneous_factor(const UnivariatePoly& p) {
  UnivariatePoly g = exact_quotient(p, extraneous_factor(p.unknown()));
  if (p.degree() == 16 && (g.degree() != 8 || !g.is_even()))
    throw Error(ErrorCode::kNotDivisible, "quotient is not an even octic");
  return g;
}

struct Residuals {
  std::array<double, 4> f{};
  double max() const { return std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2]), std::abs(f[3])}); }
};

/// Numeric form of a system with everything but the four unknowns bound.
class NumericSystem {
 public:
  explicit NumericSystem(const QuadricSystem& sys) : unknowns_(sys.all_unknowns()) {
    const QuadricSystem b = sys.bound();
    if (!b.parameters.empty()) throw Error(ErrorCode::kInvalidInput, "parameter '" + b.parameters.front() + "' is not bound");
    for (std::size_t i = 0; i < 4; ++i) {
      polys_[i] = b.polys[i];
      for (std::size_t j = 0; j < 4; ++j) grads_[i][j] = differentiate(b.polys[i], unknowns_[j]);
    }
  }

  /// Coordinates are given in quaternion order (q0..q3) when the unknowns
  /// are q0..q3, otherwise in all_unknowns() order.
  Residuals residuals(const Quat& q) const {
    Residuals r;
    for (std::size_t i = 0; i < 4; ++i) r.f[i] = eval(polys_[i], q);
    return r;
  }

  /// Plain Newton steps on the square system; stops early if a step fails.
  Quat newton(Quat q, int iterations) const {
    for (int it = 0; it < iterations; ++it) {
      Eigen::Matrix4d jac;
      Eigen::Vector4d rhs;
      for (std::size_t i = 0; i < 4; ++i) {
        rhs(static_cast<Eigen::Index>(i)) = eval(polys_[i], q);
        for (std::size_t j = 0; j < 4; ++j)
          jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = eval(grads_[i][j], q);
      }
      if (rhs.cwiseAbs().maxCoeff() == 0) break;
      Eigen::FullPivLU<Eigen::Matrix4d> lu(jac);
      if (!lu.isInvertible()) break;
      const Eigen::Vector4d step = lu.solve(rhs);
      if (!step.allFinite()) break;
      q = {q.q0 - step(0), q.q1 - step(1), q.q2 - step(2), q.q3 - step(3)};
    }
    return q;
  }

  /// Newton in working precision from a double-precision solution.
  std::array<HighFloat, 4> refine(const Quat& q, int iterations = 3) const {
    const auto s = slots();
    std::array<HighFloat, 4> x;
    for (std::size_t k = 0; k < 4; ++k) x[k] = HighFloat(q.as_array()[s[k]]);
    auto at = [&](const MultiPoly& p) {
      return p.evaluate<HighFloat>([&](const std::string& name) {
        for (std::size_t k = 0; k < 4; ++k)
          if (unknowns_[k] == name) return x[k];
        throw Error(ErrorCode::kInvalidInput, "unbound unknown '" + name + "'");
      });
    };
    for (int it = 0; it < iterations; ++it) {
      std::array<std::array<HighFloat, 5>, 4> a;
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) a[i][j] = at(grads_[i][j]);
        a[i][4] = at(polys_[i]);
      }
      // Gaussian elimination with partial pivoting
      bool singular = false;
      for (std::size_t c = 0; c < 4 && !singular; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < 4; ++r)
          if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
        if (a[piv][c] == 0) {
          singular = true;
          break;
        }
        std::swap(a[c], a[piv]);
        for (std::size_t r = c + 1; r < 4; ++r) {
          const HighFloat f = a[r][c] / a[c][c];
          for (std::size_t k = c; k < 5; ++k) a[r][k] -= f * a[c][k];
        }
      }
      if (singular) break;
      std::array<HighFloat, 4> step;
      for (std::size_t r = 4; r-- > 0;) {
        HighFloat v = a[r][4];
        for (std::size_t k = r + 1; k < 4; ++k) v -= a[r][k] * step[k];
        step[r] = v / a[r][r];
      }
      for (std::size_t k = 0; k < 4; ++k) x[k] -= step[k];
    }
    std::array<HighFloat, 4> out;
    for (std::size_t k = 0; k < 4; ++k) out[s[k]] = x[k];
    return out;
  }

  const std::array<std::string, 4>& unknowns() const { return unknowns_; }

  /// Index into (q0, q1, q2, q3) of each entry of all_unknowns().
  std::array<std::size_t, 4> slots() const {
    std::array<std::size_t, 4> s{0, 1, 2, 3};
    if (is_quaternion()) {
      for (std::size_t k = 0; k < 4; ++k) s[k] = static_cast<std::size_t>(unknowns_[k][1] - '0');
    }
    return s;
  }

  bool is_quaternion() const {
    std::array<std::string, 4> sorted = unknowns_;
    std::sort(sorted.begin(), sorted.end());
    return sorted == std::array<std::string, 4>{"q0", "q1", "q2", "q3"};
  }

 private:
  static MultiPoly differentiate(const MultiPoly& p, const std::string& x) {
    MultiPoly out;
    for (const auto& [m, c] : p.terms()) {
      const auto e = m.exponent(x);
      if (e == 0) continue;
      poly::Monomial rest;
      for (const auto& [name, k] : m.factors()) rest.multiply_by(name, name == x ? k - 1 : k);
      out.add_term(rest, c * static_cast<long>(e));
    }
    return out;
  }

  double eval(const MultiPoly& p, const Quat& q) const {
    const auto s = slots();
    const std::array<double, 4> coords = q.as_array();
    return p.evaluate<double>([&](const std::string& name) {
      for (std::size_t k = 0; k < 4; ++k)
        if (unknowns_[k] == name) return coords[s[k]];
      throw Error(ErrorCode::kInvalidInput, "unbound unknown '" + name + "'");
    });
  }

  std::array<std::string, 4> unknowns_;
  std::array<MultiPoly, 4> polys_;
  std::array<std::array<MultiPoly, 4>, 4> grads_;
};

struct Solution {
  Quat q;
  std::optional<std::array<HighFloat, 4>> precise;   // same point in working precision
  Residuals residuals;
  bool extraneous = false;
  unsigned multiplicity = 1;   // > 1 when the generating root was repeated
  std::size_t orbit = 0;       // index of the orbit this point belongs to
  std::size_t rotation = 0;    // index of its distinct rotation
};

enum class SolveStatus { kOk, kNoRealSolutions };

struct Diagnostics {
  int determinant_degree = -1;
  std::size_t real_roots = 0;
  unsigned complex_t_roots = 0;
  unsigned negative_t_roots = 0;
  std::size_t extraneous_removed = 0;
  std::size_t kernel_fallbacks = 0;
  std::size_t rejected_candidates = 0;
  std::size_t distinct_rotations = 0;
  bool repeated_roots = false;
  bool resolvent_rational = false;
  std::optional<bool> closed_form_agrees;
};

struct SolutionSet {
  std::vector<Solution> solutions;
  std::vector<std::size_t> orbit_representatives;
  SolveStatus status = SolveStatus::kNoRealSolutions;
  Diagnostics diagnostics;

  std::size_t extraneous_removed() const { return diagnostics.extraneous_removed; }
};

struct AssemblyOptions {
  double residual_tol = 1e-9;
  double extraneous_tol = 1e-6;
  double dedup_tol = 1e-9;
  int newton_steps = 5;
  bool include_extraneous = false;
  bool orbit_completion = true;
};

/// One retained-unknown root with the multiplicity it carries.
struct RetainedRoot {
  double value;
  unsigned multiplicity = 1;
};

namespace detail {

inline bool contains(const std::vector<Solution>& set, const Quat& q, double tol) {
  return std::any_of(set.begin(), set.end(), [&](const Solution& s) { return spm::max_distance(s.q, q) < tol; });
}

/// Real roots of the determinant with `name` retained, cached per unknown.
class CoordinateRoots {
 public:
  explicit CoordinateRoots(const QuadricSystem& sys) : sys_(sys) {}
  const std::vector<double>& operator()(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    std::vector<double> values;
    try {
      for (const auto& r : real_roots(dixon::dixon_determinant(sys_.retaining(name)))) values.push_back(r.convert_to<double>());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateSystem) throw;
    }
    return cache_.emplace(name, std::move(values)).first->second;
  }

 private:
  QuadricSystem sys_;
  std::map<std::string, std::vector<double>> cache_;
};

}  // namespace detail

/// Turns retained-unknown roots into verified solutions: kernel read-out of
/// the Dixon matrix, a combinatorial fallback over per-coordinate roots,
/// Newton polishing, extraneous filtering, orbit completion and dedup.
inline SolutionSet assemble_solutions(const QuadricSystem& sys, const std::vector<RetainedRoot>& roots,
                                      const AssemblyOptions& opts = {}) {
  const QuadricSystem concrete = sys.bound();
  const NumericSystem numeric(concrete);
  const auto slots = numeric.slots();
  const auto unknowns = numeric.unknowns();
  const dixon::DixonMatrix dix = dixon::build_dixon_matrix(concrete);
  detail::CoordinateRoots coord_roots(concrete);

  SolutionSet out;
  out.diagnostics.real_roots = roots.size();
  std::vector<Solution> found;
  auto to_quat = [&](const std::array<double, 4>& v) {
    std::array<double, 4> q{};
    for (std::size_t k = 0; k < 4; ++k) q[slots[k]] = v[k];
    return Quat::from_array(q);
  };
  auto accept = [&](Quat q, unsigned multiplicity) {
    q = numeric.newton(q, opts.newton_steps);
    const Residuals r = numeric.residuals(q);
    if (!(r.max() <= opts.residual_tol)) {
      ++out.diagnostics.rejected_candidates;
      return;
    }
    if (detail::contains(found, q, opts.dedup_tol)) return;
    Solution s;
    s.q = q;
    s.residuals = r;
    s.multiplicity = multiplicity;
    s.extraneous = numeric.is_quaternion() && spm::distance_to_extraneous(q) < opts.extraneous_tol;
    found.push_back(s);
  };

  for (const auto& root : roots) {
    std::optional<std::array<double, 3>> xyz;
    bool fallback = false;
    try {
      xyz = dixon::kernel_coordinates(dix, root.value);
      fallback = !xyz;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAmbiguousKernel) throw;
      fallback = true;
    }
    if (!fallback) {
      const Quat q = to_quat({root.value, (*xyz)[0], (*xyz)[1], (*xyz)[2]});
      const std::size_t before = found.size();
      accept(q, root.multiplicity);
      if (found.size() > before || detail::contains(found, numeric.newton(q, opts.newton_steps), opts.dedup_tol)) continue;
      fallback = true;
    }
    ++out.diagnostics.kernel_fallbacks;
    const auto& r1 = coord_roots(unknowns[1]);
    const auto& r2 = coord_roots(unknowns[2]);
    const auto& r3 = coord_roots(unknowns[3]);
    for (double a : r1)
      for (double b : r2)
        for (double c : r3) {
          const Quat q = to_quat({root.value, a, b, c});
          if (numeric.residuals(q).max() <= opts.residual_tol) accept(q, root.multiplicity);
        }
  }

  // orbit completion keeps only members that verify on their own
  if (opts.orbit_completion && numeric.is_quaternion()) {
    const std::size_t base = found.size();
    for (std::size_t i = 0; i < base; ++i) {
      for (const Quat& member : spm::symmetry_orbit(found[i].q)) {
        if (detail::contains(found, member, opts.dedup_tol)) continue;
        if (numeric.residuals(member).max() > opts.residual_tol) continue;
        accept(member, found[i].multiplicity);
      }
    }
  }

  for (const auto& s : found) {
    if (s.extraneous && !opts.include_extraneous) {
      ++out.diagnostics.extraneous_removed;
      continue;
    }
    if (s.multiplicity > 1) out.diagnostics.repeated_roots = true;
    out.solutions.push_back(s);
    if (s.multiplicity == 1) {
      auto precise = numeric.refine(s.q);
      bool close = true;
      for (std::size_t k = 0; k < 4; ++k) close = close && abs(precise[k] - HighFloat(s.q.as_array()[k])) < 1e-9;
      if (close) {
        Solution& back = out.solutions.back();
        back.precise = precise;
        back.q = {precise[0].convert_to<double>(), precise[1].convert_to<double>(), precise[2].convert_to<double>(),
                  precise[3].convert_to<double>()};
        back.residuals = numeric.residuals(back.q);
      }
    }
  }

  // order by orbit: each representative is the remaining point with the
  // smallest non-negative first coordinate, followed by its orbit members
  std::vector<Solution> pending = std::move(out.solutions);
  out.solutions.clear();
  while (!pending.empty()) {
    auto rep = std::min_element(pending.begin(), pending.end(), [](const Solution& a, const Solution& b) {
      const bool an = a.q.q0 < 0, bn = b.q.q0 < 0;
      if (an != bn) return bn;
      return std::abs(a.q.q0) < std::abs(b.q.q0);
    });
    const Quat seed = rep->q;
    const std::size_t orbit = out.orbit_representatives.size();
    out.orbit_representatives.push_back(out.solutions.size());
    const auto members = numeric.is_quaternion() ? spm::symmetry_orbit(seed) : std::array<Quat, 8>{seed, seed, seed, seed, seed, seed, seed, seed};
    for (const Quat& m : members) {
      auto it = std::find_if(pending.begin(), pending.end(),
                             [&](const Solution& s) { return spm::max_distance(s.q, m) < opts.dedup_tol * 10; });
      if (it == pending.end()) continue;
      it->orbit = orbit;
      out.solutions.push_back(*it);
      pending.erase(it);
    }
  }

  // distinct rotations: q and -q give the same matrix
  std::vector<Quat> classes;
  for (auto& s : out.solutions) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const Quat& c) {
      return spm::max_distance(c, s.q) < opts.dedup_tol * 10 || spm::max_distance(c, -s.q) < opts.dedup_tol * 10;
    });
    s.rotation = static_cast<std::size_t>(it - classes.begin());
    if (it == classes.end()) classes.push_back(s.q);
  }
  out.diagnostics.distinct_rotations = classes.size();
  out.status = out.solutions.empty() ? SolveStatus::kNoRealSolutions : SolveStatus::kOk;
  return out;
}

/// Any system with a retained unknown: exact determinant, Sturm-isolated
/// real roots, then assembly.
inline SolutionSet solve_system(const QuadricSystem& sys, const AssemblyOptions& opts = {}) {
  const UnivariatePoly det = dixon::dixon_determinant(sys);
  std::vector<RetainedRoot> roots;
  for (const auto& r : real_roots(det)) roots.push_back({r.convert_to<double>(), 1});
  SolutionSet set = assemble_solutions(sys, roots, opts);
  set.diagnostics.determinant_degree = det.degree();
  return set;
}

/// Full result for one set of motor angles.
struct FdpResult {
  std::array<spm::SinCos, 3> parameters;
  UnivariatePoly determinant;
  UnivariatePoly g;                 // determinant with the extraneous factor removed
  std::vector<RadicalRoot> roots;   // real roots of g
  SolutionSet solutions;
};

/// The case-study pipeline: system, determinant, stripped octic, radical
/// roots, assembly. The octic is cross-checked against the closed form.
inline FdpResult solve_fdp(const spm::MotorAngles& m, const AssemblyOptions& opts = {}) {
  FdpResult out;
  out.parameters = spm::exact_sin_cos(m);
  const QuadricSystem sys = spm::build_3rrrr_system(spm::MotorAngles::from_exact(out.parameters));
  out.determinant = dixon::dixon_determinant(sys);
  if (out.determinant.degree() != 16)
    throw Error(ErrorCode::kDegenerateSystem,
                "determinant has degree " + std::to_string(out.determinant.degree()) + ", expected 16");
  out.g = strip_extraneous_factor(out.determinant);
  const UnivariatePoly closed = spm::closed_form_G(spm::g_coefficients(out.parameters));
  if (closed.is_zero() || out.g.monic() != closed.monic())
    throw Error(ErrorCode::kCrossCheckMismatch, "determinant-derived G disagrees with the closed form");

  const OcticRoots octic = solve_even_octic(out.g);
  out.roots = octic.real;
  std::vector<RetainedRoot> retained;
  for (const auto& r : out.roots) retained.push_back({r.to_double(), r.multiplicity});
  AssemblyOptions inner = opts;
  inner.include_extraneous = false;
  out.solutions = assemble_solutions(sys, retained, inner);
  out.solutions.diagnostics.determinant_degree = out.determinant.degree();
  out.solutions.diagnostics.complex_t_roots = octic.complex_t_roots;
  out.solutions.diagnostics.negative_t_roots = octic.negative_t_roots;
  out.solutions.diagnostics.resolvent_rational = octic.resolvent_rational;
  out.solutions.diagnostics.closed_form_agrees = true;
  if (opts.include_extraneous) {
    const NumericSystem numeric(sys);
    const std::size_t rot0 = out.solutions.diagnostics.distinct_rotations;
    std::size_t k = 0;
    for (const auto& rho : spm::extraneous_set()) {
      Solution s;
      s.rotation = rot0 + (k++ % 4);
      s.q = spm::to_double(rho);
      s.precise = std::array<HighFloat, 4>{HighFloat(s.q.q0), HighFloat(s.q.q1), HighFloat(s.q.q2), HighFloat(s.q.q3)};
      s.residuals = numeric.residuals(s.q);
      s.extraneous = true;
      s.orbit = out.solutions.orbit_representatives.size();
      out.solutions.solutions.push_back(s);
    }
    out.solutions.orbit_representatives.push_back(out.solutions.solutions.size() - 8);
    out.solutions.diagnostics.distinct_rotations += 4;
    out.solutions.status = SolveStatus::kOk;
  }
  return out;
}

}  // namespace spmfdp::solver
