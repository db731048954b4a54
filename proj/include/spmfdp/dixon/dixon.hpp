#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spmfdp/dixon/quadric_system.hpp"
#include "spmfdp/error.hpp"
#include "spmfdp/poly/matrix.hpp"
#include "spmfdp/poly/univariate.hpp"

namespace spmfdp::dixon {

using poly::Monomial;
using poly::PolyMatrix;
using poly::UnivariatePoly;

/// The twenty monomials of degree <= 3 in (x1, x2, x3), in the order
/// x1^3, x1^2x2, x1^2x3, x1x2^2, x1x2x3, x1x3^2, x2^3, x2^2x3, x2x3^2, x3^3,
/// x1^2, x1x2, x1x3, x2^2, x2x3, x3^2, x1, x2, x3, 1.
inline std::array<Monomial, 20> cubic_basis(const std::array<std::string, 3>& x) {
  static constexpr std::array<std::array<unsigned, 3>, 20> kExponents{{
      {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1}, {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3},
      {2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2},
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
      {0, 0, 0},
  }};
  std::array<Monomial, 20> out;
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t v = 0; v < 3; ++v) out[i].multiply_by(x[v], kExponents[i][v]);
  return out;
}

/// Index of `m` in cubic_basis(x), or -1.
inline int cubic_index(const Monomial& m, const std::array<std::string, 3>& x) {
  const auto basis = cubic_basis(x);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == m) return static_cast<int>(i);
  return -1;
}

namespace detail {

inline void check_fresh_names(const QuadricSystem& sys, const std::array<std::string, 3>& aux) {
  for (const auto& y : aux) {
    if (std::find(sys.eliminated.begin(), sys.eliminated.end(), y) != sys.eliminated.end() ||
        (sys.retained && *sys.retained == y) ||
        std::find(sys.parameters.begin(), sys.parameters.end(), y) != sys.parameters.end())
      throw Error(ErrorCode::kInvalidInput, "auxiliary unknown '" + y + "' clashes with a system unknown");
    for (const auto& p : sys.polys)
      if (p.degree_in(y) > 0) throw Error(ErrorCode::kInvalidInput, "auxiliary unknown '" + y + "' occurs in the system");
  }
}

}  // namespace detail

/// 4x4 matrix whose row i holds the three divided differences of f_i, taken
/// by switching x1, x2, x3 to the auxiliary unknowns one at a time, followed
/// by f_i with all three switched. Sum_j (x_j - y_j) U[i][j] + U[i][3] = f_i.
inline PolyMatrix build_U(const QuadricSystem& sys,
                          const std::array<std::string, 3>& aux = {"y1", "y2", "y3"}) {
  sys.validate();
  detail::check_fresh_names(sys, aux);
  PolyMatrix u(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    // stage[k] = f_i with the first k eliminated unknowns switched to aux
    std::array<MultiPoly, 4> stage;
    std::map<std::string, MultiPoly> subs;
    stage[0] = sys.polys[i];
    for (std::size_t k = 0; k < 3; ++k) {
      subs[sys.eliminated[k]] = MultiPoly::variable(aux[k]);
      stage[k + 1] = sys.polys[i].substitute(subs);
    }
    for (std::size_t j = 0; j < 3; ++j) {
      const MultiPoly gap = MultiPoly::variable(sys.eliminated[j]) - MultiPoly::variable(aux[j]);
      u(i, j) = poly::exact_quotient(stage[j] - stage[j + 1], gap);
    }
    u(i, 3) = stage[3];
  }
  return u;
}

/// Coefficients of 1, a, b, c in det U (auxiliary unknowns named a, b, c).
struct PsiSet {
  MultiPoly psi000, psi100, psi010, psi001;

  std::array<const MultiPoly*, 4> as_array() const { return {&psi000, &psi100, &psi010, &psi001}; }
};

/// det U expanded modulo (a^2, b^2, c^2, ab, ac, bc); only the constant and
/// first-order coefficients in the auxiliary unknowns survive.
inline PsiSet extract_psi(const QuadricSystem& sys) {
  const std::array<std::string, 3> aux{"a", "b", "c"};
  const PolyMatrix u = build_U(sys, aux);
  const auto rule = poly::TruncationRule::total_degree_at_least({aux.begin(), aux.end()}, 2);
  const MultiPoly det = poly::determinant(u, rule);
  auto by_aux = det.coefficients_in(aux);
  auto pick = [&](const Monomial& m) {
    auto it = by_aux.find(m);
    return it == by_aux.end() ? MultiPoly() : it->second;
  };
  return {pick(Monomial{}), pick(Monomial::variable("a")), pick(Monomial::variable("b")),
          pick(Monomial::variable("c"))};
}

/// 20x20 coefficient matrix of the cubics g1..g20 against cubic_basis.
struct DixonMatrix {
  PolyMatrix entries;
  std::array<std::string, 20> provenance;
  std::array<std::string, 3> eliminated;
  std::optional<std::string> retained;

  /// g_row as a polynomial, i.e. row `row` dotted with the monomial basis.
  MultiPoly row_polynomial(std::size_t row) const {
    const auto basis = cubic_basis(eliminated);
    MultiPoly g;
    for (std::size_t c = 0; c < 20; ++c) g += entries(row, c) * MultiPoly::term(basis[c], 1);
    return g;
  }
};

namespace detail {

inline std::vector<MultiPoly> coefficient_row(const MultiPoly& g, const std::array<std::string, 3>& x,
                                              const std::string& label) {
  std::vector<MultiPoly> row(20);
  for (auto& [m, coeff] : g.coefficients_in(x)) {
    const int idx = cubic_index(m, x);
    if (idx < 0) throw Error(ErrorCode::kInvalidInput, label + " is not a cubic in the eliminated unknowns");
    row[static_cast<std::size_t>(idx)] = coeff;
  }
  return row;
}

}  // namespace detail

inline DixonMatrix build_dixon_matrix(const QuadricSystem& sys) {
  const PsiSet psi = extract_psi(sys);
  DixonMatrix d{PolyMatrix(20, 20), {}, sys.eliminated, sys.retained};
  std::size_t row = 0;
  auto put = [&](const MultiPoly& g, std::string label) {
    const auto coeffs = detail::coefficient_row(g, sys.eliminated, label);
    for (std::size_t c = 0; c < 20; ++c) d.entries(row, c) = coeffs[c];
    d.provenance[row] = std::move(label);
    ++row;
  };
  for (std::size_t i = 0; i < 4; ++i) put(sys.polys[i], "f" + std::to_string(i + 1));
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 4; ++i)
      put(MultiPoly::variable(sys.eliminated[j]) * sys.polys[i], sys.eliminated[j] + "*f" + std::to_string(i + 1));
  put(psi.psi000, "psi000");
  put(psi.psi100, "psi100");
  put(psi.psi010, "psi010");
  put(psi.psi001, "psi001");
  return d;
}

/// Determinant of a Dixon matrix whose entries are univariate in the
/// retained unknown: exact Bareiss determinants at degree-bound + 1 integer
/// nodes, then exact interpolation.
inline UnivariatePoly dixon_determinant_of(const DixonMatrix& d) {
  if (!d.retained) throw Error(ErrorCode::kInvalidInput, "Dixon determinant needs a retained unknown");
  const std::string& r = *d.retained;
  std::vector<UnivariatePoly> cells;
  cells.reserve(400);
  std::size_t degree_bound = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    int row_max = 0;
    for (std::size_t j = 0; j < 20; ++j) {
      cells.push_back(UnivariatePoly::from_multipoly(d.entries(i, j), r));
      row_max = std::max(row_max, cells.back().degree());
    }
    degree_bound += static_cast<std::size_t>(row_max);
  }
  std::vector<Rational> xs, ys;
  std::vector<Rational> numeric(400);
  for (std::size_t k = 0; k <= degree_bound; ++k) {
    // nodes 0, 1, -1, 2, -2, ...
    const long node = (k % 2 == 1) ? static_cast<long>((k + 1) / 2) : -static_cast<long>(k / 2);
    const Rational x(node);
    for (std::size_t c = 0; c < 400; ++c) numeric[c] = cells[c].evaluate(x);
    xs.push_back(x);
    ys.push_back(poly::rational_determinant(numeric, 20));
  }
  UnivariatePoly det = poly::interpolate(xs, ys, r);
  if (det.is_zero())
    throw Error(ErrorCode::kDegenerateSystem, "the Dixon determinant vanishes identically for retained " + r);
  return det;
}

/// Univariate Dixon determinant in the retained unknown. Parameters must be
/// bound to exact values.
inline UnivariatePoly dixon_determinant(const QuadricSystem& sys) {
  if (!sys.retained) throw Error(ErrorCode::kInvalidInput, "Dixon determinant needs a retained unknown");
  const QuadricSystem concrete = sys.bound();
  if (!concrete.parameters.empty())
    throw Error(ErrorCode::kInvalidInput, "parameter '" + concrete.parameters.front() + "' is not bound");
  return dixon_determinant_of(build_dixon_matrix(concrete));
}

/// Numeric Dixon matrix with the retained unknown (if any) set to `value`,
/// each row scaled to unit Euclidean norm. Zero rows stay zero.
inline Eigen::MatrixXd numeric_dixon(const DixonMatrix& d, std::optional<double> value) {
  Eigen::MatrixXd m(20, 20);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          d.entries(i, j).evaluate<double>([&](const std::string& name) {
            if (d.retained && name == *d.retained && value) return *value;
            throw Error(ErrorCode::kInvalidInput, "unbound unknown '" + name + "' in numeric Dixon matrix");
          });
    }
  for (Eigen::Index i = 0; i < 20; ++i) {
    const double norm = m.row(i).norm();
    if (norm > 0) m.row(i) /= norm;
  }
  return m;
}

struct KernelOptions {
  double singular_tol = 1e-8;   // relative to the largest singular value
  double infinity_tol = 1e-8;   // |kernel entry for monomial 1|, unit kernel vector
};

/// Reads (x1, x2, x3) off the kernel of the numeric Dixon matrix. Returns
/// nothing when the matrix is nonsingular or the kernel vector sits at
/// infinity; throws AmbiguousKernel when the kernel is not one-dimensional.
inline std::optional<std::array<double, 3>> kernel_coordinates(const DixonMatrix& d, std::optional<double> value,
                                                               const KernelOptions& opts = {}) {
  const Eigen::MatrixXd m = numeric_dixon(d, value);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  if (largest == 0) throw Error(ErrorCode::kAmbiguousKernel, "numeric Dixon matrix is zero");
  int kernel_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) / largest < opts.singular_tol) ++kernel_dim;
  if (kernel_dim == 0) return std::nullopt;
  if (kernel_dim > 1)
    throw Error(ErrorCode::kAmbiguousKernel, "kernel dimension " + std::to_string(kernel_dim));
  const Eigen::VectorXd v = svd.matrixV().col(19);
  if (std::abs(v(19)) < opts.infinity_tol) return std::nullopt;
  return std::array<double, 3>{v(16) / v(19), v(17) / v(19), v(18) / v(19)};
}

/// Singular values (descending) of the row-normalized numeric matrix.
inline Eigen::VectorXd dixon_singular_values(const DixonMatrix& d, std::optional<double> value) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(numeric_dixon(d, value));
  return svd.singularValues();
}

}  // namespace spmfdp::dixon
