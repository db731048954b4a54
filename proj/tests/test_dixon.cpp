#include <gtest/gtest.h>

#include "spmfdp/dixon/dixon.hpp"
#include "spmfdp/solver/pipeline.hpp"
#include "spmfdp/spm/system.hpp"
#include "support.hpp"

using namespace spmfdp;
using namespace spmfdp::dixon;
using poly::Monomial;
using poly::MultiPoly;
using poly::parse_poly;
using testing_support::motor_draw;
using testing_support::worked_motors;
using testing_support::planted_system;
using testing_support::small_rational;

namespace {

QuadricSystem worked_system() { return spm::build_3rrrr_system(spm::MotorAngles::from_exact(worked_motors())); }

Rational exact_eval(const MultiPoly& p, const std::map<std::string, Rational>& at) {
  return p.evaluate<Rational>([&](const std::string& n) { return at.at(n); });
}

double float_eval(const MultiPoly& p, const std::map<std::string, double>& at) {
  return p.evaluate<double>([&](const std::string& n) { return at.at(n); });
}

QuadricSystem sphere_system() {
  QuadricSystem sys;
  sys.polys = {parse_poly("x1^2 + x2^2 + x3^2 - 1"), parse_poly("x1 - x2"), parse_poly("x2 - x3"), parse_poly("7")};
  sys.eliminated = {"x1", "x2", "x3"};
  return sys;
}

UnivariatePoly monic(const UnivariatePoly& p) { return p.monic(); }

}  // namespace

TEST(CubicBasis, OrderAndIndex) {
  const std::array<std::string, 3> x{"x1", "x2", "x3"};
  const auto basis = cubic_basis(x);
  EXPECT_EQ(basis[0].to_string(), "x1^3");
  EXPECT_EQ(basis[9].to_string(), "x3^3");
  EXPECT_EQ(basis[15].to_string(), "x3^2");
  EXPECT_TRUE(basis[19].is_one());
  EXPECT_EQ(cubic_index(Monomial::variable("x2"), x), 17);
  EXPECT_EQ(cubic_index(Monomial::variable("x1", 4), x), -1);
}

TEST(QuadricSystemValidation, RejectsBadShapes) {
  QuadricSystem sys = sphere_system();
  EXPECT_NO_THROW(sys.validate());
  sys.polys[1] = parse_poly("x1^3");
  EXPECT_THROW(sys.validate(), Error);
  sys = sphere_system();
  sys.eliminated = {"x1", "x1", "x3"};
  EXPECT_THROW(sys.validate(), Error);
  sys = sphere_system();
  sys.polys[2] = parse_poly("x1 - z");
  EXPECT_THROW(sys.validate(), Error);
  sys.parameters = {"z"};
  EXPECT_NO_THROW(sys.validate());
}

TEST(BuildU, SphereRow) {
  const PolyMatrix u = build_U(sphere_system());
  EXPECT_EQ(u(0, 0), parse_poly("x1 + y1"));
  EXPECT_EQ(u(0, 1), parse_poly("x2 + y2"));
  EXPECT_EQ(u(0, 2), parse_poly("x3 + y3"));
  EXPECT_EQ(u(0, 3), parse_poly("y1^2 + y2^2 + y3^2 - 1"));
}

TEST(BuildU, ConstantRow) {
  const PolyMatrix u = build_U(sphere_system());
  EXPECT_TRUE(u(3, 0).is_zero());
  EXPECT_TRUE(u(3, 1).is_zero());
  EXPECT_TRUE(u(3, 2).is_zero());
  EXPECT_EQ(u(3, 3), MultiPoly(7));
}

TEST(BuildU, AuxiliaryNamesMustBeFresh) {
  QuadricSystem sys = sphere_system();
  sys.polys[3] = parse_poly("y1");
  sys.parameters = {"y1"};
  EXPECT_THROW(build_U(sys), Error);
}

TEST(BuildU, ReconstructionIdentityAtRandomPoints) {
  const QuadricSystem sys = worked_system();
  const PolyMatrix u = build_U(sys);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::map<std::string, Rational> at;
    for (const char* n : {"q0", "q1", "q2", "q3", "y1", "y2", "y3"}) at[n] = small_rational(rng);
    for (std::size_t i = 0; i < 4; ++i) {
      Rational lhs = exact_eval(u(i, 3), at);
      for (std::size_t j = 0; j < 3; ++j)
        lhs += (at[sys.eliminated[j]] - at["y" + std::to_string(j + 1)]) * exact_eval(u(i, j), at);
      ASSERT_EQ(lhs, exact_eval(sys.polys[i], at));
    }
  }
}

TEST(ExtractPsi, DegreeBound) {
  const PsiSet psi = extract_psi(worked_system());
  for (const MultiPoly* p : psi.as_array()) {
    EXPECT_FALSE(p->is_zero());
    EXPECT_LE(p->degree_in(std::vector<std::string>{"q1", "q2", "q3"}), 3);
    EXPECT_EQ(p->degree_in(std::vector<std::string>{"a", "b", "c"}), 0);
  }
}

TEST(ExtractPsi, VanishesAtWorkedSolution) {
  const PsiSet psi = extract_psi(worked_system());
  const spm::Quat s = testing_support::worked_solution();
  const std::map<std::string, double> at{{"q0", s.q0}, {"q1", s.q1}, {"q2", s.q2}, {"q3", s.q3}};
  for (const MultiPoly* p : psi.as_array()) EXPECT_NEAR(float_eval(*p, at), 0.0, 1e-10);
}

TEST(ExtractPsiProperty, VanishesExactlyAtPlantedRoot) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Rational> root;
    const QuadricSystem sys = planted_system(rng, root);
    const std::map<std::string, Rational> at{{"q1", root[0]}, {"q2", root[1]}, {"q3", root[2]}};
    const PsiSet psi = extract_psi(sys);
    for (const MultiPoly* p : psi.as_array()) ASSERT_EQ(exact_eval(*p, at), 0);
  }
}

TEST(DixonMatrix, ReassemblesTheTwentyCubics) {
  const QuadricSystem sys = worked_system();
  const DixonMatrix d = build_dixon_matrix(sys);
  const PsiSet psi = extract_psi(sys);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(d.row_polynomial(i), sys.polys[i]);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 4; ++i)
      EXPECT_EQ(d.row_polynomial(4 + 4 * j + i), MultiPoly::variable(sys.eliminated[j]) * sys.polys[i]);
  EXPECT_EQ(d.row_polynomial(16), psi.psi000);
  EXPECT_EQ(d.row_polynomial(17), psi.psi100);
  EXPECT_EQ(d.row_polynomial(18), psi.psi010);
  EXPECT_EQ(d.row_polynomial(19), psi.psi001);
  EXPECT_EQ(d.provenance[0], "f1");
  EXPECT_EQ(d.provenance[19], "psi001");
}

TEST(DixonMatrix, QuadricRowsHaveNoCubicPart) {
  const DixonMatrix d = build_dixon_matrix(worked_system());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t c = 0; c < 10; ++c) EXPECT_TRUE(d.entries(i, c).is_zero());
}

TEST(DixonMatrixProperty, AnnihilatesMonomialVectorAtPlantedRoot) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> root;
    const QuadricSystem sys = planted_system(rng, root);
    const DixonMatrix d = build_dixon_matrix(sys);
    const std::map<std::string, Rational> at{{"q1", root[0]}, {"q2", root[1]}, {"q3", root[2]}};
    const auto basis = cubic_basis(sys.eliminated);
    for (std::size_t r = 0; r < 20; ++r) {
      Rational sum = 0;
      for (std::size_t c = 0; c < 20; ++c)
        sum += d.entries(r, c).constant_term() * exact_eval(MultiPoly::term(basis[c], 1), at);
      ASSERT_EQ(sum, 0) << d.provenance[r];
    }
  }
}

TEST(DixonDeterminant, WorkedExampleFactorization) {
  const UnivariatePoly det = dixon_determinant(worked_system());
  ASSERT_EQ(det.degree(), 16);
  const UnivariatePoly g = solver::strip_extraneous_factor(det);
  EXPECT_EQ(g.degree(), 8);
  EXPECT_TRUE(g.is_even());
}

TEST(DixonDeterminant, RetainedCoordinatesAgreeAfterRenaming) {
  const QuadricSystem sys = worked_system();
  const UnivariatePoly base = monic(dixon_determinant(sys));
  for (const char* name : {"q1", "q2", "q3"}) {
    const UnivariatePoly other = dixon_determinant(sys.retaining(name));
    EXPECT_EQ(other.degree(), 16) << name;
    EXPECT_EQ(monic(other).renamed("q0"), base) << name;
  }
}

TEST(DixonDeterminant, VanishesAtOracleCoordinates) {
  const QuadricSystem sys = worked_system();
  const UnivariatePoly det = monic(dixon_determinant(sys));
  const spm::Quat s = testing_support::worked_solution();
  double scale = 0;
  for (const auto& c : det.coefficients()) scale = std::max(scale, std::abs(c.get_d()));
  EXPECT_LT(std::abs(det.evaluate<double>(s.q0)) / scale, 1e-9);
  EXPECT_LT(std::abs(det.evaluate<double>(0.5)), 1e-9);
}

TEST(DixonDeterminant, RequiresRetainedAndBoundParameters) {
  QuadricSystem sys = worked_system();
  sys.retained.reset();
  sys.polys[3] = parse_poly("q1^2 + q2^2 + q3^2 - 1");
  EXPECT_THROW(dixon_determinant(sys), Error);
  QuadricSystem p = worked_system();
  p.polys[0] = p.polys[0] + parse_poly("z");
  p.parameters = {"z"};
  EXPECT_THROW(dixon_determinant(p), Error);
  p.bindings["z"] = Rational(1, 3);
  EXPECT_NO_THROW(dixon_determinant(p));
}

TEST(DixonDeterminant, DegenerateWhenIdenticallyZero) {
  QuadricSystem sys;
  sys.polys = {parse_poly("q1^2 - q0"), parse_poly("q1^2 - q0"), parse_poly("q2 - q3"), parse_poly("q1^2 + q2^2 + q3^2 + q0^2 - 1")};
  sys.eliminated = {"q1", "q2", "q3"};
  sys.retained = "q0";
  try {
    dixon_determinant(sys);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateSystem);
  }
}

TEST(DixonDeterminantProperty, PermutationsChangeOnlyScale) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 4; ++trial) {
    const QuadricSystem sys = spm::build_3rrrr_system(spm::MotorAngles::from_exact(motor_draw(rng)));
    const UnivariatePoly base = monic(dixon_determinant(sys));
    QuadricSystem swapped = sys;
    std::swap(swapped.polys[0], swapped.polys[3]);
    std::swap(swapped.polys[1], swapped.polys[2]);
    EXPECT_EQ(monic(dixon_determinant(swapped)), base);
    QuadricSystem reordered = sys;
    reordered.eliminated = {"q3", "q1", "q2"};
    EXPECT_EQ(monic(dixon_determinant(reordered)), base);
  }
}

TEST(KernelCoordinates, WorkedRootGivesRemainingCoordinates) {
  const DixonMatrix d = build_dixon_matrix(worked_system());
  const spm::Quat s = testing_support::worked_solution();
  const auto xi = kernel_coordinates(d, s.q0);
  ASSERT_TRUE(xi.has_value());
  EXPECT_NEAR((*xi)[0], s.q1, 1e-9);
  EXPECT_NEAR((*xi)[1], s.q2, 1e-9);
  EXPECT_NEAR((*xi)[2], s.q3, 1e-9);
}

TEST(KernelCoordinates, NonRootGivesNothing) {
  const DixonMatrix d = build_dixon_matrix(worked_system());
  EXPECT_FALSE(kernel_coordinates(d, 0.9).has_value());
  const auto sv = dixon_singular_values(d, 0.9);
  EXPECT_GT(sv(19) / sv(0), 1e-8);
}

TEST(KernelCoordinatesProperty, PlantedRootRecovered) {
  std::mt19937 rng(15);
  int recovered = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> root;
    const QuadricSystem sys = planted_system(rng, root);
    const DixonMatrix d = build_dixon_matrix(sys);
    const auto sv = dixon_singular_values(d, std::nullopt);
    ASSERT_LT(sv(19) / sv(0), 1e-8);
    std::optional<std::array<double, 3>> xi;
    try {
      xi = kernel_coordinates(d, std::nullopt);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kAmbiguousKernel);
      continue;
    }
    ASSERT_TRUE(xi.has_value());
    for (std::size_t k = 0; k < 3; ++k) ASSERT_NEAR((*xi)[k], root[k].get_d(), 1e-9);
    ++recovered;
  }
  EXPECT_GE(recovered, 15);
}
