#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "spmfdp/dixon/dixon.hpp"
#include "spmfdp/oracle/oracle.hpp"
#include "spmfdp/solver/pipeline.hpp"
#include "spmfdp/spm/closed_form.hpp"
#include "support.hpp"

using namespace spmfdp;
using solver::CheckComplex;
using solver::CheckFloat;
using solver::HighFloat;
using poly::UnivariatePoly;
using spm::Quat;
using testing_support::motor_draw;
using testing_support::worked_motors;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

dixon::QuadricSystem family_system(const std::array<spm::SinCos, 3>& ab) {
  return spm::build_3rrrr_system(spm::MotorAngles::from_exact(ab));
}

std::vector<std::array<spm::SinCos, 3>> draws(unsigned seed, int n) {
  std::mt19937 rng(seed);
  std::vector<std::array<spm::SinCos, 3>> out;
  for (int k = 0; k < n; ++k) out.push_back(motor_draw(rng));
  return out;
}

double set_distance(const std::vector<Quat>& a, const std::vector<Quat>& b) {
  double worst = 0;
  for (const Quat& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Quat& q : b) best = std::min(best, spm::max_distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff(const std::vector<Quat>& a, const std::vector<Quat>& b) {
  if (a.empty() || b.empty()) return a.size() == b.size() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::max(set_distance(a, b), set_distance(b, a));
}

struct Outcome {
  bool pass;
  std::string detail;
};

// 1: worked example
Outcome worked_example() {
  const auto t0 = Clock::now();
  const solver::FdpResult r = solver::solve_fdp(spm::MotorAngles::from_exact(worked_motors()));
  const double elapsed = seconds_since(t0);
  const auto& sols = r.solutions.solutions;
  bool ok = sols.size() == 8;
  for (const auto& s : sols) ok = ok && !s.extraneous;

  std::vector<HighFloat> positive, expected;
  for (const auto& root : r.roots)
    if (root.value > 0) positive.push_back(root.value);
  for (const char* v : testing_support::kWorkedRoots) expected.emplace_back(v);
  std::sort(expected.begin(), expected.end());
  HighFloat root_err = positive.size() == 4 ? HighFloat(0) : HighFloat(1);
  for (std::size_t k = 0; k < std::min<std::size_t>(4, positive.size()); ++k)
    root_err = std::max(root_err, HighFloat(abs(positive[k] - expected[k])));
  ok = ok && root_err <= HighFloat("1e-15");

  std::array<HighFloat, 4> r_hi;
  for (std::size_t k = 0; k < 4; ++k) r_hi[k] = HighFloat(testing_support::kWorkedRoots[k]);
  const auto& [r1, r2, r3, r4] = r_hi;
  const std::array<std::array<HighFloat, 4>, 4> table{{{r1, r2, -r3, -r4}, {r2, -r1, r4, -r3}, {-r3, -r4, -r1, -r2}, {-r4, r3, r2, -r1}}};
  std::vector<std::array<HighFloat, 4>> expected_rows;
  for (const auto& row : table) {
    expected_rows.push_back(row);
    expected_rows.push_back({-row[0], -row[1], -row[2], -row[3]});
  }
  HighFloat table_err = 0;
  for (const auto& row : expected_rows) {
    HighFloat best = 1;
    for (const auto& s : sols) {
      if (!s.precise) continue;
      HighFloat d = 0;
      for (std::size_t k = 0; k < 4; ++k) d = std::max(d, HighFloat(abs((*s.precise)[k] - row[k])));
      best = std::min(best, d);
    }
    table_err = std::max(table_err, best);
  }
  ok = ok && table_err <= HighFloat("1e-15") && elapsed <= 5.0;
  std::ostringstream d;
  d << sols.size() << " solutions, root error " << root_err.str(3) << ", table error " << table_err.str(3) << ", "
    << elapsed << " s";
  return {ok, d.str()};
}

// 2: factorization and closed form
Outcome factorization() {
  auto instances = draws(2002, 50);
  instances.insert(instances.begin(), worked_motors());
  bool ok = true;
  double slowest = 0;
  int passed = 0;
  for (const auto& ab : instances) {
    const auto t0 = Clock::now();
    bool this_ok = false;
    try {
      const auto det = dixon::dixon_determinant(family_system(ab));
      if (det.degree() == 16) {
        const auto [q, rem] = divide(det, solver::extraneous_factor());
        this_ok = rem.is_zero() && q.monic() == spm::closed_form_G(spm::g_coefficients(ab)).monic();
      }
    } catch (const Error&) {
      this_ok = false;
    }
    const double elapsed = seconds_since(t0);
    slowest = std::max(slowest, elapsed);
    this_ok = this_ok && elapsed <= 2.0;
    passed += this_ok;
    ok = ok && this_ok;
  }
  std::ostringstream d;
  d << passed << "/" << instances.size() << " instances exact, slowest " << slowest << " s";
  return {ok, d.str()};
}

// 3: extraneous points and orbit closure
Outcome orbit_structure() {
  bool ok = true;
  double worst = 0;
  std::size_t checked = 0;
  for (const auto& ab : draws(3003, 100)) {
    const auto sys = family_system(ab);
    for (const auto& rho : spm::extraneous_set())
      for (const auto& v : oracle::verify_point(sys, rho)) ok = ok && v == 0;
    const auto r = solver::solve_fdp(spm::MotorAngles::from_exact(ab));
    for (const auto& s : r.solutions.solutions)
      for (const Quat& m : spm::symmetry_orbit(s.q)) {
        worst = std::max(worst, oracle::max_abs(oracle::verify_point(sys, m)));
        ++checked;
      }
  }
  ok = ok && worst <= 1e-9 && checked > 0;
  std::ostringstream d;
  d << "extraneous residuals exactly zero: " << (ok ? "yes" : "no") << ", " << checked << " orbit members, worst residual " << worst;
  return {ok, d.str()};
}

// 4: planted common roots
Outcome planted_roots() {
  std::mt19937 rng(4004);
  bool ok = true;
  double worst_ratio = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> root;
    const auto sys = testing_support::planted_system(rng, root);
    const std::map<std::string, Rational> at{{"q1", root[0]}, {"q2", root[1]}, {"q3", root[2]}};
    const auto psi = dixon::extract_psi(sys);
    for (const auto* p : psi.as_array()) ok = ok && p->evaluate<Rational>([&](const std::string& n) { return at.at(n); }) == 0;
    const auto sv = dixon::dixon_singular_values(dixon::build_dixon_matrix(sys), std::nullopt);
    worst_ratio = std::max(worst_ratio, sv(sv.size() - 1) / sv(0));
  }
  ok = ok && worst_ratio < 1e-8;
  std::ostringstream d;
  d << "100 systems, psi exact zeros: " << (ok ? "yes" : "no") << ", largest smallest-singular-value ratio " << worst_ratio;
  return {ok, d.str()};
}

// 5: retained coordinate symmetry
Outcome retained_symmetry() {
  int agreeing = 0;
  const auto instances = draws(5005, 20);
  for (const auto& ab : instances) {
    const auto sys = family_system(ab);
    const auto base = dixon::dixon_determinant(sys).monic();
    bool all = true;
    for (const char* name : {"q1", "q2", "q3"}) all = all && dixon::dixon_determinant(sys.retaining(name)).monic().renamed("q0") == base;
    agreeing += all;
  }
  std::ostringstream d;
  d << agreeing << "/" << instances.size() << " draws with identical monic determinants";
  return {agreeing == static_cast<int>(instances.size()), d.str()};
}

// 6: oracle equivalence
Outcome oracle_equivalence() {
  int agreeing = 0;
  double worst = 0;
  std::map<std::size_t, int> counts;
  const auto instances = draws(6006, 100);
  for (const auto& ab : instances) {
    const auto r = solver::solve_fdp(spm::MotorAngles::from_exact(ab));
    std::vector<Quat> mine, theirs;
    for (const auto& s : r.solutions.solutions) mine.push_back(s.q);
    for (const Quat& o : oracle::oracle_solve(family_system(ab)))
      if (spm::distance_to_extraneous(o) >= 1e-6) theirs.push_back(o);
    ++counts[theirs.size()];
    const double h = hausdorff(mine, theirs);
    worst = std::max(worst, h);
    agreeing += mine.size() == theirs.size() && h <= 1e-8;
  }
  std::ostringstream d;
  d << agreeing << "/" << instances.size() << " draws agree, worst Hausdorff distance " << worst << ", non-extraneous counts";
  for (const auto& [n, k] : counts) d << " " << n << ":" << k;
  return {agreeing == static_cast<int>(instances.size()), d.str()};
}

// 7: radical expressions
Outcome radical_fidelity() {
  auto instances = draws(7007, 100);
  instances.insert(instances.begin(), worked_motors());
  CheckFloat worst = 0;
  std::size_t roots = 0;
  for (const auto& ab : instances) {
    const auto r = solver::solve_fdp(spm::MotorAngles::from_exact(ab));
    for (const auto& root : r.roots) {
      const CheckComplex v = root.expression.evaluate<CheckComplex>();
      worst = std::max(worst, CheckFloat(abs(v - CheckComplex(CheckFloat(root.value)))));
      ++roots;
    }
  }
  // a quartic whose resolvent has no rational root, so the cube-root branch is exercised
  const UnivariatePoly cubic_branch({Rational(4), 0, Rational(1), 0, Rational(-8), 0, 0, 0, Rational(1)}, "q0");
  const auto extra = solver::solve_even_octic(cubic_branch);
  for (const auto& root : extra.real) {
    const CheckComplex v = root.expression.evaluate<CheckComplex>();
    worst = std::max(worst, CheckFloat(abs(v - CheckComplex(CheckFloat(root.value)))));
    ++roots;
  }
  std::ostringstream d;
  d << roots << " roots (including " << extra.real.size() << " via cube roots), worst deviation " << worst.str(3);
  return {roots > 0 && worst <= CheckFloat("1e-25") && !extra.resolvent_rational, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"worked example reproduced", worked_example},
      {"degree 16, exact extraneous factor, closed form agrees", factorization},
      {"extraneous points exact, orbits verify", orbit_structure},
      {"planted roots: psi vanish, Dixon matrix singular", planted_roots},
      {"retained coordinates give the same determinant", retained_symmetry},
      {"solver matches oracle", oracle_equivalence},
      {"radical expressions re-evaluate at 30 digits", radical_fidelity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << " (" << o.detail << ")"
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
