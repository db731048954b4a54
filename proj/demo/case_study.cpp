// Solves the worked example and prints each pose as a rotation matrix.
#include <cstdio>

#include "spmfdp/solver/pipeline.hpp"

int main() {
  using spmfdp::Rational;
  const std::array<spmfdp::spm::SinCos, 3> motors{{{Rational(3, 5), Rational(4, 5)},
                                                   {Rational(5, 13), Rational(12, 13)},
                                                   {Rational(7, 25), Rational(24, 25)}}};
  const auto result = spmfdp::solver::solve_fdp(spmfdp::spm::MotorAngles::from_exact(motors));

  std::printf("G(q0) = %s\n\n", result.g.to_string().c_str());
  for (const auto& root : result.roots)
    std::printf("q0 = %s\n     %s\n", root.value.str(20).c_str(), root.expression.to_string().c_str());

  std::printf("\n%zu poses, %zu distinct rotations\n", result.solutions.solutions.size(),
              result.solutions.diagnostics.distinct_rotations);
  for (const auto& s : result.solutions.solutions) {
    const auto r = spmfdp::spm::quaternion_to_rotation(s.q);
    std::printf("q = (% .12f, % .12f, % .12f, % .12f)\n", s.q.q0, s.q.q1, s.q.q2, s.q.q3);
    for (int i = 0; i < 3; ++i) std::printf("    [% .6f % .6f % .6f]\n", r(i, 0), r(i, 1), r(i, 2));
  }
}
