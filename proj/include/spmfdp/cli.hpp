#pragma once

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spmfdp/dixon/dixon.hpp"
#include "spmfdp/io/json_io.hpp"
#include "spmfdp/oracle/oracle.hpp"
#include "spmfdp/solver/pipeline.hpp"
#include "spmfdp/spm/system.hpp"

namespace spmfdp::cli {

enum class Subcommand { kSolve, kDixonDet, kVerify, kOracle };
enum class Format { kText, kJson };

struct CliRequest {
  Subcommand subcommand = Subcommand::kSolve;
  std::optional<std::array<double, 3>> theta;
  std::optional<std::array<spm::SinCos, 3>> sincos;
  std::optional<std::string> system_file;
  std::optional<std::string> retain;
  std::optional<std::array<std::string, 4>> point;
  Format format = Format::kText;
  int precision = 17;
  bool include_extraneous = false;

  void validate() const {
    const int sources = int(theta.has_value()) + int(sincos.has_value()) + int(system_file.has_value());
    if (sources != 1) throw Error(ErrorCode::kInvalidInput, "give exactly one of --theta, --sincos, --system");
    if (precision < 1 || precision > 60) throw Error(ErrorCode::kInvalidInput, "--precision must be in 1..60");
    if (subcommand == Subcommand::kVerify && !point) throw Error(ErrorCode::kInvalidInput, "verify needs --point");
    if (retain && subcommand != Subcommand::kDixonDet)
      throw Error(ErrorCode::kInvalidInput, "--retain only applies to dixon-det");
  }
};

// ---- argument parsing helpers -------------------------------------------------

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

/// "n", "n/d" or a decimal such as "-0.25" or "1.5e-3", converted exactly.
inline Rational parse_exact_number(const std::string& text) {
  if (text.find_first_of(".eE") == std::string::npos) return parse_rational(text);
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false, any = false;
  for (; pos < text.size() && text[pos] != 'e' && text[pos] != 'E'; ++pos) {
    const char c = text[pos];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any = true;
      if (seen_dot) --scale;
    } else {
      throw Error(ErrorCode::kParse, "bad number '" + text + "'");
    }
  }
  if (!any) throw Error(ErrorCode::kParse, "bad number '" + text + "'");
  if (pos < text.size()) {
    const std::string exp = text.substr(pos + 1);
    if (exp.empty() || exp.find_first_not_of("+-0123456789") != std::string::npos || exp.size() > 6)
      throw Error(ErrorCode::kParse, "bad exponent in '" + text + "'");
    scale += std::stol(exp);
  }
  Rational value{Integer(digits, 10)};
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  if (scale >= 0) value *= ten_pow; else value /= ten_pow;
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

inline std::array<double, 3> parse_theta(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw Error(ErrorCode::kParse, "--theta expects three comma-separated angles");
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t used = 0;
    try {
      out[i] = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != parts[i].size() || parts[i].empty()) throw Error(ErrorCode::kParse, "bad angle '" + parts[i] + "'");
  }
  return out;
}

/// Three "A,B" pairs with A^2 + B^2 = 1 exactly.
inline std::array<spm::SinCos, 3> parse_sincos(const std::vector<std::string>& pairs) {
  if (pairs.size() != 3) throw Error(ErrorCode::kParse, "--sincos expects three A,B pairs");
  std::array<spm::SinCos, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto parts = split(pairs[i], ',');
    if (parts.size() != 2) throw Error(ErrorCode::kParse, "bad A,B pair '" + pairs[i] + "'");
    out[i] = {parse_exact_number(parts[0]), parse_exact_number(parts[1])};
  }
  spm::MotorAngles::from_exact(out).validate();
  return out;
}

inline std::array<std::string, 4> parse_point(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error(ErrorCode::kParse, "--point expects four comma-separated coordinates");
  return {parts[0], parts[1], parts[2], parts[3]};
}

// ---- helpers ------------------------------------------------------------------

inline std::string coordinate_text(const solver::Solution& s, std::size_t k, int digits) {
  if (s.precise) {
    std::string t = (*s.precise)[k].str(digits);
    return t == "-0" ? "0" : t;
  }
  return io::format_number(s.q.as_array()[k], digits);
}

inline nlohmann::json solution_json(const solver::Solution& s, int digits) {
  nlohmann::json j = io::to_json(s, digits);
  for (std::size_t k = 0; k < 4; ++k) j["q"][k] = std::strtod(coordinate_text(s, k, digits).c_str(), nullptr);
  return j;
}

inline nlohmann::json solutions_json(const solver::SolutionSet& set, int digits) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : set.solutions) arr.push_back(solution_json(s, digits));
  return arr;
}

inline dixon::QuadricSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "'" + path + "' is not valid JSON: " + e.what());
  }
  // a system, a leg triple, or motor angles
  if (j.is_object() && j.contains("polys")) return io::system_from_json(j);
  if (j.is_array()) return spm::build_generic_system(io::legs_from_json(j));
  if (j.is_object() && j.contains("legs")) return spm::build_generic_system(io::legs_from_json(j.at("legs")));
  return spm::build_3rrrr_system(io::motor_angles_from_json(j));
}

inline spm::MotorAngles motor_angles(const CliRequest& r) {
  spm::MotorAngles m;
  if (r.sincos) return spm::MotorAngles::from_exact(*r.sincos);
  m.theta = *r.theta;
  return m;
}

inline dixon::QuadricSystem request_system(const CliRequest& r) {
  if (r.system_file) return load_system(*r.system_file);
  return spm::build_3rrrr_system(motor_angles(r));
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

inline void print_solutions_text(const solver::SolutionSet& set, int digits, std::ostream& out) {
  const std::size_t w = static_cast<std::size_t>(digits) + 8;
  out << "solutions: " << set.solutions.size() << " (" << set.diagnostics.distinct_rotations << " distinct rotations";
  if (set.diagnostics.extraneous_removed) out << ", " << set.diagnostics.extraneous_removed << " extraneous removed";
  out << ")\n";
  if (set.status == solver::SolveStatus::kNoRealSolutions) {
    out << "no real solutions\n";
    return;
  }
  out << "   #  orbit" << pad("q0", w) << pad("q1", w) << pad("q2", w) << pad("q3", w) << pad("max|f|", 11) << "  flags\n";
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    const auto& s = set.solutions[i];
    out << pad(std::to_string(i + 1), 4) << pad(std::to_string(s.orbit + 1), 7);
    for (std::size_t k = 0; k < 4; ++k) out << pad(coordinate_text(s, k, digits), w);
    out << pad(io::format_number(s.residuals.max(), 3), 11) << "  ";
    std::string flags;
    if (s.extraneous) flags += "extraneous ";
    if (s.multiplicity > 1) flags += "repeated(" + std::to_string(s.multiplicity) + ") ";
    out << (flags.empty() ? "-" : flags) << "\n";
  }
}

// ---- subcommands ----------------------------------------------------------------

inline int run_solve(const CliRequest& r, std::ostream& out) {
  solver::AssemblyOptions opts;
  opts.include_extraneous = r.include_extraneous;
  if (r.system_file) {
    const auto sys = load_system(*r.system_file);
    const auto det = dixon::dixon_determinant(sys);
    const auto set = solver::solve_system(sys, opts);
    if (r.format == Format::kJson) {
      nlohmann::json roots = nlohmann::json::array();
      for (const auto& v : solver::real_roots(det)) roots.push_back({{"value", v.str(r.precision)}});
      out << nlohmann::json{{"system", io::to_json(sys)},
                            {"determinant_coeffs", io::coefficient_list(det)},
                            {"roots", roots},
                            {"solutions", solutions_json(set, r.precision)},
                            {"status", io::status_name(set.status)},
                            {"diagnostics", io::to_json(set.diagnostics)}}
                 .dump(2)
          << "\n";
    } else {
      out << "determinant degree " << det.degree() << " in " << det.unknown() << ", " << set.diagnostics.real_roots
          << " real roots\n";
      print_solutions_text(set, r.precision, out);
    }
    return 0;
  }
  const auto result = solver::solve_fdp(motor_angles(r), opts);
  if (r.format == Format::kJson) {
    nlohmann::json j = io::to_json(result, r.precision);
    j["solutions"] = solutions_json(result.solutions, r.precision);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "parameters:";
  for (std::size_t i = 0; i < 3; ++i)
    out << "  A" << i + 1 << "=" << to_string(result.parameters[i].sin) << " B" << i + 1 << "="
        << to_string(result.parameters[i].cos);
  out << "\nG(q0) = " << result.g.to_string() << "\n";
  const auto& d = result.solutions.diagnostics;
  out << "real roots of G: " << result.roots.size() << " (complex t-roots " << d.complex_t_roots
      << ", negative t-roots " << d.negative_t_roots << ")\n";
  for (const auto& root : result.roots) {
    out << pad(root.value.str(r.precision), static_cast<std::size_t>(r.precision) + 8) << "  = "
        << root.expression.to_string();
    if (root.multiplicity > 1) out << "  [multiplicity " << root.multiplicity << "]";
    out << "\n";
  }
  print_solutions_text(result.solutions, r.precision, out);
  return 0;
}

inline int run_dixon_det(const CliRequest& r, std::ostream& out) {
  dixon::QuadricSystem sys = request_system(r);
  if (r.retain) sys = sys.retaining(*r.retain);
  const auto det = dixon::dixon_determinant(sys);
  if (r.format == Format::kJson) {
    out << nlohmann::json{{"retained", det.unknown()}, {"degree", det.degree()}, {"coeffs", io::coefficient_list(det)}}.dump(2)
        << "\n";
  } else {
    out << "retained " << det.unknown() << ", degree " << det.degree() << "\n" << det.to_string() << "\n";
  }
  return 0;
}

inline int run_verify(const CliRequest& r, std::ostream& out) {
  const auto sys = request_system(r);
  const auto& p = *r.point;
  std::optional<spm::Quaternion<Rational>> exact;
  try {
    exact = spm::Quaternion<Rational>{parse_exact_number(p[0]), parse_exact_number(p[1]), parse_exact_number(p[2]),
                                      parse_exact_number(p[3])};
  } catch (const Error&) {
    throw Error(ErrorCode::kParse, "bad --point coordinates");
  }
  const spm::Quat q = spm::to_double(*exact);
  const auto exact_res = oracle::verify_point(sys, *exact);
  std::array<double, 4> res{};
  for (std::size_t i = 0; i < 4; ++i) res[i] = exact_res[i].get_d();
  const bool extraneous = spm::distance_to_extraneous(q) < 1e-6;
  const double max_res = oracle::max_abs(res);
  if (r.format == Format::kJson) {
    nlohmann::json ex = nlohmann::json::array(), fl = nlohmann::json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      ex.push_back(to_fraction_string(exact_res[i]));
      fl.push_back(io::rounded(res[i], r.precision));
    }
    out << nlohmann::json{{"point", {q.q0, q.q1, q.q2, q.q3}},
                          {"residuals", fl},
                          {"exact_residuals", ex},
                          {"max_residual", io::rounded(max_res, r.precision)},
                          {"norm_squared", to_fraction_string(exact->norm_squared())},
                          {"extraneous", extraneous}}
                 .dump(2)
          << "\n";
  } else {
    for (std::size_t i = 0; i < 4; ++i) out << "f" << i + 1 << " = " << to_string(exact_res[i]) << "\n";
    out << "max |f| = " << io::format_number(max_res, r.precision) << "\n";
    out << "|q|^2 = " << to_string(exact->norm_squared()) << "\n";
    if (extraneous) out << "extraneous point\n";
  }
  return 0;
}

inline int run_oracle(const CliRequest& r, std::ostream& out) {
  const auto sys = request_system(r);
  const auto points = oracle::oracle_solve(sys);
  if (r.format == Format::kJson) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& q : points)
      arr.push_back({{"q", {io::rounded(q.q0, r.precision), io::rounded(q.q1, r.precision), io::rounded(q.q2, r.precision),
                            io::rounded(q.q3, r.precision)}},
                     {"extraneous", spm::distance_to_extraneous(q) < 1e-6}});
    out << nlohmann::json{{"points", arr}}.dump(2) << "\n";
  } else {
    out << points.size() << " points\n";
    for (const auto& q : points) {
      for (double v : q.as_array()) out << pad(io::format_number(v, r.precision), static_cast<std::size_t>(r.precision) + 8);
      if (spm::distance_to_extraneous(q) < 1e-6) out << "  extraneous";
      out << "\n";
    }
  }
  return 0;
}

/// "error[<code>]: <message>" on one line.
inline void report(const Error& e, std::ostream& err) {
  std::string msg = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  err << "error[" << to_string(e.code()) << "]: " << msg << "\n";
}

/// Runs one request. Exit status: 0 success, 1 bad input or internal
/// failure, 2 degenerate system. Errors go to `err` as "error[<code>]: ...".
inline int run(const CliRequest& r, std::ostream& out, std::ostream& err) {
  try {
    r.validate();
    switch (r.subcommand) {
      case Subcommand::kSolve: return run_solve(r, out);
      case Subcommand::kDixonDet: return run_dixon_det(r, out);
      case Subcommand::kVerify: return run_verify(r, out);
      case Subcommand::kOracle: return run_oracle(r, out);
    }
  } catch (const Error& e) {
    report(e, err);
    return e.code() == ErrorCode::kDegenerateSystem ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace spmfdp::cli
