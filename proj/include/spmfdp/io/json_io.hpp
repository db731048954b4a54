#pragma once

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "spmfdp/dixon/quadric_system.hpp"
#include "spmfdp/poly/poly_json.hpp"
#include "spmfdp/solver/pipeline.hpp"
#include "spmfdp/spm/system.hpp"

namespace spmfdp::io {

using nlohmann::json;

namespace detail {

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>()), 10));
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    return parse_rational(std::to_string(j[0].get<long long>()) + "/" + std::to_string(j[1].get<long long>()));
  }
  throw Error(ErrorCode::kParse, "expected a rational as \"n/d\", an integer or [num, den]; got " + j.dump());
}

template <std::size_t N>
std::array<std::string, N> names_from_json(const json& j, const char* field) {
  if (!j.is_array() || j.size() != N)
    throw Error(ErrorCode::kParse, std::string("'") + field + "' must list " + std::to_string(N) + " names");
  std::array<std::string, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = j[i].get<std::string>();
  return out;
}

}  // namespace detail

// ---- QuadricSystem ----------------------------------------------------------

inline json to_json(const dixon::QuadricSystem& sys) {
  json polys = json::array();
  for (const auto& p : sys.polys) polys.push_back(poly::to_json(p));
  json bindings = json::object();
  for (const auto& [n, v] : sys.bindings) bindings[n] = to_fraction_string(v);
  return {{"polys", polys},
          {"eliminated", sys.eliminated},
          {"retained", sys.retained ? json(*sys.retained) : json(nullptr)},
          {"parameters", sys.parameters},
          {"bindings", bindings}};
}

inline dixon::QuadricSystem system_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::kParse, "system JSON must be an object");
    dixon::QuadricSystem sys;
    const json& polys = j.at("polys");
    if (!polys.is_array() || polys.size() != 4) throw Error(ErrorCode::kParse, "'polys' must hold four polynomials");
    for (std::size_t i = 0; i < 4; ++i) sys.polys[i] = poly::poly_from_json(polys[i]);
    sys.eliminated = detail::names_from_json<3>(j.at("eliminated"), "eliminated");
    if (j.contains("retained") && !j.at("retained").is_null()) sys.retained = j.at("retained").get<std::string>();
    if (j.contains("parameters")) sys.parameters = j.at("parameters").get<std::vector<std::string>>();
    if (j.contains("bindings"))
      for (const auto& [n, v] : j.at("bindings").items()) sys.bindings[n] = detail::rational_from_json(v);
    sys.validate();
    return sys;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed system JSON: ") + e.what());
  }
}

// ---- LegCondition / MotorAngles --------------------------------------------

inline json to_json(const spm::LegCondition& leg) {
  auto vec = [](const spm::Vec3& v) {
    return json::array({to_fraction_string(v[0]), to_fraction_string(v[1]), to_fraction_string(v[2])});
  };
  return {{"w", vec(leg.w)}, {"nu", vec(leg.nu)}, {"c", to_fraction_string(leg.c)}};
}

inline spm::LegCondition leg_from_json(const json& j) {
  try {
    auto vec = [](const json& v) {
      if (!v.is_array() || v.size() != 3) throw Error(ErrorCode::kParse, "leg vectors need three entries");
      return spm::Vec3{detail::rational_from_json(v[0]), detail::rational_from_json(v[1]), detail::rational_from_json(v[2])};
    };
    spm::LegCondition leg{vec(j.at("w")), vec(j.at("nu")), j.contains("c") ? detail::rational_from_json(j.at("c")) : Rational(0)};
    leg.validate();
    return leg;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed leg JSON: ") + e.what());
  }
}

inline std::array<spm::LegCondition, 3> legs_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::kParse, "expected three legs");
  return {leg_from_json(j[0]), leg_from_json(j[1]), leg_from_json(j[2])};
}

/// {"theta_rad": [t1, t2, t3]} or {"exact": [[A1, B1], [A2, B2], [A3, B3]]}
/// where each entry is "n/d", an integer or [num, den].
inline json to_json(const spm::MotorAngles& m) {
  if (!m.exact) return {{"theta_rad", m.theta}};
  json pairs = json::array();
  for (const auto& p : *m.exact) pairs.push_back({to_fraction_string(p.sin), to_fraction_string(p.cos)});
  return {{"exact", pairs}};
}

inline spm::MotorAngles motor_angles_from_json(const json& j) {
  try {
    spm::MotorAngles m;
    const bool has_theta = j.contains("theta_rad"), has_exact = j.contains("exact");
    if (has_theta == has_exact) throw Error(ErrorCode::kParse, "give exactly one of 'theta_rad' and 'exact'");
    if (has_theta) {
      const auto t = j.at("theta_rad").get<std::vector<double>>();
      if (t.size() != 3) throw Error(ErrorCode::kParse, "'theta_rad' needs three angles");
      m.theta = {t[0], t[1], t[2]};
    } else {
      const json& e = j.at("exact");
      if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::kParse, "'exact' needs three (A, B) pairs");
      std::array<spm::SinCos, 3> pairs;
      for (std::size_t i = 0; i < 3; ++i) {
        if (!e[i].is_array() || e[i].size() != 2) throw Error(ErrorCode::kParse, "each exact entry is [A, B]");
        pairs[i] = {detail::rational_from_json(e[i][0]), detail::rational_from_json(e[i][1])};
      }
      m = spm::MotorAngles::from_exact(pairs);
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed motor angles: ") + e.what());
  }
}

// ---- solver results ----------------------------------------------------------

/// Rounds to `digits` significant digits, the same value the text form shows.
inline double rounded(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

inline std::string format_number(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline json coefficient_list(const poly::UnivariatePoly& p) {
  json out = json::array();
  for (const auto& c : p.coefficients()) out.push_back(to_fraction_string(c));
  return out;
}

inline json to_json(const solver::Diagnostics& d) {
  json j = {{"determinant_degree", d.determinant_degree},
            {"real_roots", d.real_roots},
            {"complex_t_roots", d.complex_t_roots},
            {"negative_t_roots", d.negative_t_roots},
            {"extraneous_removed", d.extraneous_removed},
            {"kernel_fallbacks", d.kernel_fallbacks},
            {"rejected_candidates", d.rejected_candidates},
            {"distinct_rotations", d.distinct_rotations},
            {"repeated_roots", d.repeated_roots},
            {"resolvent_rational", d.resolvent_rational}};
  j["closed_form_agrees"] = d.closed_form_agrees ? json(*d.closed_form_agrees) : json(nullptr);
  return j;
}

inline json to_json(const solver::Solution& s, int digits) {
  json q = json::array();
  for (double v : s.q.as_array()) q.push_back(rounded(v, digits));
  json rot = json::array();
  const auto r = spm::quaternion_to_rotation(s.q);
  for (int i = 0; i < 3; ++i) rot.push_back({rounded(r(i, 0), digits), rounded(r(i, 1), digits), rounded(r(i, 2), digits)});
  json res = json::array();
  for (double v : s.residuals.f) res.push_back(rounded(v, digits));
  return {{"q", q},          {"rotation", rot},   {"residuals", res},          {"extraneous", s.extraneous},
          {"orbit", s.orbit}, {"rotation_class", s.rotation}, {"multiplicity", s.multiplicity}};
}

inline json solutions_json(const solver::SolutionSet& set, int digits) {
  json arr = json::array();
  for (const auto& s : set.solutions) arr.push_back(to_json(s, digits));
  return arr;
}

inline std::string status_name(solver::SolveStatus s) {
  return s == solver::SolveStatus::kOk ? "ok" : "no_real_solutions";
}

/// The result document of one solve.
inline json to_json(const solver::FdpResult& r, int digits = 17) {
  json roots = json::array();
  for (const auto& root : r.roots)
    roots.push_back({{"value", root.value.str(std::max(digits, 1))},
                     {"radical_expr", root.expression.to_string()},
                     {"multiplicity", root.multiplicity}});
  json params = to_json(spm::MotorAngles::from_exact(r.parameters));
  return {{"parameters", params},
          {"determinant_coeffs", coefficient_list(r.determinant)},
          {"G_coeffs", coefficient_list(r.g)},
          {"roots", roots},
          {"solutions", solutions_json(r.solutions, digits)},
          {"status", status_name(r.solutions.status)},
          {"diagnostics", to_json(r.solutions.diagnostics)}};
}

/// Parsed form of a result document, for consumers and round trips.
struct ResultDocument {
  std::array<spm::SinCos, 3> parameters;
  std::vector<Rational> determinant_coeffs;
  std::vector<Rational> g_coeffs;
  struct Root {
    std::string value;
    std::string radical_expr;
    unsigned multiplicity = 1;
  };
  std::vector<Root> roots;
  struct Point {
    std::array<double, 4> q{};
    std::array<std::array<double, 3>, 3> rotation{};
    std::array<double, 4> residuals{};
    bool extraneous = false;
    std::size_t orbit = 0, rotation_class = 0;
    unsigned multiplicity = 1;
  };
  std::vector<Point> solutions;
  std::string status;
  json diagnostics;
};

inline ResultDocument result_from_json(const json& j) {
  try {
    ResultDocument d;
    d.parameters = *motor_angles_from_json(j.at("parameters")).exact;
    for (const auto& c : j.at("determinant_coeffs")) d.determinant_coeffs.push_back(detail::rational_from_json(c));
    for (const auto& c : j.at("G_coeffs")) d.g_coeffs.push_back(detail::rational_from_json(c));
    for (const auto& r : j.at("roots"))
      d.roots.push_back({r.at("value").get<std::string>(), r.at("radical_expr").get<std::string>(), r.value("multiplicity", 1u)});
    for (const auto& s : j.at("solutions")) {
      ResultDocument::Point p;
      p.q = s.at("q").get<std::array<double, 4>>();
      p.rotation = s.at("rotation").get<std::array<std::array<double, 3>, 3>>();
      p.residuals = s.at("residuals").get<std::array<double, 4>>();
      p.extraneous = s.at("extraneous").get<bool>();
      p.orbit = s.value("orbit", std::size_t{0});
      p.rotation_class = s.value("rotation_class", std::size_t{0});
      p.multiplicity = s.value("multiplicity", 1u);
      d.solutions.push_back(p);
    }
    d.status = j.at("status").get<std::string>();
    d.diagnostics = j.at("diagnostics");
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed result JSON: ") + e.what());
  }
}

inline json to_json(const ResultDocument& d) {
  json roots = json::array();
  for (const auto& r : d.roots) roots.push_back({{"value", r.value}, {"radical_expr", r.radical_expr}, {"multiplicity", r.multiplicity}});
  json sols = json::array();
  for (const auto& p : d.solutions)
    sols.push_back({{"q", p.q},         {"rotation", p.rotation},             {"residuals", p.residuals}, {"extraneous", p.extraneous},
                    {"orbit", p.orbit}, {"rotation_class", p.rotation_class}, {"multiplicity", p.multiplicity}});
  json det = json::array(), g = json::array();
  for (const auto& c : d.determinant_coeffs) det.push_back(to_fraction_string(c));
  for (const auto& c : d.g_coeffs) g.push_back(to_fraction_string(c));
  return {{"parameters", to_json(spm::MotorAngles::from_exact(d.parameters))},
          {"determinant_coeffs", det},
          {"G_coeffs", g},
          {"roots", roots},
          {"solutions", sols},
          {"status", d.status},
          {"diagnostics", d.diagnostics}};
}

}  // namespace spmfdp::io
