#pragma once

#include <json.hpp>

#include "spmfdp/poly/multipoly.hpp"

namespace spmfdp::poly {

/// [{"exponents": {"q0": 2}, "coeff": "3/5"}, ...] in canonical term order.
inline nlohmann::json to_json(const MultiPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json exps = nlohmann::json::object();
    for (const auto& [name, e] : m.factors()) exps[name] = e;
    terms.push_back({{"exponents", exps}, {"coeff", to_fraction_string(c)}});
  }
  return terms;
}

/// Accepts the term-list form or a string in the canonical text form.
inline MultiPoly poly_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_poly(j.get<std::string>());
  if (!j.is_array()) throw Error(ErrorCode::kParse, "polynomial JSON must be a term list or a string");
  MultiPoly p;
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("coeff"))
      throw Error(ErrorCode::kParse, "polynomial term needs a 'coeff' field");
    Monomial m;
    if (term.contains("exponents")) {
      for (const auto& [name, e] : term.at("exponents").items()) {
        if (!e.is_number_integer() || e.get<long long>() < 0)
          throw Error(ErrorCode::kParse, "exponent of '" + name + "' must be a non-negative integer");
        m.multiply_by(name, e.get<std::uint32_t>());
      }
    }
    const auto& c = term.at("coeff");
    p.add_term(m, c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>()));
  }
  return p;
}

}  // namespace spmfdp::poly
