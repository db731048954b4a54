#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spmfdp/error.hpp"
#include "spmfdp/poly/multipoly.hpp"

namespace spmfdp::dixon {

using poly::MultiPoly;

/// Four polynomials of degree at most two in the three eliminated unknowns.
/// An optional retained unknown is treated as a parameter during
/// elimination; named parameters may be bound to exact values.
struct QuadricSystem {
  std::array<MultiPoly, 4> polys;
  std::array<std::string, 3> eliminated;
  std::optional<std::string> retained;
  std::vector<std::string> parameters;
  std::map<std::string, Rational> bindings;

  /// Throws InvalidInput when a structural invariant is broken.
  void validate() const {
    std::set<std::string> names(eliminated.begin(), eliminated.end());
    if (names.size() != 3) throw Error(ErrorCode::kInvalidInput, "eliminated unknowns must be distinct");
    for (const auto& n : eliminated)
      if (!poly::is_valid_variable_name(n)) throw Error(ErrorCode::kInvalidInput, "bad unknown name '" + n + "'");
    std::set<std::string> others;
    if (retained) others.insert(*retained);
    for (const auto& p : parameters) {
      if (!others.insert(p).second) throw Error(ErrorCode::kInvalidInput, "duplicate parameter '" + p + "'");
    }
    for (const auto& n : others)
      if (names.count(n)) throw Error(ErrorCode::kInvalidInput, "'" + n + "' is both eliminated and a parameter");
    for (const auto& [n, v] : bindings)
      if (names.count(n) || (retained && *retained == n))
        throw Error(ErrorCode::kInvalidInput, "binding for unknown '" + n + "' is not allowed");
    for (std::size_t i = 0; i < polys.size(); ++i) {
      if (polys[i].degree_in(eliminated) > 2)
        throw Error(ErrorCode::kInvalidInput, "f" + std::to_string(i + 1) + " has degree > 2 in the eliminated unknowns");
      for (const auto& u : polys[i].unknowns()) {
        if (names.count(u) || others.count(u) || bindings.count(u)) continue;
        throw Error(ErrorCode::kInvalidInput, "f" + std::to_string(i + 1) + " uses undeclared unknown '" + u + "'");
      }
    }
  }

  /// All parameters replaced by their bound values; unbound ones stay symbolic.
  QuadricSystem bound() const {
    QuadricSystem out = *this;
    if (bindings.empty()) return out;
    std::map<std::string, MultiPoly> subs;
    for (const auto& [n, v] : bindings) subs.emplace(n, MultiPoly(v));
    for (auto& p : out.polys) p = p.substitute(subs);
    out.parameters.erase(std::remove_if(out.parameters.begin(), out.parameters.end(),
                                        [&](const std::string& n) { return bindings.count(n) > 0; }),
                         out.parameters.end());
    out.bindings.clear();
    return out;
  }

  /// Unknown list [retained, eliminated...] as used by a four-unknown system.
  std::array<std::string, 4> all_unknowns() const {
    if (!retained) throw Error(ErrorCode::kInvalidInput, "system has no retained unknown");
    return {*retained, eliminated[0], eliminated[1], eliminated[2]};
  }

  /// Same polynomials with `name` retained: the current retained unknown
  /// takes over `name`'s slot among the eliminated ones, e.g. retaining q2
  /// from (q0; q1,q2,q3) gives (q2; q1,q0,q3).
  QuadricSystem retaining(const std::string& name) const {
    if (!retained) throw Error(ErrorCode::kInvalidInput, "system has no retained unknown");
    QuadricSystem out = *this;
    if (*retained == name) return out;
    auto slot = std::find(out.eliminated.begin(), out.eliminated.end(), name);
    if (slot == out.eliminated.end())
      throw Error(ErrorCode::kInvalidInput, "'" + name + "' is not one of the system's unknowns");
    *slot = *retained;
    out.retained = name;
    return out;
  }
};

}  // namespace spmfdp::dixon
