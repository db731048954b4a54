#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

#include "spmfdp/error.hpp"

namespace spmfdp {

// GMP keeps mpq_class canonical (positive denominator, reduced) after every
// arithmetic operation; only construction from raw parts needs canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "-n" or "n/d". Whitespace around the tokens is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { return Error(ErrorCode::kParse, "malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
  std::string num_s(num);
  if (num_s[0] == '+') num_s.erase(0, 1);
  Integer n(num_s, 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Always "n/d", the form used in JSON coefficient fields.
inline std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Closest-denominator continued-fraction approximation p/q with
/// |x - p/q| <= tol. Exact doubles with short expansions come back exactly.
inline Rational approximate_rational(double x, double tol) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidInput, "cannot rationalize a non-finite value");
  const Rational target(x);  // exact binary value
  // convergent recurrence: h_n = a_n h_{n-1} + h_{n-2}, same for k
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  Rational rest = target;
  for (int iter = 0; iter < 128; ++iter) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer h = a * h1 + h2;
    Integer k = a * k1 + k2;
    h2 = h1;
    k2 = k1;
    h1 = h;
    k1 = k;
    Rational candidate(h, k);
    candidate.canonicalize();
    Rational err = abs(candidate - target);
    if (err.get_d() <= tol || err == 0) return candidate;
    rest -= a;
    if (rest == 0) return candidate;
    rest = 1 / rest;
  }
  return target;
}

}  // namespace spmfdp
