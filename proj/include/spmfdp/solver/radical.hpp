#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <memory>
#include <string>
#include <unordered_map>

#include "spmfdp/poly/multipoly.hpp"
#include "spmfdp/poly/rational.hpp"

namespace spmfdp::solver {

namespace mp = boost::multiprecision;

/// Working precision of the root finder and the stored root values.
using HighFloat = mp::number<mp::cpp_bin_float<60>, mp::et_off>;
using HighComplex = mp::number<mp::complex_adaptor<mp::cpp_bin_float<60>>, mp::et_off>;

/// Precision used to re-check radical expressions.
using CheckFloat = mp::number<mp::cpp_bin_float<30>, mp::et_off>;
using CheckComplex = mp::number<mp::complex_adaptor<mp::cpp_bin_float<30>>, mp::et_off>;

/// Immutable expression DAG over rationals with +, -, *, /, square roots and
/// cube roots. Subtrees are shared, never copied. Roots are principal
/// branches, so evaluation is carried out over the complex numbers.
class RadicalExpr {
 public:
  enum class Kind { kRational, kAdd, kSub, kMul, kDiv, kNeg, kSqrt, kCbrt };

  RadicalExpr() : RadicalExpr(Rational(0)) {}
  RadicalExpr(const Rational& value)  // NOLINT(google-explicit-constructor)
      : node_(std::make_shared<const Node>(Node{Kind::kRational, value, nullptr, nullptr})) {}
  RadicalExpr(long value) : RadicalExpr(Rational(value)) {}  // NOLINT(google-explicit-constructor)

  Kind kind() const noexcept { return node_->kind; }
  bool is_rational() const noexcept { return node_->kind == Kind::kRational; }
  const Rational& rational_value() const { return node_->value; }

  friend RadicalExpr operator+(const RadicalExpr& a, const RadicalExpr& b) {
    if (a.is_rational() && b.is_rational()) return Rational(a.rational_value() + b.rational_value());
    if (a.is_rational() && a.rational_value() == 0) return b;
    if (b.is_rational() && b.rational_value() == 0) return a;
    if (b.is_rational() && b.rational_value() < 0) return make(Kind::kSub, a, Rational(-b.rational_value()));
    if (b.kind() == Kind::kNeg) return make(Kind::kSub, a, RadicalExpr(b.node_->lhs));
    return make(Kind::kAdd, a, b);
  }
  friend RadicalExpr operator-(const RadicalExpr& a, const RadicalExpr& b) {
    if (a.is_rational() && b.is_rational()) return Rational(a.rational_value() - b.rational_value());
    if (b.is_rational() && b.rational_value() == 0) return a;
    if (a.is_rational() && a.rational_value() == 0) return -b;
    if (b.is_rational() && b.rational_value() < 0) return make(Kind::kAdd, a, Rational(-b.rational_value()));
    if (b.kind() == Kind::kNeg) return make(Kind::kAdd, a, RadicalExpr(b.node_->lhs));
    return make(Kind::kSub, a, b);
  }
  friend RadicalExpr operator*(const RadicalExpr& a, const RadicalExpr& b) {
    if (a.is_rational() && b.is_rational()) return Rational(a.rational_value() * b.rational_value());
    if ((a.is_rational() && a.rational_value() == 0) || (b.is_rational() && b.rational_value() == 0))
      return Rational(0);
    if (a.is_rational() && a.rational_value() == 1) return b;
    if (b.is_rational() && b.rational_value() == 1) return a;
    if (a.is_rational() && a.rational_value() < 0) return -(Rational(-a.rational_value()) * b);
    return make(Kind::kMul, a, b);
  }
  friend RadicalExpr operator/(const RadicalExpr& a, const RadicalExpr& b) {
    if (a.is_rational() && b.is_rational() && b.rational_value() != 0)
      return Rational(a.rational_value() / b.rational_value());
    if (b.is_rational() && b.rational_value() == 1) return a;
    if (a.is_rational() && a.rational_value() < 0) return -(Rational(-a.rational_value()) / b);
    return make(Kind::kDiv, a, b);
  }
  friend RadicalExpr operator-(const RadicalExpr& a) {
    if (a.is_rational()) return Rational(-a.rational_value());
    if (a.kind() == Kind::kNeg) return RadicalExpr(a.node_->lhs);
    return make(Kind::kNeg, a, {});
  }

  /// Principal square root. Perfect rational squares fold to a rational.
  friend RadicalExpr sqrt(const RadicalExpr& a) {
    if (a.is_rational() && a.rational_value() >= 0) {
      const Rational& v = a.rational_value();
      if (mpz_perfect_square_p(v.get_num_mpz_t()) && mpz_perfect_square_p(v.get_den_mpz_t()))
        return Rational(Integer(sqrt(v.get_num())), Integer(sqrt(v.get_den())));
    }
    return make(Kind::kSqrt, a, {});
  }

  /// Principal cube root.
  friend RadicalExpr cbrt(const RadicalExpr& a) {
    if (a.is_rational() && a.rational_value() >= 0) {
      const Rational& v = a.rational_value();
      Integer n, d;
      if (mpz_root(n.get_mpz_t(), v.get_num_mpz_t(), 3) && mpz_root(d.get_mpz_t(), v.get_den_mpz_t(), 3))
        return Rational(n, d);
    }
    return make(Kind::kCbrt, a, {});
  }

  /// Evaluates in the complex type C (e.g. HighComplex, CheckComplex).
  template <class C>
  C evaluate() const {
    std::unordered_map<const Node*, C> memo;
    return eval<C>(node_.get(), memo);
  }

  /// Infix text such as "(1/2 + sqrt(5))/3".
  std::string to_string() const { return print(node_.get(), 0); }

  /// Number of distinct nodes in the DAG.
  std::size_t node_count() const {
    std::unordered_map<const Node*, bool> seen;
    count(node_.get(), seen);
    return seen.size();
  }

 private:
  struct Node {
    Kind kind;
    Rational value;
    std::shared_ptr<const Node> lhs, rhs;
  };

  explicit RadicalExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static RadicalExpr make(Kind k, const RadicalExpr& a, const RadicalExpr& b) {
    return RadicalExpr(std::make_shared<const Node>(Node{k, Rational(0), a.node_, b.node_}));
  }

  template <class C>
  static C eval(const Node* n, std::unordered_map<const Node*, C>& memo) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    using Real = typename mp::component_type<C>::type;
    C out;
    switch (n->kind) {
      case Kind::kRational:
        out = C(poly::from_rational<Real>(n->value));
        break;
      case Kind::kAdd: out = eval<C>(n->lhs.get(), memo) + eval<C>(n->rhs.get(), memo); break;
      case Kind::kSub: out = eval<C>(n->lhs.get(), memo) - eval<C>(n->rhs.get(), memo); break;
      case Kind::kMul: out = eval<C>(n->lhs.get(), memo) * eval<C>(n->rhs.get(), memo); break;
      case Kind::kDiv: out = eval<C>(n->lhs.get(), memo) / eval<C>(n->rhs.get(), memo); break;
      case Kind::kNeg: out = -eval<C>(n->lhs.get(), memo); break;
      case Kind::kSqrt: out = principal_sqrt(eval<C>(n->lhs.get(), memo)); break;
      case Kind::kCbrt: out = principal_cbrt(eval<C>(n->lhs.get(), memo)); break;
    }
    memo.emplace(n, out);
    return out;
  }

  template <class C>
  static C principal_sqrt(const C& z) {
    using Real = typename mp::component_type<C>::type;
    // sqrt(x) for real x >= 0 and i*sqrt(-x) for real x < 0, without
    // relying on the sign of a zero imaginary part
    if (z.imag() == 0) {
      const Real x = z.real();
      return x >= 0 ? C(mp::sqrt(x), Real(0)) : C(Real(0), mp::sqrt(-x));
    }
    return mp::sqrt(z);
  }

  template <class C>
  static C principal_cbrt(const C& z) {
    using Real = typename mp::component_type<C>::type;
    if (z.imag() == 0 && z.real() >= 0) return C(mp::cbrt(z.real()), Real(0));
    if (z.real() == 0 && z.imag() == 0) return C(Real(0), Real(0));
    const Real r = mp::cbrt(mp::abs(z));
    const Real angle = mp::atan2(z.imag(), z.real()) / 3;
    return C(r * mp::cos(angle), r * mp::sin(angle));
  }

  static int precedence(Kind k) {
    switch (k) {
      case Kind::kAdd:
      case Kind::kSub: return 1;
      case Kind::kMul:
      case Kind::kDiv: return 2;
      case Kind::kNeg: return 3;
      default: return 4;
    }
  }

  static std::string print(const Node* n, int parent_prec) {
    std::string s;
    const int prec = precedence(n->kind);
    switch (n->kind) {
      case Kind::kRational: {
        s = spmfdp::to_string(n->value);
        if ((n->value < 0 && parent_prec >= 2) || (n->value.get_den() != 1 && parent_prec >= 3)) s = "(" + s + ")";
        return s;
      }
      case Kind::kAdd: s = print(n->lhs.get(), 1) + " + " + print(n->rhs.get(), 2); break;
      case Kind::kSub: s = print(n->lhs.get(), 1) + " - " + print(n->rhs.get(), 2); break;
      case Kind::kMul: s = print(n->lhs.get(), 2) + "*" + print(n->rhs.get(), 3); break;
      case Kind::kDiv: s = print(n->lhs.get(), 2) + "/" + print(n->rhs.get(), 3); break;
      case Kind::kNeg: s = "-" + print(n->lhs.get(), 3); break;
      case Kind::kSqrt: return "sqrt(" + print(n->lhs.get(), 0) + ")";
      case Kind::kCbrt: return "cbrt(" + print(n->lhs.get(), 0) + ")";
    }
    if (prec < parent_prec || (parent_prec == 3 && prec == 3)) s = "(" + s + ")";
    return s;
  }

  static void count(const Node* n, std::unordered_map<const Node*, bool>& seen) {
    if (!n || seen.count(n)) return;
    seen[n] = true;
    count(n->lhs.get(), seen);
    count(n->rhs.get(), seen);
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace spmfdp::solver
