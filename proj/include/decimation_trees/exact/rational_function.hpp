#pragma once

// Reduced rational functions over Q: num/den coprime, den monic and nonzero.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "decimation_trees/exact/polynomial.hpp"

namespace dtrees {

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Rational(1)) {}
  RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT(implicit)
  RationalFunction(long c) : num_(Rational(c)), den_(Rational(1)) {}  // NOLINT(implicit)
  RationalFunction(const RationalPolynomial& p) : num_(p), den_(Rational(1)) {}  // NOLINT(implicit)

  /// Reduces num/den. Throws std::domain_error when den is zero.
  static RationalFunction reduce(const RationalPolynomial& num, const RationalPolynomial& den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    RationalFunction f;
    if (num.is_zero()) return f;
    RationalPolynomial g = gcd(num, den);
    RationalPolynomial n = num / g;
    RationalPolynomial d = den / g;
    Rational lc = d.leading();
    f.num_ = n.scaled(Rational(1 / lc));
    f.den_ = d.scaled(Rational(1 / lc));
    return f;
  }

  const RationalPolynomial& num() const { return num_; }
  const RationalPolynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  /// Value at a rational point; nullopt at a pole.
  std::optional<Rational> evaluate(const Rational& at) const {
    Rational d = den_(at);
    if (sgn(d) == 0) return std::nullopt;
    return Rational(num_(at) / d);
  }

  RationalFunction derivative() const {
    return reduce(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return reduce(a.num_ + b.num_, a.den_);
    return reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return reduce(a.num_ - b.num_, a.den_);
    return reduce(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a) {
    RationalFunction r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return reduce(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return reduce(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

 private:
  RationalPolynomial num_;
  RationalPolynomial den_;
};

inline RationalFunction exact_quotient(const RationalFunction& a, const RationalFunction& b) { return a / b; }

inline std::string to_string(const RationalFunction& f, const std::string& var = "z") {
  if (f.den().degree() == 0) return to_string(f.num(), var);
  return "(" + to_string(f.num(), var) + ") / (" + to_string(f.den(), var) + ")";
}

}  // namespace dtrees
