#pragma once

// Dense univariate polynomials over an exact coefficient ring.
//
// Coefficients are stored lowest degree first with no trailing zeros, so the
// zero polynomial is the empty vector and degree() == -1 for it. Arithmetic
// that needs division (divmod, gcd, monic) requires a field; ring-only
// operations also work for Polynomial<Polynomial<Rational>>, which is how
// bivariate resultants are expressed.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decimation_trees/exact/rational.hpp"

namespace dtrees {

template <class T>
class Polynomial {
 public:
  using coefficient_type = T;

  Polynomial() = default;
  Polynomial(const T& constant) : coeffs_{constant} { trim(); }  // NOLINT(implicit)
  Polynomial(long constant) : coeffs_{T(constant)} { trim(); }  // NOLINT(implicit)
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial monomial(const T& c, std::size_t k) {
    std::vector<T> v(k + 1, T(0));
    v[k] = c;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(T(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }

  const std::vector<T>& coefficients() const { return coeffs_; }

  T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

  const T& leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return coeffs_.back();
  }

  /// Horner evaluation; U must accept multiplication by T.
  template <class U>
  U evaluate(const U& at) const {
    U acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * at;
      acc = acc + U(*it);
    }
    return acc;
  }

  T operator()(const T& at) const { return evaluate<T>(at); }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial scaled(const T& c) const {
    std::vector<T> v(coeffs_);
    for (auto& x : v) x = x * c;
    return Polynomial(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return a.scaled(T(-1)); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == T(0)) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] = r[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RationalPolynomial = Polynomial<Rational>;
/// Polynomial in an outer variable whose coefficients are polynomials in an inner one.
using BivariatePolynomial = Polynomial<RationalPolynomial>;

template <class F>
std::pair<Polynomial<F>, Polynomial<F>> divmod(const Polynomial<F>& a, const Polynomial<F>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial<F>{}, a};
  std::vector<F> rem(a.coefficients());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<F> quot(rem.size() - db, F(0));
  const F& lb = b.leading();
  for (std::size_t k = quot.size(); k-- > 0;) {
    F q = exact_quotient(rem[k + db], lb);
    quot[k] = q;
    if (q == F(0)) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] = rem[k + j] - q * b.coefficients()[j];
  }
  rem.resize(db);
  return {Polynomial<F>(std::move(quot)), Polynomial<F>(std::move(rem))};
}

template <class F>
Polynomial<F> operator/(const Polynomial<F>& a, const Polynomial<F>& b) {
  return divmod(a, b).first;
}

template <class F>
Polynomial<F> operator%(const Polynomial<F>& a, const Polynomial<F>& b) {
  return divmod(a, b).second;
}

template <class F>
bool divides(const Polynomial<F>& d, const Polynomial<F>& p) {
  return divmod(p, d).second.is_zero();
}

/// Quotient that must be exact; used when polynomials are themselves ring
/// elements of a fraction-free elimination.
template <class F>
Polynomial<F> exact_quotient(const Polynomial<F>& a, const Polynomial<F>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial quotient");
  return q;
}

template <class F>
Polynomial<F> monic(const Polynomial<F>& p) {
  if (p.is_zero()) return p;
  return p.scaled(F(1) / p.leading());
}

/// Monic gcd; gcd(0, 0) == 0.
template <class F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
  while (!b.is_zero()) {
    Polynomial<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

template <class T>
Polynomial<T> pow(const Polynomial<T>& p, unsigned long e) {
  Polynomial<T> result(T(1));
  Polynomial<T> base = p;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

/// p(q(x)).
template <class T>
Polynomial<T> compose(const Polynomial<T>& p, const Polynomial<T>& q) {
  Polynomial<T> acc;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + Polynomial<T>(*it);
  return acc;
}

/// Yun's algorithm. Returns monic squarefree factors with their multiplicity;
/// the product of f_i^i equals monic(p).
template <class F>
std::vector<std::pair<Polynomial<F>, int>> squarefree_decomposition(const Polynomial<F>& p) {
  if (p.is_zero()) throw std::domain_error("squarefree decomposition of zero polynomial");
  std::vector<std::pair<Polynomial<F>, int>> out;
  Polynomial<F> f = monic(p);
  if (f.degree() < 1) return out;
  Polynomial<F> fp = f.derivative();
  Polynomial<F> a = gcd(f, fp);
  Polynomial<F> b = f / a;
  Polynomial<F> c = fp / a;
  Polynomial<F> d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    Polynomial<F> g = gcd(b, d);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    if (g.degree() > 0) out.emplace_back(monic(g), i);
  }
  return out;
}

template <class F>
Polynomial<F> squarefree_part(const Polynomial<F>& p) {
  Polynomial<F> r(F(1));
  for (const auto& [f, m] : squarefree_decomposition(p)) r = r * f;
  return r;
}

template <class F>
bool is_squarefree(const Polynomial<F>& p) {
  return gcd(p, p.derivative()).degree() <= 0;
}

/// Multiplicity of d as a factor of p (d nonconstant).
template <class F>
int factor_multiplicity(const Polynomial<F>& d, Polynomial<F> p) {
  if (d.degree() < 1) throw std::domain_error("factor multiplicity of a constant");
  int k = 0;
  while (!p.is_zero()) {
    auto [q, r] = divmod(p, d);
    if (!r.is_zero()) break;
    p = std::move(q);
    ++k;
  }
  return k;
}

/// Plain text, highest degree first, e.g. "-4*z^2 + 5*z".
inline std::string to_string(const RationalPolynomial& p, const std::string& var = "z") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const RationalPolynomial& p) { return os << to_string(p); }

/// Parses whitespace-separated coefficients, lowest degree first.
inline RationalPolynomial parse_coefficients(const std::string& text) {
  std::istringstream is(text);
  std::vector<Rational> c;
  std::string tok;
  while (is >> tok) c.push_back(parse_rational(tok));
  return RationalPolynomial(std::move(c));
}

}  // namespace dtrees
