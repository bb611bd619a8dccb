#pragma once

// Galois-conjugate classes of algebraic numbers, represented by a monic
// squarefree polynomial over Q, and the root-splitting utilities that
// produce them from characteristic polynomials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decimation_trees/exact/integer_factor.hpp"
#include "decimation_trees/exact/polynomial.hpp"
#include "decimation_trees/exact/rational_function.hpp"
#include "decimation_trees/exact/resultant.hpp"

namespace dtrees {

class AlgebraicClass {
 public:
  /// `irreducible` records whether the polynomial is known to be irreducible
  /// over Q; unsplit factors of degree > 4 may lump several classes together.
  explicit AlgebraicClass(const RationalPolynomial& poly, bool irreducible = true)
      : minpoly_(monic(poly)), irreducible_(irreducible) {
    if (minpoly_.degree() < 1) throw std::invalid_argument("algebraic class needs a nonconstant polynomial");
    if (!is_squarefree(minpoly_)) throw std::invalid_argument("algebraic class polynomial is not squarefree");
    label_ = make_label();
  }

  static AlgebraicClass rational(const Rational& r) {
    return AlgebraicClass(RationalPolynomial{Rational(-r), Rational(1)});
  }

  const RationalPolynomial& minpoly() const { return minpoly_; }
  const std::string& label() const { return label_; }
  int degree() const { return minpoly_.degree(); }
  bool irreducible() const { return irreducible_; }
  bool is_rational() const { return degree() == 1; }
  Rational rational_value() const {
    if (!is_rational()) throw std::logic_error("class " + label_ + " is not rational");
    return Rational(-minpoly_.coeff(0));
  }

  /// The class contains a root of p (p need not be squarefree).
  bool divides(const RationalPolynomial& p) const { return dtrees::divides(minpoly_, p); }

  friend bool operator==(const AlgebraicClass& a, const AlgebraicClass& b) { return a.minpoly_ == b.minpoly_; }
  friend bool operator!=(const AlgebraicClass& a, const AlgebraicClass& b) { return !(a == b); }

 private:
  std::string make_label() const;

  RationalPolynomial minpoly_;
  bool irreducible_ = true;
  std::string label_;
};

/// Product of all conjugates: (-1)^deg times the constant term.
inline Rational class_norm_product(const AlgebraicClass& c) {
  Rational v = c.minpoly().coeff(0);
  return c.degree() % 2 == 0 ? v : Rational(-v);
}

namespace detail {

/// Primitive integer polynomial proportional to p (positive leading coefficient).
inline std::vector<Integer> primitive_integer_coefficients(const RationalPolynomial& p) {
  Integer l(1);
  for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ic;
  for (const auto& c : p.coefficients()) ic.push_back(Integer(c.get_num() * (l / c.get_den())));
  Integer g(0);
  for (const auto& c : ic) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (sgn(ic.back()) < 0) g = -g;
  for (auto& c : ic) c = exact_quotient(c, g);
  return ic;
}

/// Largest s with s^2 | n, returned with the squarefree cofactor.
inline std::pair<Integer, Integer> split_square(const Integer& n) {
  Integer s(1), r(1);
  for (const auto& [p, e] : factor_integer(n)) {
    s *= ipow(p, e / 2);
    if (e % 2) r *= p;
  }
  return {s, r};
}

}  // namespace detail

inline std::string AlgebraicClass::make_label() const {
  if (degree() == 1) return rational_value().get_str();
  if (degree() == 2) {
    // z^2 + b z + c: roots -b/2 +- sqrt(b^2/4 - c).
    const Rational b = minpoly_.coeff(1);
    const Rational c = minpoly_.coeff(0);
    const Rational centre = -b / 2;
    const Rational disc = b * b / 4 - c;
    if (sgn(disc) < 0) return "root of " + to_string(minpoly_);
    // sqrt(p/q) = sqrt(p q) / q = s sqrt(r) / q
    auto [s, r] = detail::split_square(Integer(disc.get_num() * disc.get_den()));
    const Rational half_width = make_rational(s, Integer(disc.get_den()));
    Integer den(1);
    mpz_lcm(den.get_mpz_t(), centre.get_den_mpz_t(), half_width.get_den_mpz_t());
    const Rational a = centre * den;
    const Rational w = half_width * den;
    std::string out = sgn(a) == 0 ? "±" : a.get_str() + "±";
    if (w != 1) out += w.get_str();
    out += "√" + r.get_str();
    if (den == 1) return out;
    return (sgn(a) == 0 && w == 1 ? out : "(" + out + ")") + "/" + den.get_str();
  }
  return "root of " + to_string(minpoly_);
}

/// Rational roots of p with multiplicity, ascending.
inline std::vector<std::pair<Rational, int>> rational_roots(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("rational roots of the zero polynomial");
  std::vector<std::pair<Rational, int>> out;
  RationalPolynomial rest = p;
  int zero_mult = 0;
  while (rest.degree() > 0 && sgn(rest.coeff(0)) == 0) {
    rest = rest / RationalPolynomial::x();
    ++zero_mult;
  }
  if (zero_mult > 0) out.emplace_back(Rational(0), zero_mult);
  if (rest.degree() < 1) return out;
  RationalPolynomial sq = squarefree_part(rest);
  std::vector<Integer> ic = detail::primitive_integer_coefficients(sq);
  std::vector<Integer> num_div = divisors(ic.front());
  std::vector<Integer> den_div = divisors(ic.back());
  std::vector<Rational> found;
  for (const auto& a : num_div) {
    for (const auto& b : den_div) {
      for (int s : {1, -1}) {
        Rational r = make_rational(Integer(s * a), b);
        if (std::find(found.begin(), found.end(), r) != found.end()) continue;
        if (sgn(sq(r)) == 0) found.push_back(r);
      }
    }
  }
  std::sort(found.begin(), found.end());
  for (const auto& r : found) {
    out.emplace_back(r, factor_multiplicity(RationalPolynomial{Rational(-r), Rational(1)}, rest));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

/// Number of distinct real roots of squarefree p in the half-open interval (lo, hi].
inline int count_real_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
  std::vector<RationalPolynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    RationalPolynomial r = seq[seq.size() - 2] % seq.back();
    seq.push_back(-r);
  }
  seq.pop_back();
  auto changes = [&](const Rational& x) {
    int count = 0;
    int last = 0;
    for (const auto& q : seq) {
      int s = sgn(q(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return changes(lo) - changes(hi);
}

/// Every root of the class is real and lies in [lo, hi].
inline bool all_roots_in(const AlgebraicClass& c, const Rational& lo, const Rational& hi) {
  int n = count_real_roots(c.minpoly(), lo, hi);
  if (sgn(c.minpoly()(lo)) == 0) ++n;
  return n == c.degree();
}

/// Complex roots of a polynomial by Aberth iteration in long double. Used only
/// to propose candidate factors, which are then verified exactly.
inline std::vector<std::complex<long double>> numeric_roots(const RationalPolynomial& p) {
  using C = std::complex<long double>;
  const int n = p.degree();
  std::vector<C> roots;
  if (n < 1) return roots;
  std::vector<long double> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = Rational(p.coeff(static_cast<std::size_t>(i)) / p.leading()).get_d();
  long double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::pow(std::fabs(c[static_cast<std::size_t>(i)]), 1.0L / (n - i)));
  radius = 2 * radius + 1;
  for (int k = 0; k < n; ++k) {
    long double ang = 6.283185307179586L * k / n + 0.4L;
    roots.emplace_back(radius * std::cos(ang), radius * std::sin(ang));
  }
  auto eval = [&](C x, C& d) {
    C v(1), dv(0);
    for (int i = n - 1; i >= 0; --i) {
      dv = dv * x + v;
      v = v * x + c[static_cast<std::size_t>(i)];
    }
    d = dv;
    return v;
  };
  for (int iter = 0; iter < 500; ++iter) {
    long double moved = 0;
    for (int k = 0; k < n; ++k) {
      C d;
      C v = eval(roots[static_cast<std::size_t>(k)], d);
      if (std::abs(v) == 0) continue;
      C ratio = v / d;
      C sum(0);
      for (int j = 0; j < n; ++j)
        if (j != k) sum += C(1) / (roots[static_cast<std::size_t>(k)] - roots[static_cast<std::size_t>(j)]);
      C step = ratio / (C(1) - ratio * sum);
      roots[static_cast<std::size_t>(k)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-30L) break;
  }
  return roots;
}

/// p(x) in long double complex arithmetic.
inline std::complex<long double> evaluate_numeric(const RationalPolynomial& p, std::complex<long double> x) {
  std::complex<long double> acc(0);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + static_cast<long double>(it->get_d());
  return acc;
}

namespace detail {

/// Looks for a monic quadratic factor of squarefree p with rational
/// coefficients by pairing numeric roots; every candidate is checked by exact
/// division.
inline std::optional<RationalPolynomial> find_quadratic_factor(const RationalPolynomial& p) {
  auto roots = numeric_roots(p);
  const std::vector<Integer> ic = primitive_integer_coefficients(p);
  const Integer lead = ic.back();
  const long double scale = lead.get_d();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      auto s = roots[i] + roots[j];
      auto q = roots[i] * roots[j];
      if (std::fabs(s.imag()) > 1e-8L * (1 + std::abs(s)) || std::fabs(q.imag()) > 1e-8L * (1 + std::abs(q))) continue;
      Rational sr = make_rational(Integer(static_cast<long>(std::llround(s.real() * scale))), lead);
      Rational qr = make_rational(Integer(static_cast<long>(std::llround(q.real() * scale))), lead);
      RationalPolynomial cand{qr, Rational(-sr), Rational(1)};
      if (divides(cand, p)) return cand;
    }
  }
  return std::nullopt;
}

}  // namespace detail

struct ClassFactor {
  AlgebraicClass cls;
  int multiplicity;
};

/// Splits p into conjugate classes with multiplicities: squarefree
/// decomposition, then rational roots, then quadratic factors. Leftover
/// factors of degree <= 3 are irreducible; larger leftovers are kept whole
/// and flagged as possibly reducible.
inline std::vector<ClassFactor> split_into_classes(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("splitting the zero polynomial");
  std::vector<ClassFactor> out;
  for (const auto& [f, mult] : squarefree_decomposition(p)) {
    RationalPolynomial rest = f;
    for (const auto& [r, k] : rational_roots(f)) {
      out.push_back({AlgebraicClass::rational(r), mult});
      rest = rest / RationalPolynomial{Rational(-r), Rational(1)};
    }
    while (rest.degree() >= 4) {
      auto q = detail::find_quadratic_factor(rest);
      if (!q) break;
      out.push_back({AlgebraicClass(*q), mult});
      rest = rest / *q;
    }
    if (rest.degree() >= 1) out.push_back({AlgebraicClass(rest, rest.degree() <= 3), mult});
  }
  std::sort(out.begin(), out.end(), [](const ClassFactor& a, const ClassFactor& b) {
    if (a.cls.degree() != b.cls.degree()) return a.cls.degree() < b.cls.degree();
    return a.cls.minpoly().coefficients() < b.cls.minpoly().coefficients();
  });
  return out;
}

/// Conjugate class of R(v) for v in c, or nullopt when R has a pole on c.
inline std::optional<AlgebraicClass> image_class(const AlgebraicClass& c, const RationalFunction& r) {
  if (c.divides(r.den())) return std::nullopt;
  RationalPolynomial res = resultant(lift_outer(c.minpoly()), fibre_equation(r.num(), r.den()), Eliminate::outer);
  return AlgebraicClass(squarefree_part(res), c.irreducible());
}

/// Polynomial whose roots (with multiplicity) are all t with R(t) in c:
/// den(t)^deg(c) * minpoly(num(t)/den(t)), made monic.
inline RationalPolynomial preimage_polynomial(const RationalPolynomial& target, const RationalFunction& r) {
  BivariatePolynomial inner_only{target};
  RationalPolynomial res = resultant(inner_only, fibre_equation(r.num(), r.den()), Eliminate::inner);
  return monic(res);
}

}  // namespace dtrees
