#pragma once

// Sylvester resultants, univariate and bivariate.

#include <stdexcept>
#include <vector>

#include "decimation_trees/exact/matrix.hpp"
#include "decimation_trees/exact/polynomial.hpp"

namespace dtrees {

/// Sylvester matrix of p (degree m) and q (degree n): n shifted rows of p
/// followed by m shifted rows of q, coefficients highest degree first.
template <class T>
Matrix<T> sylvester_matrix(const Polynomial<T>& p, const Polynomial<T>& q) {
  const auto m = static_cast<std::size_t>(p.degree());
  const auto n = static_cast<std::size_t>(q.degree());
  Matrix<T> s(m + n, m + n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s(r, r + i) = p.coefficients()[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s(n + r, r + i) = q.coefficients()[n - i];
  return s;
}

/// Res(p, q) = lc(p)^deg(q) * prod q(roots of p), over any integral domain
/// with an exact_quotient overload.
template <class T>
T resultant(const Polynomial<T>& p, const Polynomial<T>& q) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("resultant of a zero polynomial");
  if (p.degree() == 0 && q.degree() == 0) throw std::domain_error("resultant of two constants");
  return bareiss_determinant(sylvester_matrix(p, q));
}

enum class Eliminate { outer, inner };

/// Exchanges the roles of the two variables of a bivariate polynomial.
inline BivariatePolynomial swap_variables(const BivariatePolynomial& f) {
  int inner_deg = -1;
  for (const auto& c : f.coefficients()) inner_deg = std::max(inner_deg, c.degree());
  if (inner_deg < 0) return {};
  std::vector<RationalPolynomial> out;
  for (int j = 0; j <= inner_deg; ++j) {
    std::vector<Rational> col;
    for (const auto& c : f.coefficients()) col.push_back(c.coeff(static_cast<std::size_t>(j)));
    out.emplace_back(std::move(col));
  }
  return BivariatePolynomial(std::move(out));
}

/// Resultant of two bivariate polynomials with one variable eliminated;
/// the result is a polynomial in the surviving variable.
inline RationalPolynomial resultant(const BivariatePolynomial& p, const BivariatePolynomial& q,
                                    Eliminate eliminate) {
  if (eliminate == Eliminate::inner) return resultant(swap_variables(p), swap_variables(q));
  return resultant(p, q);
}

/// Embeds p(t) as a bivariate polynomial in the outer variable t with
/// constant inner coefficients.
inline BivariatePolynomial lift_outer(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> c;
  for (const auto& v : p.coefficients()) c.emplace_back(v);
  return BivariatePolynomial(std::move(c));
}

/// num(t) - s * den(t) with t outer and s inner: the fibre equation of a
/// rational map t -> num(t)/den(t) over the value s.
inline BivariatePolynomial fibre_equation(const RationalPolynomial& num, const RationalPolynomial& den) {
  const int deg = std::max(num.degree(), den.degree());
  std::vector<RationalPolynomial> c;
  for (int i = 0; i <= deg; ++i) {
    const auto k = static_cast<std::size_t>(i);
    c.push_back(RationalPolynomial{num.coeff(k), Rational(-den.coeff(k))});
  }
  return BivariatePolynomial(std::move(c));
}

}  // namespace dtrees
