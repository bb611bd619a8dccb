#pragma once

// Arbitrary-precision integers and rationals.
//
// Both are thin aliases over GMP's C++ classes. mpq_class keeps values
// canonical (coprime numerator/denominator, positive denominator, 0 == 0/1)
// as long as every constructor path ends in canonicalize(), which the
// helpers below guarantee.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtrees {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (r.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not a rational number: " + std::string(text));
  }
  if (r.get_den() == 0) throw std::domain_error("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) { return v.get_str(); }

inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_one(const Rational& v) { return v == 1; }

// Exact quotient in an integral domain; used by fraction-free elimination,
// which is written once for integers, rationals and polynomial rings.
inline Integer exact_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Rational exact_quotient(const Rational& a, const Rational& b) {
  if (sgn(b) == 0) throw std::domain_error("division by zero");
  return Rational(a / b);
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational ipow(const Rational& base, long e) {
  if (e < 0) {
    if (sgn(base) == 0) throw std::domain_error("zero to a negative power");
    return ipow(Rational(1 / base), -e);
  }
  Integer n = ipow(Integer(base.get_num()), static_cast<unsigned long>(e));
  Integer d = ipow(Integer(base.get_den()), static_cast<unsigned long>(e));
  return make_rational(n, d);
}

}  // namespace dtrees
