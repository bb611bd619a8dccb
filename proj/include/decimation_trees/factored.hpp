#pragma once

// Prime-factored rationals. Spanning-tree counts grow like exp(c m^n), so they
// are assembled and reported as prime -> exponent maps and only materialized
// when small.

#include <map>
#include <stdexcept>
#include <string>

#include <mpfr.h>

#include "decimation_trees/exact/integer_factor.hpp"
#include "decimation_trees/exact/rational.hpp"

namespace dtrees {

class FactoredRational {
 public:
  FactoredRational() = default;

  static FactoredRational from_integer(const Integer& n) {
    if (n == 0) throw std::domain_error("cannot factor zero");
    FactoredRational f;
    f.sign_ = sgn(n) < 0 ? -1 : 1;
    for (const auto& [p, e] : factor_integer(n)) f.exponents_[p] += e;
    return f;
  }

  static FactoredRational from_rational(const Rational& r) {
    FactoredRational f = from_integer(Integer(r.get_num()));
    f *= from_integer(Integer(r.get_den())).inverse();
    return f;
  }

  int sign() const { return sign_; }
  const std::map<Integer, Integer>& exponents() const { return exponents_; }

  Integer exponent(const Integer& p) const {
    auto it = exponents_.find(p);
    return it == exponents_.end() ? Integer(0) : it->second;
  }

  FactoredRational inverse() const {
    FactoredRational f = *this;
    for (auto& [p, e] : f.exponents_) e = -e;
    return f;
  }

  FactoredRational& operator*=(const FactoredRational& o) {
    sign_ *= o.sign_;
    for (const auto& [p, e] : o.exponents_) exponents_[p] += e;
    normalize();
    return *this;
  }
  friend FactoredRational operator*(FactoredRational a, const FactoredRational& b) { return a *= b; }

  /// this^e for any integer e.
  FactoredRational pow(const Integer& e) const {
    FactoredRational f;
    if (sgn(e) == 0) return f;
    f.sign_ = (sign_ < 0 && mpz_odd_p(e.get_mpz_t())) ? -1 : 1;
    for (const auto& [p, x] : exponents_) f.exponents_[p] = x * e;
    return f;
  }

  FactoredRational abs() const {
    FactoredRational f = *this;
    f.sign_ = 1;
    return f;
  }

  bool is_integer() const {
    for (const auto& [p, e] : exponents_)
      if (sgn(e) < 0) return false;
    return true;
  }

  friend bool operator==(const FactoredRational&, const FactoredRational&) = default;

 private:
  void normalize() {
    for (auto it = exponents_.begin(); it != exponents_.end();) {
      if (sgn(it->second) == 0) it = exponents_.erase(it);
      else ++it;
    }
  }

  int sign_ = 1;
  std::map<Integer, Integer> exponents_;
};

/// A positive integer held as prime -> exponent.
class FactoredInteger {
 public:
  FactoredInteger() = default;

  /// Throws when f is not a positive integer.
  explicit FactoredInteger(const FactoredRational& f) {
    if (f.sign() < 0) throw std::domain_error("negative value where a positive integer was expected");
    if (!f.is_integer()) throw std::domain_error("non-integer value where a positive integer was expected");
    factors_ = f.exponents();
  }

  static FactoredInteger of(const Integer& n) { return FactoredInteger(FactoredRational::from_integer(n)); }

  const std::map<Integer, Integer>& factors() const { return factors_; }

  Integer exponent(const Integer& p) const {
    auto it = factors_.find(p);
    return it == factors_.end() ? Integer(0) : it->second;
  }

  /// log2 of the value, rounded up; cheap size estimate.
  double log2_estimate() const {
    double bits = 0;
    for (const auto& [p, e] : factors_) bits += e.get_d() * static_cast<double>(mpz_sizeinbase(p.get_mpz_t(), 2));
    return bits;
  }

  /// Materializes the value. Throws when it would exceed `max_bits`.
  Integer value(double max_bits = 1e7) const {
    if (log2_estimate() > max_bits) throw std::overflow_error("factored value too large to materialize");
    Integer v(1);
    for (const auto& [p, e] : factors_) v *= ipow(p, e.get_ui());
    return v;
  }

  /// "2^13 * 3^22 * 5^5"; the empty product renders as "1".
  std::string render() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& [p, e] : factors_) {
      if (!out.empty()) out += " * ";
      out += p.get_str() + "^" + e.get_str();
    }
    return out;
  }

  /// Number of decimal digits of the value.
  Integer digits() const {
    if (log2_estimate() < 200000) return Integer(value().get_str().size());
    if (factors_.size() == 2 && exponent(Integer(2)) == exponent(Integer(5)) && sgn(exponent(Integer(2))) > 0)
      return exponent(Integer(2)) + 1;
    mpfr_t acc, term, lp;
    const mpfr_prec_t prec = 256;
    mpfr_inits2(prec, acc, term, lp, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(acc, 1);
    for (const auto& [p, e] : factors_) {
      mpfr_set_z(lp, p.get_mpz_t(), MPFR_RNDN);
      mpfr_log10(lp, lp, MPFR_RNDN);
      mpfr_mul_z(term, lp, e.get_mpz_t(), MPFR_RNDN);
      mpfr_add(acc, acc, term, MPFR_RNDN);
    }
    mpfr_floor(acc, acc);
    Integer out;
    mpfr_get_z(out.get_mpz_t(), acc, MPFR_RNDN);
    mpfr_clears(acc, term, lp, static_cast<mpfr_ptr>(nullptr));
    return out + 1;
  }

  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

 private:
  std::map<Integer, Integer> factors_;
};

}  // namespace dtrees
