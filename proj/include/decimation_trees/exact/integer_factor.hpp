#pragma once

// Trial-division factorization for the small integers that occur in vertex
// degrees, eigenvalue norms and the decimation constants.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "decimation_trees/exact/rational.hpp"

namespace dtrees {

/// Prime factorization of |n| (n != 0) as ascending (prime, exponent) pairs.
/// Cofactors left after trial division up to `limit` are accepted only when
/// GMP reports them as (probable) primes.
inline std::vector<std::pair<Integer, unsigned long>> factor_integer(const Integer& n,
                                                                     unsigned long limit = 10'000'000UL) {
  if (n == 0) throw std::domain_error("factorization of zero");
  std::vector<std::pair<Integer, unsigned long>> out;
  Integer rest = abs(n);
  auto strip = [&](unsigned long p) {
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) return;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    out.emplace_back(Integer(p), e);
  };
  strip(2);
  strip(3);
  for (unsigned long p = 5; p <= limit; p += 6) {
    if (rest == 1) break;
    if (Integer(p) * Integer(p) > rest) break;
    strip(p);
    strip(p + 2);
  }
  if (rest > 1) {
    if (Integer(limit) * Integer(limit) <= rest && mpz_probab_prime_p(rest.get_mpz_t(), 40) == 0) {
      throw std::runtime_error("integer too large to factor by trial division: " + rest.get_str());
    }
    out.emplace_back(rest, 1);
  }
  return out;
}

/// All positive divisors of |n|, ascending.
inline std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> ds{Integer(1)};
  for (const auto& [p, e] : factor_integer(n)) {
    const std::size_t base = ds.size();
    Integer pk(1);
    for (unsigned long k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(Integer(ds[i] * pk));
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace dtrees
