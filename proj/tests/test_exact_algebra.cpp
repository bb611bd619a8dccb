#include <gtest/gtest.h>

#include <random>

#include "decimation_trees/exact/algebraic_class.hpp"
#include "decimation_trees/exact/matrix.hpp"
#include "decimation_trees/exact/rational_function.hpp"
#include "decimation_trees/exact/resultant.hpp"

using namespace dtrees;

namespace {

RationalPolynomial poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RationalPolynomial(std::move(v));
}

Rational q(long a, long b = 1) { return make_rational(a, b); }

RationalPolynomial z() { return RationalPolynomial::x(); }

Rational random_rational(std::mt19937_64& rng, long range = 50) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, range);
  return make_rational(num(rng), den(rng));
}

RationalPolynomial random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<Rational> c;
  int d = deg(rng);
  for (int i = 0; i <= d; ++i) c.push_back(random_rational(rng, 6));
  return RationalPolynomial(std::move(c));
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r = make_rational(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(make_rational(0, 7).get_den(), 1);
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
  EXPECT_EQ(parse_rational("-10/4"), q(-5, 2));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Rational, FieldAxiomsRandomized) {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 1000; ++i) {
    Rational a = random_rational(rng, 1000);
    Rational b = random_rational(rng, 1000);
    Rational c = random_rational(rng, 1000);
    EXPECT_EQ(Rational((a + b) + c), Rational(a + (b + c)));
    EXPECT_EQ(Rational((a * b) * c), Rational(a * (b * c)));
    EXPECT_EQ(Rational(a * (b + c)), Rational(a * b + a * c));
    EXPECT_EQ(Rational(a + b), Rational(b + a));
    EXPECT_EQ(Rational(a - a), Rational(0));
    if (sgn(a) != 0) {
      EXPECT_EQ(Rational(a * (1 / a)), Rational(1));
    }
    Rational s = a + b;
    EXPECT_EQ(gcd(Integer(s.get_num()), Integer(s.get_den())), 1);
    EXPECT_GT(s.get_den(), 0);
  }
}

TEST(Polynomial, ArithmeticAndDivision) {
  RationalPolynomial a = poly({-1, 0, 1});
  RationalPolynomial b = poly({-1, 1});
  auto [quo, rem] = divmod(a, b);
  EXPECT_EQ(quo, poly({1, 1}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(RationalPolynomial().degree(), -1);
  EXPECT_EQ(RationalPolynomial(std::vector<Rational>{q(0), q(0)}).degree(), -1);
  EXPECT_EQ(gcd(a, poly({1, 1}) * poly({2, 1})), poly({1, 1}));
  EXPECT_EQ(compose(poly({0, 0, 1}), poly({1, 1})), poly({1, 2, 1}));
  EXPECT_EQ(to_string(poly({0, 5, -4})), "-4*z^2 + 5*z");
  EXPECT_THROW(divmod(a, RationalPolynomial()), std::domain_error);
}

TEST(Polynomial, SquarefreeDecomposition) {
  RationalPolynomial p = pow(z() - RationalPolynomial(q(1)), 3) * poly({-2, 0, 1}) * pow(z(), 2);
  auto sf = squarefree_decomposition(p);
  ASSERT_EQ(sf.size(), 3U);
  EXPECT_EQ(sf[0].first, poly({-2, 0, 1}));
  EXPECT_EQ(sf[0].second, 1);
  EXPECT_EQ(sf[1].first, z());
  EXPECT_EQ(sf[2].second, 3);
  EXPECT_TRUE(is_squarefree(squarefree_part(p)));
}

TEST(RationalFunction, ReduceCommonFactor) {
  RationalFunction f = RationalFunction::reduce(poly({-1, 0, 1}), poly({-1, 1}));
  EXPECT_EQ(f.num(), poly({1, 1}));
  EXPECT_EQ(f.den(), poly({1}));
}

TEST(RationalFunction, ReduceZeroNumerator) {
  RationalFunction f = RationalFunction::reduce(RationalPolynomial(), poly({1, 3}));
  EXPECT_TRUE(f.num().is_zero());
  EXPECT_EQ(f.den(), poly({1}));
}

TEST(RationalFunction, ReduceZeroDenominatorThrows) {
  EXPECT_THROW(RationalFunction::reduce(poly({1}), RationalPolynomial()), std::domain_error);
}

TEST(RationalFunction, ReduceSierpinskiMap) {
  // (z(5-4z)) (2z-1)(4z-5) / ((2z-1)(4z-5)), as produced before cancellation.
  RationalPolynomial common = poly({-1, 2}) * poly({-5, 4});
  RationalFunction f = RationalFunction::reduce(poly({0, 5, -4}) * common, common.scaled(q(3)));
  EXPECT_EQ(f.num(), poly({0, 5, -4}).scaled(q(1, 3)));
  f = RationalFunction::reduce(poly({0, 5, -4}) * common, common);
  EXPECT_EQ(f.num(), poly({0, 5, -4}));
  EXPECT_EQ(f.den(), poly({1}));
}

TEST(RationalFunction, ReduceIsIdempotentAndMonic) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    RationalPolynomial n = random_poly(rng, 4);
    RationalPolynomial d = random_poly(rng, 4);
    if (d.is_zero()) continue;
    RationalPolynomial g = random_poly(rng, 2);
    if (g.is_zero()) continue;
    RationalFunction f = RationalFunction::reduce(n * g, d * g);
    RationalFunction again = RationalFunction::reduce(f.num(), f.den());
    EXPECT_EQ(f, again);
    EXPECT_EQ(f.den().leading(), 1);
    EXPECT_LE(gcd(f.num(), f.den()).degree(), 0);
    Rational x = random_rational(rng);
    if (sgn(d(x)) != 0 && sgn(g(x)) != 0) {
      auto v = f.evaluate(x);
      ASSERT_TRUE(v.has_value());
      EXPECT_EQ(*v, Rational(n(x) / d(x)));
    }
  }
}

TEST(Matrix, BareissMatchesRationalDeterminant) {
  IntegerMatrix m(3, 3, {Integer(2), Integer(-1), Integer(0), Integer(-1), Integer(2), Integer(-1), Integer(0),
                         Integer(-1), Integer(2)});
  EXPECT_EQ(bareiss_determinant(m), 4);
  IntegerMatrix swap(2, 2, {Integer(0), Integer(1), Integer(1), Integer(0)});
  EXPECT_EQ(bareiss_determinant(swap), -1);
  RationalMatrix r(2, 2, {q(1, 2), q(1, 3), q(1, 4), q(1, 5)});
  EXPECT_EQ(determinant(r), q(1, 10) - q(1, 12));
}

TEST(Matrix, BareissThreadedAgrees) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> e(-3, 3);
  const std::size_t n = 90;
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Integer(e(rng));
  EXPECT_EQ(bareiss_determinant(m, 1), bareiss_determinant(m, 4));
}

TEST(Charpoly, Identity) {
  RationalPolynomial p = charpoly(RationalMatrix::identity(2));
  EXPECT_EQ(p, poly({1, -2, 1}));
}

TEST(Charpoly, ProbabilisticLaplacianOfTriangle) {
  RationalMatrix p0(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) p0(i, j) = i == j ? q(1) : q(-1, 2);
  RationalPolynomial expected = -(z() * pow(RationalPolynomial(q(3, 2)) - z(), 2));
  EXPECT_EQ(charpoly(p0), expected);
}

TEST(Charpoly, FourCycle) {
  RationalMatrix p(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    p(i, i) = q(1);
    p(i, (i + 1) % 4) = q(-1, 2);
    p(i, (i + 3) % 4) = q(-1, 2);
  }
  auto roots = rational_roots(charpoly(p));
  ASSERT_EQ(roots.size(), 3U);
  EXPECT_EQ(roots[0], std::make_pair(q(0), 1));
  EXPECT_EQ(roots[1], std::make_pair(q(1), 2));
  EXPECT_EQ(roots[2], std::make_pair(q(2), 1));
}

TEST(Charpoly, NonSquareThrows) { EXPECT_THROW(charpoly(RationalMatrix(2, 3)), std::invalid_argument); }

TEST(Charpoly, AgreesWithBareissRandomized) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = dim(rng);
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, 9);
    RationalPolynomial cp = charpoly(m);
    EXPECT_EQ(cp.degree(), static_cast<int>(n));
    EXPECT_EQ(cp(q(0)), determinant(m));
    for (int k = 0; k < 3; ++k) {
      Rational x = random_rational(rng, 9);
      EXPECT_EQ(cp(x), determinant(m - x * RationalMatrix::identity(n)));
    }
  }
}

TEST(Resultant, LinearFactors) {
  EXPECT_EQ(resultant(poly({-2, 1}), poly({-3, 1})), -1);
  EXPECT_EQ(resultant(poly({-2, 0, 1}), poly({-1, 1})), -1);
  EXPECT_THROW(resultant(poly({2}), poly({3})), std::domain_error);
  EXPECT_THROW(resultant(RationalPolynomial(), poly({1, 1})), std::domain_error);
}

TEST(Resultant, ZeroIffCommonFactorRandomized) {
  std::mt19937_64 rng(31337);
  int zero_cases = 0;
  for (int t = 0; t < 300; ++t) {
    RationalPolynomial p = random_poly(rng, 3);
    RationalPolynomial r = random_poly(rng, 3);
    if (t % 3 == 0) {
      RationalPolynomial g = poly({static_cast<long>(t % 7) - 3, 1});
      p = p * g;
      r = r * g;
    }
    if (p.is_zero() || r.is_zero() || (p.degree() == 0 && r.degree() == 0)) continue;
    bool common = gcd(p, r).degree() > 0;
    if (common) ++zero_cases;
    EXPECT_EQ(sgn(resultant(p, r)) == 0, common);
  }
  EXPECT_GT(zero_cases, 50);
}

TEST(Resultant, BivariateImageOfConjugatePair) {
  // R(z) = 2z(z-1)(16z^2-24z+7)/(2z-1) vanishes on both roots of 16z^2-24z+7.
  RationalPolynomial num = poly({0, 2}) * poly({-1, 1}) * poly({7, -24, 16});
  RationalFunction r = RationalFunction::reduce(num, poly({-1, 2}));
  RationalPolynomial mp = monic(poly({7, -24, 16}));
  RationalPolynomial res = resultant(lift_outer(mp), fibre_equation(r.num(), r.den()), Eliminate::outer);
  EXPECT_EQ(monic(res), pow(z(), 2));
  auto image = image_class(AlgebraicClass(mp), r);
  ASSERT_TRUE(image.has_value());
  EXPECT_EQ(image->minpoly(), z());
}

TEST(Resultant, ImageAgreesWithNumericRoots) {
  RationalFunction r(poly({0, 5, -4}));
  AlgebraicClass c(poly({-2, 0, 1}));
  auto image = image_class(c, r);
  ASSERT_TRUE(image.has_value());
  for (auto root : numeric_roots(c.minpoly())) {
    auto y = root * (5.0L - 4.0L * root);
    auto v = evaluate_numeric(image->minpoly(), y);
    EXPECT_LT(std::abs(v), 1e-9L);
  }
}

TEST(RationalRoots, Examples) {
  RationalPolynomial p = -(z() * pow(RationalPolynomial(q(3, 2)) - z(), 2));
  auto roots = rational_roots(p);
  ASSERT_EQ(roots.size(), 2U);
  EXPECT_EQ(roots[0], std::make_pair(q(0), 1));
  EXPECT_EQ(roots[1], std::make_pair(q(3, 2), 2));
  EXPECT_TRUE(rational_roots(poly({7, -24, 16})).empty());
  EXPECT_THROW(rational_roots(RationalPolynomial()), std::domain_error);
}

TEST(RationalRoots, SierpinskiPreimageOfThreeQuarters) {
  RationalPolynomial p = RationalPolynomial{q(3, 4), q(-5), q(4)};
  EXPECT_TRUE(rational_roots(p).empty());
  auto classes = split_into_classes(p);
  ASSERT_EQ(classes.size(), 1U);
  EXPECT_EQ(class_norm_product(classes[0].cls), q(3, 16));
}

TEST(RationalRoots, RemainderHasNoRationalRoot) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    RationalPolynomial p = random_poly(rng, 3) * poly({static_cast<long>(t % 5) - 2, 3});
    if (p.is_zero()) continue;
    RationalPolynomial rest = p;
    for (const auto& [r, k] : rational_roots(p)) {
      EXPECT_EQ(sgn(p(r)), 0);
      for (int i = 0; i < k; ++i) rest = exact_quotient(rest, RationalPolynomial{Rational(-r), q(1)});
    }
    EXPECT_TRUE(rest.degree() < 1 || rational_roots(rest).empty());
  }
}

TEST(AlgebraicClass, NormProduct) {
  EXPECT_EQ(class_norm_product(AlgebraicClass::rational(q(3, 4))), q(3, 4));
  EXPECT_EQ(class_norm_product(AlgebraicClass(RationalPolynomial{q(7, 16), q(-3, 2), q(1)})), q(7, 16));
  EXPECT_EQ(class_norm_product(AlgebraicClass(poly({-2, 0, 1}))), q(-2));
  std::mt19937_64 rng(77);
  for (int t = 0; t < 50; ++t) {
    Rational r = random_rational(rng);
    EXPECT_EQ(class_norm_product(AlgebraicClass::rational(r)), r);
  }
}

TEST(AlgebraicClass, Labels) {
  EXPECT_EQ(AlgebraicClass(poly({7, -24, 16})).label(), "(3±√2)/4");
  EXPECT_EQ(AlgebraicClass(poly({1, -6, 4})).label(), "(3±√5)/4");
  EXPECT_EQ(AlgebraicClass(poly({-2, 0, 1})).label(), "±√2");
  EXPECT_EQ(AlgebraicClass::rational(q(3, 2)).label(), "3/2");
}

TEST(AlgebraicClass, RejectsBadPolynomials) {
  EXPECT_THROW(AlgebraicClass(poly({1})), std::invalid_argument);
  EXPECT_THROW(AlgebraicClass(pow(poly({-1, 1}), 2)), std::invalid_argument);
}

TEST(AlgebraicClass, SturmCounting) {
  AlgebraicClass c(poly({7, -24, 16}));
  EXPECT_TRUE(all_roots_in(c, q(0), q(2)));
  EXPECT_FALSE(all_roots_in(AlgebraicClass(poly({1, 0, 1})), q(-5), q(5)));
  EXPECT_FALSE(all_roots_in(AlgebraicClass(poly({-5, 1})), q(0), q(2)));
  EXPECT_TRUE(all_roots_in(AlgebraicClass(poly({0, 1})), q(0), q(2)));
  EXPECT_EQ(count_real_roots(poly({-2, 0, 1}), q(-2), q(2)), 2);
}

TEST(AlgebraicClass, SplitsQuadraticFactors) {
  RationalPolynomial p = poly({7, -24, 16}) * poly({1, -6, 4}) * poly({-3, 2}) * poly({-3, 2});
  auto classes = split_into_classes(p);
  ASSERT_EQ(classes.size(), 3U);
  EXPECT_EQ(classes[0].cls.label(), "3/2");
  EXPECT_EQ(classes[0].multiplicity, 2);
  EXPECT_TRUE(classes[1].cls.irreducible());
  EXPECT_TRUE(classes[2].cls.irreducible());
}

TEST(AlgebraicClass, PreimagePolynomial) {
  RationalFunction r(poly({0, 5, -4}));
  RationalPolynomial pre = preimage_polynomial(poly({-3, 4}), r);
  EXPECT_EQ(pre, monic(RationalPolynomial{q(3, 4), q(-5), q(4)}));
}
