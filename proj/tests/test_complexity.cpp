#include <gtest/gtest.h>

#include <cmath>

#include "decimation_trees/complexity.hpp"
#include "decimation_trees/kirchhoff.hpp"

using namespace dtrees;

namespace {

double c30(const std::string& name) { return entropy(builtin(name), 30, 30).extrapolated().to_double(); }

}  // namespace

TEST(Entropy, Constants) {
  const double ln2 = std::log(2.0), ln3 = std::log(3.0), ln5 = std::log(5.0), ln7 = std::log(7.0);
  EXPECT_NEAR(c30("sierpinski"), ln2 / 3 + ln3 / 2 + ln5 / 6, 1e-6);
  EXPECT_NEAR(c30("diamond"), ln2, 1e-6);
  EXPECT_NEAR(c30("nonpcf_sg"), 11 * ln2 / 10 + ln3 / 2 + ln5 / 5, 1e-6);
  // Limit of (2(6^n - 1)/5 ln2 + g_n ln3 + h_n ln7) / ((9 6^n + 6)/5).
  EXPECT_NEAR(c30("hexagasket"), 2 * ln2 / 9 + 8 * ln3 / 15 + ln7 / 45, 1e-6);
}

TEST(Entropy, HighPrecisionDigits) {
  auto rep = entropy(builtin("diamond"), 30, 40);
  std::string s = rep.extrapolated().str(40);
  EXPECT_EQ(s.substr(0, 8), "0.693147");
  EXPECT_EQ(rep.values.size(), 29u);
  EXPECT_EQ(rep.values.front().first, 2);
  EXPECT_TRUE(rep.converging);
}

TEST(Entropy, Diagnostics) {
  for (const std::string name : {"sierpinski", "nonpcf_sg", "hexagasket", "diamond"}) {
    auto rep = entropy(builtin(name), 30, 30);
    EXPECT_TRUE(rep.converging) << name;
    EXPECT_TRUE(rep.within_bounds) << name;
  }
  EXPECT_THROW(entropy(builtin("sierpinski"), 1, 30), std::invalid_argument);
  EXPECT_THROW(entropy(builtin("sierpinski"), 5, 3), std::invalid_argument);
}

TEST(Entropy, MatchesBruteForce) {
  for (const auto& name : builtin_names()) {
    TreeCounter counter(builtin(name));
    for (int n = 0; n <= 2; ++n) {
      auto g = build_level(builtin(name), n);
      double direct = std::log(tau_bruteforce(g).get_d()) / static_cast<double>(g.vertex_count);
      double via = entropy_term(counter.tau(n), vertex_count(builtin(name), n), 20).to_double();
      EXPECT_NEAR(via, direct, 1e-12) << name << " n=" << n;
    }
  }
}

TEST(Entropy, IntervalIsZero) {
  auto rep = entropy(builtin("interval"), 10, 20);
  for (const auto& [n, c] : rep.values) EXPECT_EQ(c.to_double(), 0.0) << n;
}

TEST(Bounds, Examples) {
  auto sg = bounds(builtin("sierpinski"));
  ASSERT_TRUE(sg.applicable);
  EXPECT_NEAR(sg.lower, 0.549306, 1e-6);
  EXPECT_NEAR(*sg.upper, std::log(4.0), 1e-12);

  auto np = bounds(builtin("nonpcf_sg"));
  ASSERT_TRUE(np.applicable);
  EXPECT_NEAR(*np.upper, std::log(7.5), 1e-12);
  EXPECT_NEAR(*np.upper, 2.014903, 1e-6);

  auto dia = bounds(builtin("diamond"));
  EXPECT_FALSE(dia.applicable);
  EXPECT_FALSE(dia.upper.has_value());
  EXPECT_FALSE(bounds(builtin("interval")).applicable);

  EXPECT_TRUE(bounds(builtin("hexagasket")).applicable);
  EXPECT_TRUE(bounds(builtin("tree3")).applicable);
}

TEST(Bounds, HoldAtThirty) {
  for (const auto& name : builtin_names()) {
    auto b = bounds(builtin(name));
    if (!b.applicable) continue;
    double c = c30(name);
    EXPECT_LE(b.lower - 1e-12, c) << name;
    EXPECT_LE(c, *b.upper) << name;
  }
}

TEST(Sharpness, TreeOfTriangles) {
  auto demo = tree_entropy_sharpness_demo(8);
  EXPECT_TRUE(demo.monotone);
  EXPECT_NEAR(demo.target, 0.549306, 1e-6);
  EXPECT_LT(std::abs(demo.values.at(5).second - demo.target), 1e-2);
  EXPECT_LT(demo.final_gap, 1e-3);
  for (const auto& [n, c] : demo.values) {
    double exact = std::pow(3.0, n) * std::log(3.0) / (1 + 2 * std::pow(3.0, n));
    EXPECT_NEAR(c, exact, 1e-12) << n;
  }
}
