#pragma once

// Tree entropy c_n = ln tau(G_n) / |V_n| in arbitrary precision, computed from
// prime exponents, and the general bounds on its limit.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <mpfr.h>

#include "decimation_trees/factored.hpp"
#include "decimation_trees/fractal_model.hpp"
#include "decimation_trees/tree_counter.hpp"

namespace dtrees {

/// Minimal RAII wrapper over an MPFR value.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_integer(const Integer& z, mpfr_prec_t bits) {
    BigFloat f(bits);
    mpfr_set_z(f.v_, z.get_mpz_t(), MPFR_RNDN);
    return f;
  }
  static BigFloat from_rational(const Rational& q, mpfr_prec_t bits) {
    BigFloat f(bits);
    mpfr_set_q(f.v_, q.get_mpq_t(), MPFR_RNDN);
    return f;
  }
  static BigFloat log(const Integer& z, mpfr_prec_t bits) {
    BigFloat f = from_integer(z, bits);
    mpfr_log(f.v_, f.v_, MPFR_RNDN);
    return f;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return a.apply(b, mpfr_add); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return a.apply(b, mpfr_sub); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return a.apply(b, mpfr_mul); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return a.apply(b, mpfr_div); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }

  BigFloat abs() const {
    BigFloat r(*this);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Fixed-point text with `digits` digits after the decimal point.
  std::string str(int digits) const {
    char* buf = nullptr;
    if (mpfr_asprintf(&buf, "%.*Rf", digits, v_) < 0) throw std::runtime_error("mpfr formatting failed");
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

 private:
  template <class Op>
  BigFloat apply(const BigFloat& b, Op op) const {
    BigFloat r(std::max(mpfr_get_prec(v_), mpfr_get_prec(b.v_)));
    op(r.v_, v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

/// Working precision in bits for `digits` decimal digits of c_n, with ten
/// guard digits and room for the size of the exponents.
inline mpfr_prec_t working_bits(int digits, double magnitude_bits = 0) {
  return static_cast<mpfr_prec_t>(std::ceil((digits + 10) * 3.3219280948873626) + magnitude_bits + 16);
}

/// ln of a factored positive integer.
inline BigFloat log_of(const FactoredInteger& f, mpfr_prec_t bits) {
  BigFloat acc(bits);
  for (const auto& [p, e] : f.factors()) acc = acc + BigFloat::log(p, bits) * BigFloat::from_integer(e, bits);
  return acc;
}

/// c_n = ln tau(G_n) / |V_n|.
inline BigFloat entropy_term(const FactoredInteger& tau_n, const Integer& vertices, int digits) {
  const mpfr_prec_t bits = working_bits(digits, std::log2(tau_n.log2_estimate() + 2));
  return log_of(tau_n, bits) / BigFloat::from_integer(vertices, bits);
}

struct EntropyBounds {
  bool applicable = false;
  double lower = 0;
  std::optional<double> upper;
  std::string reason;
};

inline bool level1_is_tree(const SelfSimilarStructure& s) {
  Graph g = make_graph(s.v1_size, s.edges1);
  return g.connected() && g.edge_count() + 1 == g.vertex_count;
}

/// ln(3)/2 <= c <= ln((m-1)|V_0|(|V_0|-1)/(|V_1|-|V_0|)) when |V_0| > 2 and G_1
/// is not a tree.
inline EntropyBounds bounds(const SelfSimilarStructure& s) {
  EntropyBounds b;
  b.lower = std::log(3.0) / 2;
  if (s.v0_size <= 2) {
    b.reason = "boundary has only " + std::to_string(s.v0_size) + " vertices";
    return b;
  }
  if (level1_is_tree(s)) {
    b.reason = "level-1 graph is a tree";
    return b;
  }
  b.applicable = true;
  const double num = static_cast<double>((s.m - 1) * s.v0_size * (s.v0_size - 1));
  b.upper = std::log(num / static_cast<double>(s.v1_size - s.v0_size));
  return b;
}

struct EntropyReport {
  int digits = 30;
  std::vector<std::pair<int, BigFloat>> values;
  EntropyBounds bounds;
  bool converging = false;  // |c_{n+1} - c_n| decreasing over the last five levels
  bool within_bounds = true;

  const BigFloat& extrapolated() const { return values.back().second; }
};

inline EntropyReport entropy(const TreeCounter& counter, int n_max, int digits = 30, int n_min = 2) {
  if (n_max < n_min) throw std::invalid_argument("entropy needs n_max >= " + std::to_string(n_min));
  if (digits < 6) throw std::invalid_argument("precision must be at least 6 digits");
  const auto& s = counter.structure();
  if (!counter.decimation_available() && !counter.cactus_available())
    throw std::invalid_argument("decimation unavailable for '" + s.name + "' (" + counter.decimation_error() +
                                "); use count or verify with a small level instead");
  EntropyReport rep;
  rep.digits = digits;
  for (int n = n_min; n <= n_max; ++n) rep.values.emplace_back(n, entropy_term(counter.tau(n), vertex_count(s, n), digits));
  rep.bounds = bounds(s);
  std::vector<BigFloat> diffs;
  for (std::size_t i = 1; i < rep.values.size(); ++i) diffs.push_back((rep.values[i].second - rep.values[i - 1].second).abs());
  rep.converging = diffs.size() >= 2;
  const std::size_t first = diffs.size() > 5 ? diffs.size() - 5 : 0;
  for (std::size_t i = first + 1; i < diffs.size(); ++i)
    if (!(diffs[i] <= diffs[i - 1])) rep.converging = false;
  if (rep.bounds.applicable) {
    // The bounds constrain the limit; c_n for a tree of cells approaches the
    // lower bound from below, so allow a small slack.
    const double c = rep.extrapolated().to_double();
    const double slack = 1e-9;
    rep.within_bounds = rep.bounds.lower - slack <= c && c <= *rep.bounds.upper + slack;
  }
  return rep;
}

inline EntropyReport entropy(const SelfSimilarStructure& s, int n_max, int digits = 30) {
  return entropy(TreeCounter(s), n_max, digits);
}

struct SharpnessDemo {
  std::vector<std::pair<int, double>> values;
  double target = 0;
  bool monotone = true;
  double final_gap = 0;
};

/// c_n for the three-cell tree of triangles, whose limit is the lower bound ln(3)/2.
inline SharpnessDemo tree_entropy_sharpness_demo(int n_max = 8) {
  TreeCounter counter(builtin("tree3"));
  SharpnessDemo demo;
  demo.target = std::log(3.0) / 2;
  for (int n = 0; n <= n_max; ++n) {
    double c = entropy_term(counter.tau_cactus(n), vertex_count(counter.structure(), n), 15).to_double();
    if (!demo.values.empty() && std::abs(c - demo.target) > std::abs(demo.values.back().second - demo.target))
      demo.monotone = false;
    demo.values.emplace_back(n, c);
  }
  demo.final_gap = std::abs(demo.values.back().second - demo.target);
  return demo;
}

}  // namespace dtrees
