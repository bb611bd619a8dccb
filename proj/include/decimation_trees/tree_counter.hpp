#pragma once

// Spanning-tree counts of G_n in prime-factored form, assembled from degree
// statistics and the decimated spectrum without building G_n.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decimation_trees/decimation.hpp"
#include "decimation_trees/factored.hpp"
#include "decimation_trees/fractal_model.hpp"

namespace dtrees {

/// Product of the deg(base) * d^k preimages of a conjugate class under R:
/// norm(base) * c^(deg(base) (d^k - 1)/(d - 1)), c the ratio of preimage
/// product to image.
inline FactoredRational preiterate_product(const DecimationData& dd, const AlgebraicClass& base, int k) {
  if (k < 0) throw std::invalid_argument("negative preiterate depth");
  Rational norm = class_norm_product(base);
  if (sgn(norm) == 0) {
    if (k > 0) throw std::domain_error("preiterates of zero do not occur");
    throw std::domain_error("zero eigenvalue in product");
  }
  FactoredRational f = FactoredRational::from_rational(norm);
  if (k == 0) return f;
  Integer geometric(0);  // (d^k - 1)/(d - 1)
  for (int i = 0; i < k; ++i) geometric = geometric * dd.d + 1;
  return f * FactoredRational::from_rational(dd.preimage_ratio()).pow(Integer(geometric * base.degree()));
}

/// Counts for one structure, caching the decimation data between levels.
class TreeCounter {
 public:
  explicit TreeCounter(SelfSimilarStructure s) : s_(std::move(s)) {
    require_valid(s_);
    try {
      dd_ = derive(s_);
      plan_ = spectral_plan(*dd_);
    } catch (const std::invalid_argument& e) {
      dd_.reset();
      error_ = e.what();
    }
  }

  const SelfSimilarStructure& structure() const { return s_; }
  bool decimation_available() const { return dd_.has_value(); }
  const std::string& decimation_error() const { return error_; }
  const DecimationData& data() const {
    if (!dd_) throw std::invalid_argument("decimation unavailable for '" + s_.name + "': " + error_);
    return *dd_;
  }
  const SpectralPlan& plan() const {
    data();
    return *plan_;
  }
  bool cactus_available() const { return cells_form_tree(s_); }

  /// |V_0|^(|V_0| - 2) by Cayley's formula.
  FactoredInteger cayley() const {
    const auto v0 = static_cast<unsigned long>(s_.v0_size);
    if (v0 <= 2) return FactoredInteger();
    return FactoredInteger(FactoredRational::from_integer(Integer(v0)).pow(Integer(v0 - 2)));
  }

  /// Cells glued along a tree: tau(G_n) = tau(K_{|V_0|})^(m^n).
  FactoredInteger tau_cactus(int n) const {
    if (!cactus_available()) throw std::invalid_argument("cells of '" + s_.name + "' do not form a tree");
    const FactoredInteger base = cayley();
    FactoredRational c;
    for (const auto& [p, e] : base.factors()) c *= FactoredRational::from_integer(p).pow(e);
    return FactoredInteger(c.pow(ipow(Integer(static_cast<unsigned long>(s_.m)), static_cast<unsigned long>(n))));
  }

  /// Assembly: |prod d_j / sum d_j * prod of eigenvalue products|.
  FactoredInteger tau_decimation(int n) const {
    if (n < 0) throw std::invalid_argument("negative level");
    const DecimationData& dd = data();
    DegreeStats st = degree_stats(s_, n);
    FactoredRational acc;
    for (const auto& d : st.corner_degrees) acc *= FactoredRational::from_integer(d);
    for (const auto& [d, count] : st.interior_histogram) acc *= FactoredRational::from_integer(d).pow(count);
    Integer degree_sum = ipow(Integer(static_cast<unsigned long>(s_.m)), static_cast<unsigned long>(n)) *
                         static_cast<unsigned long>(s_.v0_size * (s_.v0_size - 1));
    if (degree_sum != st.degree_sum()) throw InconsistencyError("degree sum differs from twice the edge count");
    acc *= FactoredRational::from_integer(degree_sum).inverse();
    SpectrumTable tab = spectrum(dd, *plan_, n);
    for (const auto& e : tab.entries) acc *= preiterate_product(dd, e.base, e.depth).pow(e.mult);
    if (acc.sign() < 0) throw InconsistencyError("assembly mismatch: negative product at level " + std::to_string(n));
    if (!acc.is_integer()) throw InconsistencyError("assembly mismatch: non-integer count at level " + std::to_string(n));
    return FactoredInteger(acc);
  }

  /// tau(G_n): Cayley at n = 0, then decimation, else the tree-of-cells formula.
  FactoredInteger tau(int n) const {
    if (n < 0) throw std::invalid_argument("negative level");
    if (n == 0) return cayley();
    if (decimation_available()) return tau_decimation(n);
    if (cactus_available()) return tau_cactus(n);
    throw std::invalid_argument("no counting method for '" + s_.name + "': " + error_);
  }

  std::string method(int n) const {
    if (n == 0) return "cayley";
    if (decimation_available()) return "decimation";
    if (cactus_available()) return "tree of cells";
    return "none";
  }

 private:
  SelfSimilarStructure s_;
  std::optional<DecimationData> dd_;
  std::optional<SpectralPlan> plan_;
  std::string error_;
};

inline FactoredInteger tau(const SelfSimilarStructure& s, int n) { return TreeCounter(s).tau(n); }

/// Exponent of every prime that occurs, per level 0..n_max.
struct ExponentTable {
  std::vector<Integer> primes;
  std::vector<FactoredInteger> counts;

  Integer exponent(const Integer& p, int n) const { return counts.at(static_cast<std::size_t>(n)).exponent(p); }
};

inline ExponentTable exponent_table(const TreeCounter& counter, int n_max) {
  if (n_max < 0) throw std::invalid_argument("negative level");
  ExponentTable t;
  std::map<Integer, bool> seen;
  for (int n = 0; n <= n_max; ++n) {
    t.counts.push_back(counter.tau(n));
    for (const auto& [p, e] : t.counts.back().factors()) seen[p] = true;
  }
  for (const auto& [p, unused] : seen) t.primes.push_back(p);
  return t;
}

inline ExponentTable exponent_table(const SelfSimilarStructure& s, int n_max) {
  return exponent_table(TreeCounter(s), n_max);
}

}  // namespace dtrees
