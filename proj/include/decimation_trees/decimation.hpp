#pragma once

// Spectral decimation: the Schur complement of P_1 onto the boundary, the
// functions phi and R it factors into, classification of exceptional values
// and the level-by-level multiplicity induction giving the spectrum of P_n.

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "decimation_trees/exact/algebraic_class.hpp"
#include "decimation_trees/exact/matrix.hpp"
#include "decimation_trees/exact/rational_function.hpp"
#include "decimation_trees/fractal_model.hpp"
#include "decimation_trees/kirchhoff.hpp"

namespace dtrees {

using FunctionMatrix = Matrix<RationalFunction>;

/// Raised when derived data contradicts an internal consistency check.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecimationData {
  SelfSimilarStructure structure;
  RationalMatrix p1;
  FunctionMatrix schur;
  RationalFunction phi;
  RationalFunction r;
  RationalPolynomial r_raw_num;
  RationalPolynomial r_raw_den;
  int d = 0;
  // Read off with the denominator of R scaled to a primitive integer
  // polynomial with positive leading coefficient.
  Rational q0;
  Rational pd;
  RationalPolynomial chi_d;  // det(D - zI)
  std::vector<ClassFactor> sigma_d;
  std::vector<AlgebraicClass> exceptional;

  /// Product of the d roots of R(z) = beta, divided by beta.
  Rational preimage_ratio() const {
    Rational c = q0 / pd;
    return d % 2 == 0 ? Rational(-c) : c;
  }
};

/// Probabilistic Laplacian of the complete graph on k vertices.
inline RationalMatrix complete_p0(std::size_t k) {
  RationalMatrix p(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) p(i, j) = i == j ? Rational(1) : make_rational(-1, static_cast<long>(k - 1));
  return p;
}

/// S(z) == phi(z) (P_0 - R(z) I), entry by entry.
inline bool schur_identity_holds(const FunctionMatrix& schur, const RationalFunction& phi, const RationalFunction& r) {
  RationalMatrix p0 = complete_p0(schur.rows());
  for (std::size_t i = 0; i < schur.rows(); ++i) {
    for (std::size_t j = 0; j < schur.cols(); ++j) {
      RationalFunction expected = phi * (RationalFunction(p0(i, j)) - (i == j ? r : RationalFunction()));
      if (schur(i, j) != expected) return false;
    }
  }
  return true;
}

inline bool schur_identity_holds(const DecimationData& dd) { return schur_identity_holds(dd.schur, dd.phi, dd.r); }

inline DecimationData derive(const SelfSimilarStructure& s) {
  require_valid(s);
  DecimationData dd;
  dd.structure = s;
  Graph g1 = make_graph(s.v1_size, s.edges1);
  dd.p1 = probabilistic_laplacian(g1);

  std::vector<std::size_t> bd(s.boundary.begin(), s.boundary.end());
  std::vector<std::size_t> in;
  for (std::size_t x = 0; x < s.v1_size; ++x)
    if (std::find(bd.begin(), bd.end(), x) == bd.end()) in.push_back(x);
  if (in.empty()) throw std::invalid_argument("structure has no interior vertices to decimate");

  RationalMatrix a = dd.p1.select(bd, bd);
  if (!(a == RationalMatrix::identity(bd.size()))) throw std::invalid_argument("boundary adjacency");
  RationalMatrix b = dd.p1.select(bd, in);
  RationalMatrix c = dd.p1.select(in, bd);
  RationalMatrix dm = dd.p1.select(in, in);

  auto lift = [](const RationalMatrix& m) { return m.map<RationalFunction>([](const Rational& v) { return RationalFunction(v); }); };
  const RationalFunction z(RationalPolynomial::x());
  FunctionMatrix d_shift = lift(dm) - z * FunctionMatrix::identity(in.size());
  FunctionMatrix a_shift = lift(a) - z * FunctionMatrix::identity(bd.size());
  dd.schur = a_shift - lift(b) * solve(d_shift, lift(c));

  dd.phi = RationalFunction(Rational(-static_cast<long>(s.v0_size - 1))) * dd.schur(0, 1);
  if (dd.phi.is_zero()) throw std::invalid_argument("not fully symmetric: off-diagonal Schur entry vanishes");
  dd.r = RationalFunction(1) - dd.schur(0, 0) / dd.phi;
  if (!schur_identity_holds(dd)) throw std::invalid_argument("not fully symmetric: Schur complement does not factor");

  dd.chi_d = charpoly(dm);
  // Raw pair before cancellation: (Phi - Sigma) / Phi with Phi = phi chi_D and
  // Sigma = S_11 chi_D, both polynomials.
  RationalFunction phi_big = dd.phi * RationalFunction(dd.chi_d);
  RationalFunction sigma_big = dd.schur(0, 0) * RationalFunction(dd.chi_d);
  if (phi_big.den().degree() != 0 || sigma_big.den().degree() != 0)
    throw InconsistencyError("Schur complement entries are not polynomial after clearing chi_D");
  dd.r_raw_den = phi_big.num();
  dd.r_raw_num = phi_big.num() - sigma_big.num();

  const RationalPolynomial& num = dd.r.num();
  const RationalPolynomial& den = dd.r.den();
  if (sgn(num.coeff(0)) != 0) throw InconsistencyError("R(0) != 0");
  if (num.degree() <= den.degree()) throw InconsistencyError("numerator of R does not dominate its denominator");
  dd.d = std::max(num.degree(), den.degree());

  std::vector<Integer> qi = detail::primitive_integer_coefficients(den);
  Rational scale = make_rational(qi.back(), Integer(1)) / den.leading();
  dd.q0 = Rational(qi.front());
  dd.pd = num.leading() * scale;

  dd.sigma_d = split_into_classes(dd.chi_d);
  for (const auto& cf : dd.sigma_d) dd.exceptional.push_back(cf.cls);
  if (dd.phi.num().degree() > 0) {
    for (const auto& cf : split_into_classes(dd.phi.num())) {
      if (std::find(dd.exceptional.begin(), dd.exceptional.end(), cf.cls) == dd.exceptional.end())
        dd.exceptional.push_back(cf.cls);
    }
  }
  return dd;
}

struct CasePredicates {
  bool in_sigma_d = false;
  bool phi_zero = false;
  bool phi_pole = false;
  bool phi_r_pole = false;
  bool r_removable = false;
  bool r_pole = false;
  bool dr_nonzero = true;
};

struct CaseRecord {
  AlgebraicClass value;
  CasePredicates predicates;
  int mult_d = 0;
  int case_id = 0;  // 1..8
  std::optional<AlgebraicClass> image;
};

/// Decides the induction rule that applies to a conjugate class. A pole of
/// phi R is reported but not used: when phi has a pole the value is treated
/// as rule 3 or 6 whenever R itself is finite there.
inline CaseRecord classify(const DecimationData& dd, const AlgebraicClass& v) {
  CaseRecord rec{v, {}, 0, 0, std::nullopt};
  CasePredicates& p = rec.predicates;
  p.in_sigma_d = v.divides(dd.chi_d);
  rec.mult_d = p.in_sigma_d ? factor_multiplicity(v.minpoly(), dd.chi_d) : 0;
  p.phi_zero = !dd.phi.num().is_zero() && v.divides(dd.phi.num());
  p.phi_pole = v.divides(dd.phi.den());
  p.phi_r_pole = v.divides((dd.phi * dd.r).den());
  p.r_removable = v.divides(gcd(dd.r_raw_num, dd.r_raw_den));
  p.r_pole = v.divides(dd.r.den());
  if (!p.r_pole) {
    RationalPolynomial dnum = dd.r.num().derivative() * dd.r.den() - dd.r.num() * dd.r.den().derivative();
    p.dr_nonzero = dnum.is_zero() ? false : !v.divides(dnum);
    rec.image = image_class(v, dd.r);
  }

  auto fail = [&](const std::string& why) -> CaseRecord {
    throw InconsistencyError("unclassifiable value " + v.label() + ": " + why);
  };
  if (!p.in_sigma_d) {
    if (p.phi_pole) return fail("phi has a pole outside the spectrum of D");
    if (!p.phi_zero) rec.case_id = 1;
    else rec.case_id = p.r_pole ? 7 : 2;
  } else if (p.phi_pole) {
    if (p.r_pole) return fail("phi and R both have poles");
    rec.case_id = p.dr_nonzero ? 3 : 6;
  } else if (!p.phi_zero) {
    if (p.r_pole) return fail("R has a pole where phi is finite and nonzero");
    rec.case_id = 4;
  } else {
    rec.case_id = p.r_pole ? 8 : 5;
  }
  return rec;
}

/// Multiplicity at level n (n >= 1) under the rule for case_id.
inline Integer case_multiplicity(int case_id, const Integer& m_pow, int mult_d, const Integer& v_prev,
                                 const Integer& image_mult) {
  const Integer md = m_pow * mult_d;
  switch (case_id) {
    case 1: return image_mult;
    case 2: return v_prev;
    case 3: return md - v_prev + image_mult;
    case 4: return md + image_mult;
    case 5: return md + v_prev + image_mult;
    case 6: return md - v_prev + 2 * image_mult;
    case 7: return Integer(0);
    case 8: return md;
    default: throw std::logic_error("bad case id");
  }
}

/// A class whose multiplicity is followed explicitly through the induction.
struct TrackedClass {
  AlgebraicClass cls;
  bool exceptional = false;
  std::optional<CaseRecord> record;
  std::optional<std::size_t> image;  // index into tracked, when R(cls) is tracked
  bool a_type = false;               // some preimage under R is tracked
  std::vector<AlgebraicClass> derived;
};

/// Everything about the induction that does not depend on n.
struct SpectralPlan {
  std::vector<TrackedClass> tracked;  // tracked[0] is 0, tracked[1] is the level-0 eigenvalue
  std::size_t seed_index = 1;
};

namespace detail {

inline std::optional<std::size_t> find_class(const std::vector<TrackedClass>& t, const AlgebraicClass& c) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].cls == c) return i;
  return std::nullopt;
}

}  // namespace detail

/// Tracks the closure of {0, |V_0|/(|V_0|-1)} and the exceptional set under R.
/// Images with a root that is not real or lies outside [0, 2] cannot be
/// eigenvalues and are dropped.
inline SpectralPlan spectral_plan(const DecimationData& dd, std::size_t max_tracked = 64) {
  SpectralPlan plan;
  const long v0 = static_cast<long>(dd.structure.v0_size);
  std::vector<AlgebraicClass> queue{AlgebraicClass::rational(Rational(0)),
                                    AlgebraicClass::rational(make_rational(v0, v0 - 1))};
  for (const auto& e : dd.exceptional) queue.push_back(e);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    if (detail::find_class(plan.tracked, queue[qi])) continue;
    if (plan.tracked.size() >= max_tracked) throw InconsistencyError("orbit of exceptional values does not close");
    TrackedClass t{queue[qi], false, std::nullopt, std::nullopt, false, {}};
    t.exceptional = std::find(dd.exceptional.begin(), dd.exceptional.end(), t.cls) != dd.exceptional.end();
    plan.tracked.push_back(t);
    if (!t.cls.divides(dd.r.den())) {
      AlgebraicClass img = *image_class(t.cls, dd.r);
      if (all_roots_in(img, Rational(0), Rational(2))) queue.push_back(img);
    }
  }
  for (auto& t : plan.tracked) {
    if (t.exceptional) t.record = classify(dd, t.cls);
    if (!t.cls.divides(dd.r.den())) t.image = detail::find_class(plan.tracked, *image_class(t.cls, dd.r));
  }
  // Preimages: split off tracked classes; the rest are derived bases.
  for (auto& t : plan.tracked) {
    RationalPolynomial pre = preimage_polynomial(t.cls.minpoly(), dd.r);
    for (const auto& u : plan.tracked) {
      int k = factor_multiplicity(u.cls.minpoly(), pre);
      if (k == 0) continue;
      t.a_type = true;
      for (int i = 0; i < k; ++i) pre = pre / u.cls.minpoly();
    }
    if (!t.a_type || pre.degree() < 1) continue;
    if (!is_squarefree(pre)) throw InconsistencyError("repeated preimage of " + t.cls.label() + " outside tracked classes");
    for (const auto& cf : split_into_classes(pre)) t.derived.push_back(cf.cls);
  }
  return plan;
}

/// mult[n][i] for tracked class i at levels 0..n.
inline std::vector<std::vector<Integer>> tracked_multiplicities(const DecimationData& dd, const SpectralPlan& plan, int n) {
  const auto& s = dd.structure;
  std::vector<std::vector<Integer>> mult(static_cast<std::size_t>(n) + 1,
                                         std::vector<Integer>(plan.tracked.size(), Integer(0)));
  mult[0][0] = 1;
  mult[0][plan.seed_index] = static_cast<unsigned long>(s.v0_size - 1);
  Integer m_pow(1);
  Integer v_prev(static_cast<unsigned long>(s.v0_size));
  for (int level = 1; level <= n; ++level) {
    const auto& prev = mult[static_cast<std::size_t>(level - 1)];
    auto& cur = mult[static_cast<std::size_t>(level)];
    for (std::size_t i = 0; i < plan.tracked.size(); ++i) {
      const TrackedClass& t = plan.tracked[i];
      Integer image_mult = t.image ? prev[*t.image] : Integer(0);
      if (i == 0) {
        cur[i] = 1;
      } else if (t.record) {
        cur[i] = case_multiplicity(t.record->case_id, m_pow, t.record->mult_d, v_prev, image_mult);
      } else {
        cur[i] = image_mult;
      }
      if (sgn(cur[i]) < 0)
        throw InconsistencyError("inconsistent induction: negative multiplicity for " + t.cls.label() + " at level " +
                                 std::to_string(level));
    }
    v_prev = v_prev * static_cast<unsigned long>(s.m) - Integer(static_cast<unsigned long>(s.m * s.v0_size)) +
             static_cast<unsigned long>(s.v1_size);
    m_pow *= static_cast<unsigned long>(s.m);
  }
  return mult;
}

struct SpectrumEntry {
  AlgebraicClass base;
  int depth = 0;
  Integer mult;
};

struct SpectrumTable {
  int level = 0;
  int d = 0;
  std::vector<SpectrumEntry> entries;
  Integer zero_mult{1};

  /// 1 + sum of mult * deg(base) * d^depth.
  Integer eigenvalue_count() const {
    Integer total = zero_mult;
    for (const auto& e : entries) total += e.mult * e.base.degree() * ipow(Integer(d), static_cast<unsigned long>(e.depth));
    return total;
  }

  Integer multiplicity(const AlgebraicClass& base, int depth) const {
    for (const auto& e : entries)
      if (e.base == base && e.depth == depth) return e.mult;
    return Integer(0);
  }
};

inline SpectrumTable spectrum(const DecimationData& dd, const SpectralPlan& plan, int n) {
  if (n < 0) throw std::invalid_argument("negative level");
  auto mult = tracked_multiplicities(dd, plan, n);
  SpectrumTable tab;
  tab.level = n;
  tab.d = dd.d;
  auto add = [&](const AlgebraicClass& b, int k, const Integer& m) {
    if (sgn(m) > 0) tab.entries.push_back({b, k, m});
  };
  for (std::size_t i = 0; i < plan.tracked.size(); ++i) {
    const TrackedClass& t = plan.tracked[i];
    if (t.a_type) {
      if (i != 0) add(t.cls, 0, mult[static_cast<std::size_t>(n)][i]);
      for (const auto& b : t.derived)
        for (int k = 0; k < n; ++k) add(b, k, mult[static_cast<std::size_t>(n - 1 - k)][i]);
    } else {
      for (int k = 0; k <= n; ++k) add(t.cls, k, mult[static_cast<std::size_t>(n - k)][i]);
    }
  }
  if (tab.eigenvalue_count() != vertex_count(dd.structure, n))
    throw InconsistencyError("sum rule fails at level " + std::to_string(n) + ": " + tab.eigenvalue_count().get_str() +
                             " eigenvalues for " + vertex_count(dd.structure, n).get_str() + " vertices");
  return tab;
}

inline SpectrumTable spectrum(const DecimationData& dd, int n) { return spectrum(dd, spectral_plan(dd), n); }

/// Polynomial whose roots are the d^k preimages of the class under R.
inline RationalPolynomial preiterate_polynomial(const DecimationData& dd, const AlgebraicClass& base, int k) {
  RationalPolynomial p = base.minpoly();
  for (int i = 0; i < k; ++i) p = preimage_polynomial(p, dd.r);
  return p;
}

struct CrosscheckResult {
  bool ok = false;
  std::string report;
};

/// Compares the characteristic polynomial of P_n on the built graph with the
/// product predicted by the spectrum table.
inline CrosscheckResult crosscheck_spectrum(const DecimationData& dd, const SpectrumTable& tab) {
  LevelGraph g = build_level(dd.structure, tab.level);
  RationalPolynomial actual = monic(charpoly(probabilistic_laplacian(g)));
  RationalPolynomial predicted = RationalPolynomial::x();
  for (const auto& e : tab.entries) {
    if (!e.mult.fits_ulong_p()) throw std::invalid_argument("level too large for the spectrum crosscheck");
    predicted *= pow(preiterate_polynomial(dd, e.base, e.depth), e.mult.get_ui());
  }
  predicted = monic(predicted);
  CrosscheckResult res;
  res.ok = actual == predicted;
  if (res.ok) {
    res.report = "characteristic polynomial of degree " + std::to_string(actual.degree()) + " matches";
    return res;
  }
  std::ostringstream os;
  os << "mismatch at level " << tab.level << ": actual degree " << actual.degree() << ", predicted degree "
     << predicted.degree() << ";";
  auto describe = [](const RationalPolynomial& p) {
    std::string out;
    for (const auto& cf : split_into_classes(p)) out += " " + cf.cls.label() + "^" + std::to_string(cf.multiplicity);
    return out;
  };
  RationalPolynomial g2 = gcd(actual, predicted);
  os << " only in actual:" << describe(actual / g2) << "; only in predicted:" << describe(predicted / g2);
  res.report = os.str();
  return res;
}

inline CrosscheckResult crosscheck_spectrum(const DecimationData& dd, int n) {
  return crosscheck_spectrum(dd, spectrum(dd, n));
}

}  // namespace dtrees
