#pragma once

// Spanning-tree counts of explicit graphs: the integer Matrix-Tree theorem and
// its probabilistic-Laplacian form.

#include <stdexcept>
#include <string>
#include <vector>

#include "decimation_trees/exact/matrix.hpp"
#include "decimation_trees/fractal_model.hpp"

namespace dtrees {

inline void require_tree_countable(const Graph& g) {
  if (g.vertex_count == 0) throw std::invalid_argument("empty graph");
  for (const auto& e : g.edges) {
    if (e.u >= g.vertex_count || e.v >= g.vertex_count) throw std::invalid_argument("edge vertex out of range");
    if (e.u == e.v) throw std::invalid_argument("loop at vertex " + std::to_string(e.u));
  }
  if (!g.connected()) throw std::domain_error("disconnected");
}

/// G = D - A with multiplicities.
inline IntegerMatrix laplacian(const Graph& g) {
  IntegerMatrix l(g.vertex_count, g.vertex_count);
  for (const auto& e : g.edges) {
    Integer m(static_cast<unsigned long>(e.mult));
    l(e.u, e.v) -= m;
    l(e.v, e.u) -= m;
    l(e.u, e.u) += m;
    l(e.v, e.v) += m;
  }
  return l;
}

/// Determinant of the Laplacian with row and column `removed` deleted.
inline Integer laplacian_cofactor(const Graph& g, std::size_t removed, unsigned workers = 1) {
  if (removed >= g.vertex_count) throw std::invalid_argument("cofactor index out of range");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.vertex_count; ++i)
    if (i != removed) keep.push_back(i);
  return bareiss_determinant(laplacian(g).select(keep, keep), workers);
}

/// Number of spanning trees. Worker count defaults to thread_budget().
inline Integer tau_bruteforce(const Graph& g, unsigned workers = 0) {
  require_tree_countable(g);
  if (g.vertex_count == 1) return Integer(1);
  return laplacian_cofactor(g, g.vertex_count - 1, workers == 0 ? thread_budget() : workers);
}

/// P = D^{-1}(D - A).
inline RationalMatrix probabilistic_laplacian(const Graph& g) {
  require_tree_countable(g);
  auto deg = g.degrees();
  RationalMatrix p(g.vertex_count, g.vertex_count);
  for (std::size_t i = 0; i < g.vertex_count; ++i)
    if (deg[i] > 0) p(i, i) = Rational(1);
  for (const auto& e : g.edges) {
    p(e.u, e.v) -= make_rational(static_cast<long>(e.mult), static_cast<long>(deg[e.u]));
    p(e.v, e.u) -= make_rational(static_cast<long>(e.mult), static_cast<long>(deg[e.v]));
  }
  return p;
}

/// Product of the nonzero eigenvalues of P, from the linear coefficient of
/// its characteristic polynomial.
inline Rational det_star_P(const Graph& g) {
  RationalPolynomial cp = charpoly(probabilistic_laplacian(g));
  if (sgn(cp.coeff(0)) != 0) throw std::logic_error("probabilistic Laplacian is nonsingular");
  Rational c1 = cp.coeff(1);
  if (sgn(c1) == 0) throw std::domain_error("disconnected");
  return abs(c1);
}

struct MatrixTreeCheck {
  Integer tau;
  Rational degree_product;
  Rational degree_sum;
  Rational det_star;
  Rational rhs;
  bool holds = false;
};

/// tau(g) == (prod d_j / sum d_j) * det* P, checked exactly.
inline MatrixTreeCheck verify_matrix_tree(const Graph& g) {
  MatrixTreeCheck c;
  c.tau = tau_bruteforce(g);
  c.det_star = det_star_P(g);
  c.degree_product = 1;
  c.degree_sum = 0;
  for (auto d : g.degrees()) {
    c.degree_product *= static_cast<unsigned long>(d);
    c.degree_sum += static_cast<unsigned long>(d);
  }
  c.rhs = c.degree_product / c.degree_sum * c.det_star;
  c.holds = c.rhs == Rational(c.tau);
  return c;
}

/// Joins g1 and g2 by identifying x1 in g1 with x2 in g2. Vertices of g1 keep
/// their ids; the rest of g2 follows in order.
inline Graph wedge(const Graph& g1, const Graph& g2, VertexId x1, VertexId x2) {
  if (x1 >= g1.vertex_count || x2 >= g2.vertex_count) throw std::invalid_argument("wedge vertex out of range");
  auto map2 = [&](VertexId y) -> VertexId {
    if (y == x2) return x1;
    return g1.vertex_count + (y < x2 ? y : y - 1);
  };
  std::vector<Edge> e = g1.edges;
  for (const auto& ed : g2.edges) e.push_back({map2(ed.u), map2(ed.v), ed.mult});
  return make_graph(g1.vertex_count + g2.vertex_count - 1, e);
}

struct WedgeCheck {
  Integer tau1;
  Integer tau2;
  Integer tau_wedge;
  bool holds = false;
};

inline WedgeCheck wedge_check(const Graph& g1, const Graph& g2, VertexId x1, VertexId x2) {
  WedgeCheck w;
  w.tau1 = tau_bruteforce(g1);
  w.tau2 = tau_bruteforce(g2);
  w.tau_wedge = tau_bruteforce(wedge(g1, g2, x1, x2));
  w.holds = w.tau_wedge == w.tau1 * w.tau2;
  return w;
}

/// Graph with vertex x renamed to perm[x].
inline Graph relabel(const Graph& g, const std::vector<VertexId>& perm) {
  if (perm.size() != g.vertex_count) throw std::invalid_argument("permutation size mismatch");
  std::vector<Edge> e;
  for (const auto& ed : g.edges) e.push_back({perm[ed.u], perm[ed.v], ed.mult});
  return make_graph(g.vertex_count, e);
}

}  // namespace dtrees
