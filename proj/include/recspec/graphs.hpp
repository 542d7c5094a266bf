#ifndef RECSPEC_GRAPHS_HPP
#define RECSPEC_GRAPHS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "markov.hpp"

namespace recspec {

using Edge = std::pair<std::size_t, std::size_t>;

/// Directed graph on vertices 0..m-1. Self-loops are allowed; parallel
/// edges collapse.
class Digraph
{
public:
  Digraph() = default;

  Digraph(std::size_t vertices, std::span<const Edge> edges) : m_(vertices), out_(vertices)
  {
    for (const auto& [u, v] : edges) {
      if (u >= m_ || v >= m_)
        throw ArgumentError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") has an endpoint outside [0, " + std::to_string(m_) + ")");
      if (edges_.insert({u, v}).second)
        out_[u].push_back(v);
    }
    for (auto& adj : out_)
      std::sort(adj.begin(), adj.end());
  }

  Digraph(std::size_t vertices, std::initializer_list<Edge> edges)
    : Digraph(vertices, std::span<const Edge>(edges.begin(), edges.size()))
  {}

  std::size_t size() const noexcept { return m_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& successors(std::size_t u) const { return out_[u]; }
  std::size_t out_degree(std::size_t u) const { return out_[u].size(); }
  bool has_edge(std::size_t u, std::size_t v) const { return edges_.count({u, v}) != 0; }

  bool symmetric() const
  {
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return has_edge(e.second, e.first); });
  }

private:
  std::size_t m_ = 0;
  std::set<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

/// p_ij = 1 / outdeg(i) on every edge (i, j).
inline TransitionMatrix markov_matrix_uniform(const Digraph& g)
{
  Matrix<double> p(g.size(), g.size());
  for (std::size_t u = 0; u < g.size(); ++u) {
    const std::size_t d = g.out_degree(u);
    if (d == 0)
      throw ConstructionError("vertex " + std::to_string(u) + " has no outgoing edge", u);
    for (std::size_t v : g.successors(u))
      p(u, v) = 1.0 / static_cast<double>(d);
  }
  return TransitionMatrix(std::move(p));
}

/// Symmetric Markov matrix of an undirected graph: every edge weighs 1/d,
/// d the maximum degree, and each vertex gets a self-loop of weight
/// 1 - deg(v)/d. Self-loops in the input are ignored when counting degrees.
inline TransitionMatrix markov_matrix_lazy_undirected(const Digraph& g)
{
  if (!g.symmetric())
    throw ConstructionError("lazy construction needs a symmetric edge set");
  const std::size_t m = g.size();
  std::vector<std::size_t> deg(m, 0);
  for (const auto& [u, v] : g.edges())
    if (u != v)
      ++deg[u];
  const std::size_t d = m ? *std::max_element(deg.begin(), deg.end()) : 0;
  Matrix<double> p(m, m);
  for (std::size_t u = 0; u < m; ++u) {
    if (d == 0) {
      p(u, u) = 1.0;
      continue;
    }
    for (std::size_t v : g.successors(u))
      if (v != u)
        p(u, v) = 1.0 / static_cast<double>(d);
    p(u, u) = 1.0 - static_cast<double>(deg[u]) / static_cast<double>(d);
  }
  return TransitionMatrix(std::move(p));
}

/// Longest shortest path over ordered pairs u != v; nullopt when some pair
/// is unreachable.
inline std::optional<std::size_t> exact_diameter(const Digraph& g)
{
  std::vector<std::vector<std::size_t>> adj(g.size());
  for (std::size_t u = 0; u < g.size(); ++u)
    adj[u] = g.successors(u);
  std::size_t diameter = 0;
  for (std::size_t s = 0; s < g.size(); ++s) {
    const auto level = detail::bfs_levels(adj, s);
    if (!detail::all_reached(level))
      return std::nullopt;
    diameter = std::max(diameter, *std::max_element(level.begin(), level.end()));
  }
  return diameter;
}

struct DiameterReport
{
  std::optional<std::size_t> exact;  // nullopt: infinite
  std::optional<std::size_t> bound;  // nullopt: hypotheses not met
  bool hypothesis_ok = false;
  std::optional<std::string> failure_reason;
  std::vector<double> per_j_terms;   // max over i != j of the per-pair term
  double rho = 0.0;
  std::vector<double> pi;
};

namespace detail {

// Smallest walk length n >= 1 with n > log(phi / pi_j) / log(1 / rho).
// A ratio within 1e-12 of an integer still moves to the next one.
inline double diameter_term(double phi, double pi_j, double rho)
{
  if (rho == 0.0 || phi == 0.0)
    return 1.0;
  const double x = std::log(phi / pi_j) / std::log(1.0 / rho);
  return std::max(1.0, std::floor(x + 1e-12) + 1.0);
}

} // namespace detail

/// Spectral upper bound on the diameter of g from a Markov matrix p for g:
/// max over ordered pairs i != j of the per-pair term above, with phi the
/// convergence constant of pair (i, j).
inline DiameterReport diameter_bound(const Digraph& g, const TransitionMatrix& p,
                                     const Tolerances& tol = {})
{
  const std::size_t m = g.size();
  if (p.size() != m)
    throw ArgumentError("diameter_bound: matrix has " + std::to_string(p.size()) +
                        " states but the graph has " + std::to_string(m) + " vertices");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if ((p(i, j) > 0.0) != g.has_edge(i, j))
        throw ArgumentError("diameter_bound: support of the matrix differs from the graph at (" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");

  DiameterReport r;
  r.exact = exact_diameter(g);
  try {
    const ConvergenceAnalysis a(p, tol);
    r.hypothesis_ok = true;
    r.rho = a.rho();
    r.pi = a.pi();
    r.per_j_terms.assign(m, 0.0);
    std::size_t bound = 0;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) {
        if (i == j)
          continue;
        const double term = detail::diameter_term(a.phi(i, j), r.pi[j], r.rho);
        r.per_j_terms[j] = std::max(r.per_j_terms[j], term);
        bound = std::max(bound, static_cast<std::size_t>(term));
      }
    r.bound = bound;
  } catch (const HypothesisError& e) {
    r.failure_reason = e.what();
  }
  return r;
}

/// ceil(log(m - 1) / log(k / tau)) for a k-regular graph on m vertices
/// whose adjacency matrix has second-largest eigenvalue modulus tau.
inline long long chung_bound(std::size_t m, std::size_t k, double tau)
{
  if (m < 2)
    throw ArgumentError("chung_bound: need at least 2 vertices");
  if (k == 0 || !(tau > 0.0) || !(tau < static_cast<double>(k)))
    throw ArgumentError("chung_bound: need 0 < tau < k");
  return static_cast<long long>(
    std::ceil(std::log(static_cast<double>(m - 1)) / std::log(static_cast<double>(k) / tau)));
}

} // namespace recspec

#endif // RECSPEC_GRAPHS_HPP
