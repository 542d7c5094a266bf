// Independent reference computations for the test suites. Nothing in here
// calls into the closed-form or char-poly paths it is used to check.
#ifndef RECSPEC_TESTS_ORACLES_HPP
#define RECSPEC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include <recspec/recspec.hpp>

namespace oracle {

using recspec::Complex;
using recspec::Matrix;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

// ---- random inputs ----------------------------------------------------------

inline Complex random_complex(std::mt19937_64& rng, double lo_mod, double hi_mod)
{
  std::uniform_real_distribution<double> mod(lo_mod, hi_mod);
  std::uniform_real_distribution<double> arg(-M_PI, M_PI);
  return std::polar(mod(rng), arg(rng));
}

/// n points with moduli in [lo, hi] and pairwise distance >= sep.
inline std::vector<Complex> separated_points(std::mt19937_64& rng, std::size_t n, double sep,
                                             double lo = 0.3, double hi = 3.0)
{
  std::vector<Complex> pts;
  while (pts.size() < n) {
    const Complex z = random_complex(rng, lo, hi);
    if (std::all_of(pts.begin(), pts.end(), [&](Complex w) { return std::abs(z - w) >= sep; }))
      pts.push_back(z);
  }
  return pts;
}

// ---- elementary symmetric polynomials by subset enumeration ----------------

inline Complex brute_elementary_symmetric(const std::vector<Complex>& v, std::size_t j)
{
  const std::size_t n = v.size();
  Complex total{0.0};
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountl(mask)) != j)
      continue;
    Complex prod{1.0};
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1ul << k))
        prod *= v[k];
    total += prod;
  }
  return total;
}

// ---- Eigen bridges and elimination --------------------------------------

inline CMat to_eigen(const Matrix<Complex>& a)
{
  CMat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = a(i, j);
  return out;
}

inline RMat to_eigen(const Matrix<double>& a)
{
  RMat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = a(i, j);
  return out;
}

/// Power-1..n Vandermonde matrix built directly from the nodes.
inline CMat vandermonde_direct(const std::vector<Complex>& nodes)
{
  const auto n = static_cast<Eigen::Index>(nodes.size());
  CMat v(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index t = 0; t < n; ++t)
      v(t, i) = std::pow(nodes[i], static_cast<int>(t + 1));
  return v;
}

inline CMat elimination_inverse(const CMat& a) { return a.fullPivLu().inverse(); }
inline Complex elimination_det(const CMat& a) { return a.partialPivLu().determinant(); }

template <typename M>
double max_abs(const M& a)
{
  return a.cwiseAbs().maxCoeff();
}

/// det(x I - A) at x by LU.
inline Complex det_shifted(const CMat& a, Complex x)
{
  const auto n = a.rows();
  CMat s = x * CMat::Identity(n, n) - a;
  return s.partialPivLu().determinant();
}

// ---- matrix powers by repeated squaring -----------------------------------

template <typename M>
M matrix_power(const M& a, std::size_t n)
{
  M result = M::Identity(a.rows(), a.cols());
  M base = a;
  while (n > 0) {
    if (n & 1u)
      result = result * base;
    base = base * base;
    n >>= 1u;
  }
  return result;
}

// ---- cyclic Jacobi rotations for symmetric matrices ------------------------

inline std::vector<double> jacobi_eigenvalues(RMat a)
{
  const auto n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q)
        off += a(p, q) * a(p, q);
    if (off < 1e-30)
      break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300)
          continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (Eigen::Index i = 0; i < n; ++i)
    ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// ---- root matching -------------------------------------------------------

/// Greedy nearest matching; returns the largest matched distance. Adequate
/// for well-separated sets where the recovery error is far below the gap.
inline double match_distance(const std::vector<Complex>& expected, std::vector<Complex> got)
{
  if (expected.size() != got.size())
    return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& e : expected) {
    auto it = std::min_element(got.begin(), got.end(), [&](Complex a, Complex b) {
      return std::abs(a - e) < std::abs(b - e);
    });
    worst = std::max(worst, std::abs(*it - e));
    got.erase(it);
  }
  return worst;
}

// ---- Markov chains and digraphs -------------------------------------------

/// Random row-stochastic matrix; each off-diagonal entry is kept with
/// probability `density`, the diagonal always.
inline Matrix<double> random_stochastic(std::mt19937_64& rng, std::size_t m, double density = 1.0)
{
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::bernoulli_distribution keep(density);
  Matrix<double> p(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || keep(rng))
        p(i, j) = u(rng);
      sum += p(i, j);
    }
    for (std::size_t j = 0; j < m; ++j)
      p(i, j) /= sum;
  }
  return p;
}

/// Boolean reachability closure by repeated boolean products.
inline std::vector<std::vector<bool>> reachability(const std::vector<std::vector<bool>>& adj)
{
  const std::size_t m = adj.size();
  auto reach = adj;
  auto walk = adj;
  for (std::size_t len = 2; len <= m; ++len) {
    std::vector<std::vector<bool>> next(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        if (walk[i][k])
          for (std::size_t j = 0; j < m; ++j)
            if (adj[k][j])
              next[i][j] = true;
    walk = next;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        reach[i][j] = reach[i][j] || walk[i][j];
  }
  return reach;
}

/// gcd of the closed-walk lengths n <= max_len at state s.
inline std::size_t return_time_gcd(const std::vector<std::vector<bool>>& adj, std::size_t s,
                                   std::size_t max_len)
{
  const std::size_t m = adj.size();
  std::vector<bool> at(m, false);
  at[s] = true;
  std::size_t g = 0;
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<bool> next(m, false);
    for (std::size_t k = 0; k < m; ++k)
      if (at[k])
        for (std::size_t j = 0; j < m; ++j)
          if (adj[k][j])
            next[j] = true;
    at = next;
    if (at[s])
      g = std::gcd(g, n);
  }
  return g;
}

/// Shortest distances by Floyd-Warshall; infinity for unreachable pairs.
inline std::vector<std::vector<double>> all_pairs_distances(const recspec::Digraph& g)
{
  const std::size_t m = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(m, std::vector<double>(m, inf));
  for (std::size_t i = 0; i < m; ++i)
    d[i][i] = 0.0;
  for (const auto& [u, v] : g.edges())
    if (u != v)
      d[u][v] = 1.0;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Random digraph with a self-loop at vertex 0 and a Hamiltonian cycle, so
/// it is strongly connected and aperiodic; extra edges with probability p.
inline recspec::Digraph random_aperiodic_digraph(std::mt19937_64& rng, std::size_t m, double p)
{
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<recspec::Edge> edges{{0, 0}};
  for (std::size_t k = 0; k < m; ++k)
    edges.push_back({order[k], order[(k + 1) % m]});
  std::bernoulli_distribution extra(p);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (extra(rng))
        edges.push_back({i, j});
  return recspec::Digraph(m, edges);
}

/// Simple undirected k-regular graph on m vertices by the pairing model,
/// returned with both orientations of every edge.
inline std::optional<recspec::Digraph> random_regular_graph(std::mt19937_64& rng, std::size_t m,
                                                            std::size_t k)
{
  if ((m * k) % 2 != 0 || k >= m)
    return std::nullopt;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::size_t> points;
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t c = 0; c < k; ++c)
        points.push_back(v);
    std::shuffle(points.begin(), points.end(), rng);
    std::set<recspec::Edge> seen;
    bool ok = true;
    for (std::size_t i = 0; i < points.size() && ok; i += 2) {
      const auto u = points[i], v = points[i + 1];
      if (u == v || seen.count({u, v}))
        ok = false;
      seen.insert({u, v});
      seen.insert({v, u});
    }
    if (ok) {
      std::vector<recspec::Edge> edges(seen.begin(), seen.end());
      return recspec::Digraph(m, edges);
    }
  }
  return std::nullopt;
}

} // namespace oracle

#endif // RECSPEC_TESTS_ORACLES_HPP
