#ifndef RECSPEC_MARKOV_HPP
#define RECSPEC_MARKOV_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "spectral.hpp"

namespace recspec {

/// Row-stochastic matrix: entries in [0, 1], rows summing to 1.
class TransitionMatrix
{
public:
  static constexpr double entry_slack = 1e-12;
  static constexpr double row_sum_slack = 1e-10;

  /// Throws ValidationError naming the first offending row.
  explicit TransitionMatrix(Matrix<double> p) : p_(std::move(p))
  {
    if (!p_.square() || p_.rows() == 0)
      throw ArgumentError("transition matrix must be non-empty and square");
    for (std::size_t i = 0; i < p_.rows(); ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < p_.cols(); ++j) {
        const double v = p_(i, j);
        if (!std::isfinite(v))
          throw ValidationError("row " + std::to_string(i) + ": entry is not finite", i);
        if (v < -entry_slack || v > 1.0 + entry_slack)
          throw ValidationError("row " + std::to_string(i) + ": entry " + std::to_string(v) +
                                  " outside [0, 1]",
                                i);
        sum += v;
      }
      if (std::abs(sum - 1.0) > row_sum_slack)
        throw ValidationError("row " + std::to_string(i) + ": sums to " + std::to_string(sum) +
                                ", expected 1",
                              i);
    }
  }

  std::size_t size() const noexcept { return p_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return p_(i, j); }
  const Matrix<double>& matrix() const noexcept { return p_; }

private:
  Matrix<double> p_;
};

inline TransitionMatrix validate(Matrix<double> raw) { return TransitionMatrix(std::move(raw)); }

struct ChainStructure
{
  bool irreducible = false;
  std::optional<std::size_t> period; // only set for irreducible chains
  bool aperiodic = false;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> support_lists(const Matrix<double>& p, bool reverse)
{
  std::vector<std::vector<std::size_t>> adj(p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (p(i, j) > 0.0)
        adj[reverse ? j : i].push_back(reverse ? i : j);
  return adj;
}

// BFS levels from `source`; unreachable vertices get npos.
inline std::vector<std::size_t> bfs_levels(const std::vector<std::vector<std::size_t>>& adj,
                                           std::size_t source)
{
  constexpr auto npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> level(adj.size(), npos);
  std::queue<std::size_t> q;
  level[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u])
      if (level[v] == npos) {
        level[v] = level[u] + 1;
        q.push(v);
      }
  }
  return level;
}

inline bool all_reached(const std::vector<std::size_t>& level)
{
  return std::none_of(level.begin(), level.end(),
                      [](std::size_t l) { return l == std::numeric_limits<std::size_t>::max(); });
}

} // namespace detail

/// Irreducibility (support digraph strongly connected) and period (gcd of
/// level[u] + 1 - level[v] over support edges, BFS levels from state 0).
inline ChainStructure structure(const TransitionMatrix& p)
{
  ChainStructure s;
  const auto fwd = detail::support_lists(p.matrix(), false);
  const auto level = detail::bfs_levels(fwd, 0);
  s.irreducible =
    detail::all_reached(level) && detail::all_reached(detail::bfs_levels(detail::support_lists(p.matrix(), true), 0));
  if (!s.irreducible)
    return s;
  std::size_t g = 0;
  for (std::size_t u = 0; u < fwd.size(); ++u)
    for (std::size_t v : fwd[u]) {
      const auto lu = static_cast<long long>(level[u]);
      const auto lv = static_cast<long long>(level[v]);
      g = std::gcd(g, static_cast<std::size_t>(std::llabs(lu + 1 - lv)));
    }
  s.period = g;
  s.aperiodic = g == 1;
  return s;
}

struct StationaryDistribution
{
  std::vector<double> pi;
};

inline double stationary_residual(const TransitionMatrix& p, std::span<const double> pi)
{
  const auto pp = left_multiply(pi, p.matrix());
  double r = 0.0;
  for (std::size_t j = 0; j < pi.size(); ++j)
    r = std::max(r, std::abs(pp[j] - pi[j]));
  return r;
}

/// Distribution after `steps` applications of P to the uniform start.
inline std::vector<double> power_iteration(const TransitionMatrix& p, std::size_t steps)
{
  const std::size_t m = p.size();
  std::vector<double> v(m, 1.0 / static_cast<double>(m));
  for (std::size_t s = 0; s < steps; ++s)
    v = left_multiply(std::span<const double>(v), p.matrix());
  return v;
}

/// Solves pi (P - I) = 0 with sum(pi) = 1 replacing the last equation.
inline StationaryDistribution stationary(const TransitionMatrix& p)
{
  const ChainStructure s = structure(p);
  if (!s.irreducible)
    throw HypothesisError(Hypothesis::reducible, "stationary: chain is not irreducible");
  if (!s.aperiodic)
    throw HypothesisError(Hypothesis::periodic,
                          "stationary: chain has period " + std::to_string(*s.period));
  const std::size_t m = p.size();
  Matrix<double> a = transpose(p.matrix());
  for (std::size_t i = 0; i < m; ++i)
    a(i, i) -= 1.0;
  std::vector<double> b(m, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    a(m - 1, j) = 1.0;
  b[m - 1] = 1.0;
  StationaryDistribution out{solve_linear(std::move(a), std::move(b))};
  const double res = stationary_residual(p, out.pi);
  if (!(res <= 1e-8))
    throw NumericalError("stationary: residual of pi P = pi too large", res);
  return out;
}

/// Outcome of checking the hypotheses of the spectral convergence bounds.
struct HypothesisChecks
{
  ChainStructure structure;
  bool dominant_is_one = false; // eigenvalue 1 present, simple, all others inside the unit disc
  bool all_nonzero = false;
  bool all_simple = false;
  std::optional<Hypothesis> failure;
  std::string failure_reason;

  bool ok() const noexcept { return !failure.has_value(); }
};

/// Spectrum of a transition matrix with the eigenvalue nearest 1 snapped to
/// exactly 1 and moved to the front; the rest keep descending-modulus order.
struct ChainSpectrum
{
  Spectrum spectrum;
  double distance_to_one = 0.0; // |l - 1| before snapping
};

inline ChainSpectrum chain_spectrum(const TransitionMatrix& p, const Tolerances& tol = {})
{
  RootSet raw = find_roots(char_poly(to_complex(p.matrix())), tol);
  std::vector<Complex> l = raw.roots;
  std::size_t best = 0;
  for (std::size_t k = 1; k < l.size(); ++k)
    if (std::abs(l[k] - 1.0) < std::abs(l[best] - 1.0))
      best = k;
  ChainSpectrum cs;
  cs.distance_to_one = std::abs(l[best] - 1.0);
  l.erase(l.begin() + static_cast<std::ptrdiff_t>(best));
  l.insert(l.begin(), Complex{1.0});
  RootSet snapped(std::move(l));
  cs.spectrum.all_simple = snapped.all_distinct(tol);
  cs.spectrum.all_nonzero = snapped.all_nonzero(tol);
  cs.spectrum.dominant = Complex{1.0};
  for (std::size_t k = 1; k < snapped.size(); ++k)
    cs.spectrum.rho = std::max(cs.spectrum.rho, std::abs(snapped[k]));
  cs.spectrum.eigenvalues = std::move(snapped);
  return cs;
}

inline HypothesisChecks check_hypotheses(const TransitionMatrix& p, const ChainSpectrum& cs,
                                         const Tolerances& tol = {})
{
  HypothesisChecks h;
  h.structure = structure(p);
  const auto& ev = cs.spectrum.eigenvalues;
  h.dominant_is_one = cs.distance_to_one <= tol.distinct_rel &&
                      cs.spectrum.rho < 1.0 - tol.distinct_rel;
  h.all_nonzero = cs.spectrum.all_nonzero;
  h.all_simple = cs.spectrum.all_simple;

  auto fail = [&](Hypothesis kind, std::string why) {
    if (!h.failure) {
      h.failure = kind;
      h.failure_reason = std::move(why);
    }
  };
  if (!h.structure.irreducible)
    fail(Hypothesis::reducible, "chain is not irreducible");
  else if (!h.structure.aperiodic)
    fail(Hypothesis::periodic, "chain has period " + std::to_string(*h.structure.period));
  if (!h.dominant_is_one)
    fail(Hypothesis::dominant_not_one,
         "eigenvalue 1 is not a simple dominant eigenvalue (distance " +
           std::to_string(cs.distance_to_one) + ", rho " + std::to_string(cs.spectrum.rho) + ")");
  if (!h.all_nonzero)
    fail(Hypothesis::zero_eigenvalue, "transition matrix has a zero eigenvalue (min modulus " +
                                        std::to_string(ev.abs_min) + ")");
  if (!h.all_simple)
    fail(Hypothesis::repeated_eigenvalue, "transition matrix has a repeated eigenvalue (min gap " +
                                            std::to_string(ev.sep_min) + ")");
  return h;
}

inline HypothesisChecks check_hypotheses(const TransitionMatrix& p, const Tolerances& tol = {})
{
  return check_hypotheses(p, chain_spectrum(p, tol), tol);
}

enum class BoundKind
{
  phi_max,
  psi,
};

/// Spectral convergence bounds for an irreducible aperiodic chain with
/// simple non-zero eigenvalues:
///   |p_ij^(n) - pi_j| <= phi(i, j) rho^n     and     <= psi() rho^(n-1).
/// Construction throws HypothesisError when the chain does not qualify.
class ConvergenceAnalysis
{
public:
  explicit ConvergenceAnalysis(const TransitionMatrix& p, const Tolerances& tol = {})
    : p_(p), spectrum_(chain_spectrum(p, tol)), checks_(check_hypotheses(p, spectrum_, tol))
  {
    if (!checks_.ok())
      throw HypothesisError(*checks_.failure, checks_.failure_reason);
    pi_ = stationary(p).pi;

    const std::size_t m = p.size();
    powers_ = successive_powers(p.matrix(), m);

    // Per-eigenvalue pieces of the coefficient formula, shared by all (i, j).
    const auto& l = eigenvalues();
    excluded_.resize(m);
    weight_.assign(m, 0.0);
    for (std::size_t k = 1; k < m; ++k) {
      excluded_[k] = elementary_symmetric_all_excluding(l, k);
      double denom = std::abs(l[k]);
      for (std::size_t t = 0; t < m; ++t)
        if (t != k)
          denom *= std::abs(l[k] - l[t]);
      weight_[k] = 1.0 / denom;
    }
  }

  std::size_t size() const noexcept { return p_.size(); }
  const std::vector<Complex>& eigenvalues() const noexcept { return spectrum_.spectrum.eigenvalues.roots; }
  const Spectrum& spectrum() const noexcept { return spectrum_.spectrum; }
  const HypothesisChecks& checks() const noexcept { return checks_; }
  const std::vector<double>& pi() const noexcept { return pi_; }
  double rho() const noexcept { return spectrum_.spectrum.rho; }
  /// P^1..P^m
  const std::vector<Matrix<double>>& powers() const noexcept { return powers_; }

  /// |c_ij^(k)| for the closed form p_ij^(n) = sum_k c_ij^(k) l_k^n, k >= 2.
  double coefficient_modulus(std::size_t i, std::size_t j, std::size_t k) const
  {
    const std::size_t m = size();
    Complex s{0.0};
    for (std::size_t l = 1; l <= m; ++l) {
      const double sign = ((m - l) % 2 == 0) ? 1.0 : -1.0;
      s += sign * excluded_[k][m - l] * powers_[l - 1](i, j);
    }
    return std::abs(s) * weight_[k];
  }

  double phi(std::size_t i, std::size_t j) const
  {
    check_index(i);
    check_index(j);
    double total = 0.0;
    for (std::size_t k = 1; k < size(); ++k)
      total += coefficient_modulus(i, j, k);
    return total;
  }

  Matrix<double> phi_grid() const
  {
    Matrix<double> g(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        g(i, j) = phi(i, j);
    return g;
  }

  double phi_max() const { return max_abs(phi_grid()); }

  double psi() const
  {
    const auto& l = eigenvalues();
    double total = 0.0;
    for (std::size_t k = 1; k < l.size(); ++k) {
      double term = 1.0;
      for (std::size_t t = 0; t < l.size(); ++t)
        if (t != k)
          term *= (1.0 + std::abs(l[t])) / std::abs(l[k] - l[t]);
      total += term;
    }
    return total;
  }

  /// Smallest n at which the chosen bound drops below epsilon:
  ///   phi_max: ceil(log(phi_max / eps) / log(1 / rho))
  ///   psi:     1 + ceil(log(psi / eps) / log(1 / rho))
  /// both clamped at 0; 1 when rho = 0.
  std::size_t mixing_time(double epsilon, BoundKind kind) const
  {
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw ArgumentError("mixing_time: epsilon must lie in (0, 1)");
    if (rho() == 0.0)
      return 1;
    const double constant = kind == BoundKind::phi_max ? phi_max() : psi();
    double n = std::ceil(std::log(constant / epsilon) / std::log(1.0 / rho()));
    if (kind == BoundKind::psi)
      n += 1.0;
    return n > 0.0 ? static_cast<std::size_t>(n) : 0;
  }

private:
  void check_index(std::size_t i) const
  {
    if (i >= size())
      throw ArgumentError("state index " + std::to_string(i) + " out of range");
  }

  TransitionMatrix p_;
  ChainSpectrum spectrum_;
  HypothesisChecks checks_;
  std::vector<double> pi_;
  std::vector<Matrix<double>> powers_;
  std::vector<std::vector<Complex>> excluded_;
  std::vector<double> weight_;
};

inline double phi_bound(const TransitionMatrix& p, std::size_t i, std::size_t j,
                        const Tolerances& tol = {})
{
  return ConvergenceAnalysis(p, tol).phi(i, j);
}

inline double psi_bound(const TransitionMatrix& p, const Tolerances& tol = {})
{
  return ConvergenceAnalysis(p, tol).psi();
}

inline std::size_t mixing_time(const TransitionMatrix& p, double epsilon, BoundKind kind,
                               const Tolerances& tol = {})
{
  return ConvergenceAnalysis(p, tol).mixing_time(epsilon, kind);
}

/// Non-throwing summary of the convergence bounds. When the hypotheses
/// fail, only `hypothesis_ok` and `failure_reason` are meaningful.
struct ConvergenceBound
{
  double rho = 0.0;
  Matrix<double> phi;
  double psi = 0.0;
  bool hypothesis_ok = false;
  std::optional<std::string> failure_reason;
};

inline ConvergenceBound convergence_bound(const TransitionMatrix& p, const Tolerances& tol = {})
{
  ConvergenceBound b;
  try {
    const ConvergenceAnalysis a(p, tol);
    b.rho = a.rho();
    b.phi = a.phi_grid();
    b.psi = a.psi();
    b.hypothesis_ok = true;
  } catch (const HypothesisError& e) {
    b.failure_reason = e.what();
  }
  return b;
}

} // namespace recspec

#endif // RECSPEC_MARKOV_HPP
