#ifndef RECSPEC_NUMKERNEL_HPP
#define RECSPEC_NUMKERNEL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace recspec {

/// Numerical thresholds shared by the spectral pipeline. Separation and
/// zero thresholds are relative to the largest modulus in the set.
struct Tolerances
{
  double root_residual = 1e-10;
  double distinct_rel = 1e-8;
  double zero_rel = 1e-8;
  double closed_form_rel = 1e-8;
  int max_iterations = 1000;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// z^n by repeated squaring.
inline Complex ipow(Complex z, std::size_t n)
{
  Complex result{1.0};
  while (n > 0) {
    if (n & 1u)
      result *= z;
    z *= z;
    n >>= 1u;
  }
  return result;
}

/// Polynomial with complex coefficients stored in ascending degree order.
/// Trailing zero coefficients are dropped, so the leading coefficient is
/// non-zero unless the polynomial is identically zero.
class Polynomial
{
public:
  Polynomial() : coeffs_{Complex{0.0}} {}

  explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs))
  {
    for (const auto& c : coeffs_)
      if (!is_finite(c))
        throw ArgumentError("polynomial coefficient is not finite");
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{0.0})
      coeffs_.pop_back();
    if (coeffs_.empty())
      coeffs_.push_back(Complex{0.0});
  }

  static Polynomial from_real(std::span<const double> coeffs)
  {
    return Polynomial(std::vector<Complex>(coeffs.begin(), coeffs.end()));
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == Complex{0.0}; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  Complex operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{0.0}; }
  Complex leading() const { return coeffs_.back(); }

  Complex operator()(Complex x) const
  {
    Complex acc{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  }

  /// Value and first derivative at x by Horner's scheme.
  std::pair<Complex, Complex> eval_with_derivative(Complex x) const
  {
    Complex p{0.0}, dp{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      dp = dp * x + p;
      p = p * x + *it;
    }
    return {p, dp};
  }

  /// Evaluates the polynomial at a square matrix.
  Matrix<Complex> operator()(const Matrix<Complex>& a) const
  {
    if (!a.square())
      throw ArgumentError("polynomial evaluated at a non-square matrix");
    const std::size_t n = a.rows();
    Matrix<Complex> acc(n, n);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * a;
      for (std::size_t i = 0; i < n; ++i)
        acc(i, i) += *it;
    }
    return acc;
  }

  double max_coeff_abs() const
  {
    double m = 0.0;
    for (const auto& c : coeffs_)
      m = std::max(m, std::abs(c));
    return m;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  std::vector<Complex> coeffs_;
};

/// A set of roots together with the spacing quantities that control the
/// conditioning of every closed form built on top of them.
struct RootSet
{
  std::vector<Complex> roots;
  double sep_min = 0.0; // min |r_i - r_j| over i != j, 0 for fewer than two roots
  double abs_min = 0.0; // min |r_i|, 0 when empty

  RootSet() = default;

  explicit RootSet(std::vector<Complex> values) : roots(std::move(values))
  {
    for (const auto& r : roots)
      if (!is_finite(r))
        throw ArgumentError("root is not finite");
    if (!roots.empty())
      abs_min = std::numeric_limits<double>::infinity();
    for (const auto& r : roots)
      abs_min = std::min(abs_min, std::abs(r));
    if (roots.size() >= 2) {
      sep_min = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
          sep_min = std::min(sep_min, std::abs(roots[i] - roots[j]));
    }
  }

  std::size_t size() const noexcept { return roots.size(); }
  Complex operator[](std::size_t i) const { return roots[i]; }

  double max_modulus() const
  {
    double m = 0.0;
    for (const auto& r : roots)
      m = std::max(m, std::abs(r));
    return m;
  }

  bool all_nonzero(const Tolerances& tol = {}) const
  {
    return roots.empty() || abs_min > tol.zero_rel * max_modulus();
  }

  bool all_distinct(const Tolerances& tol = {}) const
  {
    return roots.size() < 2 || sep_min > tol.distinct_rel * max_modulus();
  }
};

namespace detail {

// Coefficients of prod_k (x + values[k]) skipping index `skip`, stored so
// that out[j] = e_j (the coefficient of x^{n-j}).
inline std::vector<Complex> expand_shifted_product(std::span<const Complex> values,
                                                   std::size_t skip)
{
  std::vector<Complex> e{Complex{1.0}};
  e.reserve(values.size() + 1);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k == skip)
      continue;
    e.push_back(Complex{0.0});
    for (std::size_t j = e.size() - 1; j > 0; --j)
      e[j] += values[k] * e[j - 1];
  }
  return e;
}

inline constexpr std::size_t no_skip = std::numeric_limits<std::size_t>::max();

} // namespace detail

/// e_j(values), read off as the coefficient of x^{n-j} in prod (x + v_k).
inline Complex elementary_symmetric(std::span<const Complex> values, std::size_t j)
{
  if (j > values.size())
    throw ArgumentError("elementary_symmetric: degree " + std::to_string(j) +
                        " exceeds the number of values " + std::to_string(values.size()));
  return detail::expand_shifted_product(values, detail::no_skip)[j];
}

/// [e_0, ..., e_{n-1}] of the n-1 values left after dropping index i.
inline std::vector<Complex> elementary_symmetric_all_excluding(std::span<const Complex> values,
                                                               std::size_t i)
{
  if (i >= values.size())
    throw ArgumentError("elementary_symmetric_all_excluding: index out of range");
  return detail::expand_shifted_product(values, i);
}

/// Monic polynomial prod (x - r).
inline Polynomial poly_from_roots(std::span<const Complex> roots)
{
  std::vector<Complex> c{Complex{1.0}};
  c.reserve(roots.size() + 1);
  for (const auto& r : roots) {
    c.insert(c.begin(), Complex{0.0});
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
      c[k] -= r * c[k + 1];
  }
  return Polynomial(std::move(c));
}

/// Sorts by descending modulus. Moduli that agree to within a relative
/// 1e-10 are ties, broken by descending real part, then descending
/// imaginary part (with the same tolerance on the real part).
inline void sort_roots(std::vector<Complex>& roots)
{
  double scale = 1.0;
  for (const auto& r : roots)
    scale = std::max(scale, std::abs(r));
  const double tie = 1e-10 * scale;

  auto sort_groups = [&](auto begin, auto end, auto key, auto next) {
    std::stable_sort(begin, end, [&](Complex a, Complex b) { return key(a) > key(b); });
    for (auto g = begin; g != end;) {
      auto h = g + 1;
      while (h != end && key(*g) - key(*h) <= tie)
        ++h;
      next(g, h);
      g = h;
    }
  };

  auto by_imag = [](auto b, auto e) {
    std::stable_sort(b, e, [](Complex x, Complex y) { return x.imag() > y.imag(); });
  };
  auto by_real = [&](auto b, auto e) {
    sort_groups(b, e, [](Complex z) { return z.real(); }, by_imag);
  };
  sort_groups(roots.begin(), roots.end(), [](Complex z) { return std::abs(z); }, by_real);
}

namespace detail {

inline double scaled_residual(const Polynomial& p, Complex z, double cmax)
{
  const double scale = cmax * std::pow(1.0 + std::abs(z), static_cast<double>(p.degree()));
  return std::abs(p(z)) / scale;
}

inline double max_scaled_residual(const Polynomial& p, std::span<const Complex> z, double cmax)
{
  double r = 0.0;
  for (const auto& zi : z)
    r = std::max(r, scaled_residual(p, zi, cmax));
  return r;
}

inline std::vector<Complex> initial_guesses(const Polynomial& monic)
{
  const std::size_t n = monic.degree();
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    radius = std::max(radius, std::abs(monic[k]));
  radius += 1.0;
  std::vector<Complex> z(n);
  // fixed rotation off the real axis avoids symmetric stalls on real polynomials
  const double offset = 0.4;
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + offset);
  return z;
}

// One simultaneous-iteration sweep. Returns the largest relative correction.
template <typename Step>
double sweep(std::vector<Complex>& z, Step step)
{
  double worst = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const Complex w = step(z, k);
    if (!is_finite(w))
      continue;
    z[k] -= w;
    worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
  }
  return worst;
}

template <typename Step>
bool iterate_to_tolerance(const Polynomial& p, double cmax, std::vector<Complex>& z,
                          const Tolerances& tol, Step step, double& best_residual,
                          std::vector<Complex>& best)
{
  // After the residual test passes, keep sweeping while corrections still
  // shrink: clusters around a multiple root converge only linearly.
  constexpr int stall_limit = 5;
  bool converged = false;
  int stalls = 0;
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < tol.max_iterations; ++it) {
    const double correction = sweep(z, step);
    const double res = max_scaled_residual(p, z, cmax);
    if (res < best_residual) {
      best_residual = res;
      best = z;
    }
    converged = converged || res < tol.root_residual;
    if (converged) {
      if (correction < 4.0 * std::numeric_limits<double>::epsilon())
        break;
      stalls = correction < 0.9 * last ? 0 : stalls + 1;
      if (stalls >= stall_limit)
        break;
    }
    last = correction;
  }
  if (converged) {
    // polishing never makes the reported iterate worse than the one that converged
    if (max_scaled_residual(p, z, cmax) > best_residual)
      z = best;
    return true;
  }
  return false;
}

// Taylor coefficients p^(j)(c) / j! of p at c, j = 0..deg.
inline std::vector<Complex> taylor_shift(const Polynomial& p, Complex c)
{
  std::vector<Complex> a(p.coeffs());
  const std::size_t n = a.size();
  for (std::size_t j = 0; j + 1 < n; ++j)
    for (std::size_t k = n - 1; k > j; --k)
      a[k - 1] += c * a[k];
  return a;
}

// Clusters of approximations to one multiple root spread out like
// eps^(1/k). Replace a cluster by its centroid when every lower Taylor
// coefficient there is at rounding-noise level.
inline void snap_clusters(const Polynomial& p, std::vector<Complex>& z)
{
  const std::size_t n = z.size();
  double maxmod = 0.0;
  for (const auto& r : z)
    maxmod = std::max(maxmod, std::abs(r));
  const double radius = 1e-3 * (1.0 + maxmod);

  std::vector<std::size_t> group(n);
  std::iota(group.begin(), group.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (group[i] != i)
      i = group[i] = group[group[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) < radius)
        group[find(i)] = find(j);

  std::vector<Complex> abs_coeffs(p.coeffs().size());
  for (std::size_t k = 0; k < abs_coeffs.size(); ++k)
    abs_coeffs[k] = std::abs(p[k]);
  const Polynomial noise_poly(std::move(abs_coeffs));

  for (std::size_t root = 0; root < n; ++root) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) == root)
        members.push_back(i);
    const std::size_t k = members.size();
    if (k < 2)
      continue;
    Complex c{0.0};
    for (auto i : members)
      c += z[i];
    c /= static_cast<double>(k);
    // c is a simple root of p^(k-1) when the cluster is one k-fold root
    std::vector<Complex> d(p.coeffs().size() - (k - 1));
    for (std::size_t i = 0; i < d.size(); ++i) {
      double binom = 1.0;
      for (std::size_t r = 1; r < k; ++r)
        binom = binom * static_cast<double>(i + r) / static_cast<double>(r);
      d[i] = binom * p[i + k - 1];
    }
    const Polynomial q(std::move(d));
    for (int it = 0; it < 50; ++it) {
      const auto [qv, dqv] = q.eval_with_derivative(c);
      if (dqv == Complex{0.0})
        break;
      const Complex step = qv / dqv;
      c -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(c)))
        break;
    }
    const auto t = taylor_shift(p, c);
    const auto noise = taylor_shift(noise_poly, Complex{std::abs(c)});
    bool multiple = true;
    for (std::size_t j = 0; j < k && multiple; ++j)
      multiple = std::abs(t[j]) <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(noise[j]);
    if (multiple)
      for (auto i : members)
        z[i] = c;
  }
}

} // namespace detail

/// All complex roots of p by Aberth-Ehrlich simultaneous iteration, with a
/// Durand-Kerner retry. Roots satisfy |p(r)| / (max|c_k| (1+|r|)^deg) <
/// tol.root_residual and are ordered by `sort_roots`.
inline RootSet find_roots(const Polynomial& p, const Tolerances& tol = {})
{
  if (p.degree() < 1)
    throw ArgumentError("find_roots: polynomial must have degree >= 1");
  const std::size_t n = p.degree();
  const Complex lead = p.leading();

  std::vector<Complex> monic_c(p.coeffs());
  for (auto& c : monic_c)
    c /= lead;
  const Polynomial monic(std::move(monic_c));
  const double cmax = monic.max_coeff_abs();

  if (n == 1)
    return RootSet({-monic[0]});

  auto aberth = [&](const std::vector<Complex>& z, std::size_t k) {
    const auto [pv, dpv] = monic.eval_with_derivative(z[k]);
    if (pv == Complex{0.0})
      return Complex{0.0};
    Complex repulsion{0.0};
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != k)
        repulsion += 1.0 / (z[k] - z[j]);
    const Complex denom = dpv / pv - repulsion;
    if (denom == Complex{0.0})
      return Complex{1e-8 * (1.0 + std::abs(z[k]))};
    return 1.0 / denom;
  };
  auto durand_kerner = [&](const std::vector<Complex>& z, std::size_t k) {
    Complex denom{1.0};
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != k)
        denom *= z[k] - z[j];
    if (denom == Complex{0.0})
      return Complex{1e-8 * (1.0 + std::abs(z[k]))};
    return monic(z[k]) / denom;
  };

  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<Complex> best;

  std::vector<Complex> z = detail::initial_guesses(monic);
  bool ok = detail::iterate_to_tolerance(monic, cmax, z, tol, aberth, best_residual, best);
  if (!ok) {
    z = detail::initial_guesses(monic);
    ok = detail::iterate_to_tolerance(monic, cmax, z, tol, durand_kerner, best_residual, best);
  }
  if (!ok) {
    sort_roots(best);
    throw NumericalError("find_roots: no convergence after " + std::to_string(tol.max_iterations) +
                           " iterations",
                         best_residual, best);
  }
  detail::snap_clusters(monic, z);
  sort_roots(z);
  return RootSet(std::move(z));
}

} // namespace recspec

#endif // RECSPEC_NUMKERNEL_HPP
