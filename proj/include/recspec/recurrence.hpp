#ifndef RECSPEC_RECURRENCE_HPP
#define RECSPEC_RECURRENCE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "numkernel.hpp"
#include "vandermonde.hpp"

namespace recspec {

/// x_n = a_{m-1} x_{n-1} + ... + a_0 x_{n-m}, with coeffs = [a_0, ..., a_{m-1}]
/// and initial = [x_0, ..., x_{m-1}].
struct Recurrence
{
  std::vector<Complex> coeffs;
  std::vector<Complex> initial;

  Recurrence(std::vector<Complex> a, std::vector<Complex> x0)
    : coeffs(std::move(a)), initial(std::move(x0))
  {
    if (coeffs.empty())
      throw ArgumentError("recurrence: order must be at least 1");
    if (coeffs.size() != initial.size())
      throw ArgumentError("recurrence: " + std::to_string(coeffs.size()) + " coefficients but " +
                          std::to_string(initial.size()) + " initial terms");
    for (const auto& v : coeffs)
      if (!is_finite(v))
        throw ArgumentError("recurrence: coefficient is not finite");
    for (const auto& v : initial)
      if (!is_finite(v))
        throw ArgumentError("recurrence: initial term is not finite");
  }

  static Recurrence from_real(std::span<const double> a, std::span<const double> x0)
  {
    return Recurrence({a.begin(), a.end()}, {x0.begin(), x0.end()});
  }

  std::size_t order() const noexcept { return coeffs.size(); }
};

/// x_n = sum_i c_i roots_i^n, valid when every root is simple.
struct ClosedForm
{
  RootSet roots;
  std::vector<Complex> coefficients;
};

/// [x_0, ..., x_n] by direct recursion.
inline std::vector<Complex> iterate(const Recurrence& rec, std::size_t n)
{
  const std::size_t m = rec.order();
  std::vector<Complex> x(rec.initial.begin(), rec.initial.end());
  x.resize(std::max(n + 1, m));
  for (std::size_t k = m; k <= n; ++k) {
    Complex s{0.0};
    for (std::size_t r = 0; r < m; ++r)
      s += rec.coeffs[r] * x[k - m + r];
    x[k] = s;
  }
  x.resize(n + 1);
  return x;
}

/// T^m - a_{m-1} T^{m-1} - ... - a_1 T - a_0.
inline Polynomial characteristic_polynomial(const Recurrence& rec)
{
  std::vector<Complex> c;
  c.reserve(rec.order() + 1);
  for (const auto& a : rec.coeffs)
    c.push_back(-a);
  c.push_back(Complex{1.0});
  return Polynomial(std::move(c));
}

inline Complex evaluate_closed_form(const ClosedForm& cf, std::size_t n)
{
  Complex s{0.0};
  for (std::size_t i = 0; i < cf.roots.size(); ++i)
    s += cf.coefficients[i] * ipow(cf.roots[i], n);
  return s;
}

/// Natural magnitude of the n-th term: sum_i |c_i| |l_i|^n. Relative errors
/// are measured against this so that cancellation between terms does not
/// inflate them.
inline double closed_form_scale(const ClosedForm& cf, std::size_t n)
{
  double s = 0.0;
  for (std::size_t i = 0; i < cf.roots.size(); ++i)
    s += std::abs(cf.coefficients[i]) * std::pow(std::abs(cf.roots[i]), static_cast<double>(n));
  return s;
}

/// max_n |cf(n) - terms[n]| / max(|terms[n]|, closed_form_scale(cf, n)),
/// with n running over `first .. first + terms.size() - 1`.
inline double closed_form_deviation(const ClosedForm& cf, std::span<const Complex> terms,
                                    std::size_t first = 0)
{
  double worst = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::size_t n = first + k;
    const double scale = std::max({std::abs(terms[k]), closed_form_scale(cf, n),
                                   std::numeric_limits<double>::min()});
    worst = std::max(worst, std::abs(evaluate_closed_form(cf, n) - terms[k]) / scale);
  }
  return worst;
}

/// Coefficients c_i of the closed form whose terms 1..m are `terms`:
///   c_i = sum_t (-1)^{m-t} e_{m-t}(roots without i) x_t / (l_i prod_{k!=i}(l_i - l_k)).
/// Roots must be non-zero and pairwise distinct.
inline ClosedForm closed_form_from_terms(RootSet roots, std::span<const Complex> terms,
                                         const Tolerances& tol = {})
{
  const std::size_t m = roots.size();
  if (terms.size() != m)
    throw ArgumentError("closed form: need exactly one term per root");
  if (!roots.all_nonzero(tol))
    throw HypothesisError(Hypothesis::zero_root, "closed form requires non-zero roots",
                          roots.abs_min);
  if (!roots.all_distinct(tol))
    throw HypothesisError(Hypothesis::repeated_root,
                          "ill-conditioned: root separation below threshold", roots.sep_min);

  std::vector<Complex> c(m, Complex{0.0});
  for (std::size_t i = 0; i < m; ++i) {
    const auto w = vandermonde_inverse_row(roots, i);
    for (std::size_t t = 0; t < m; ++t)
      c[i] += w[t] * terms[t];
  }
  return {std::move(roots), std::move(c)};
}

/// Closed form of a recurrence with simple non-zero characteristic roots.
/// The coefficients are fitted to x_1..x_m (x_m from one recursion step)
/// and the result is checked against the recursion up to n = 2m.
inline ClosedForm solve_closed_form(const Recurrence& rec, const Tolerances& tol = {})
{
  const std::size_t m = rec.order();
  RootSet roots = find_roots(characteristic_polynomial(rec), tol);
  const auto x = iterate(rec, 2 * m);
  ClosedForm cf = closed_form_from_terms(std::move(roots), std::span(x).subspan(1, m), tol);

  const double dev = closed_form_deviation(cf, x);
  if (!(dev <= tol.closed_form_rel))
    throw NumericalError("solve_closed_form: closed form does not reproduce the recursion", dev);
  return cf;
}

} // namespace recspec

#endif // RECSPEC_RECURRENCE_HPP
