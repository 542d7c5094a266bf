#ifndef RECSPEC_SPECTRAL_HPP
#define RECSPEC_SPECTRAL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "numkernel.hpp"
#include "recurrence.hpp"

namespace recspec {

using SquareMatrix = Matrix<Complex>;

inline SquareMatrix to_complex(const Matrix<double>& a)
{
  return a.map<Complex>([](double v) { return Complex{v}; });
}

inline void require_square(const SquareMatrix& a)
{
  if (!a.square() || a.rows() == 0)
    throw ArgumentError("expected a non-empty square matrix");
  for (const auto& v : a.data())
    if (!is_finite(v))
      throw ArgumentError("matrix entry is not finite");
}

/// det(x I - A) by the Faddeev-LeVerrier recursion:
///   M_k = A M_{k-1} + c_{m-k+1} I,   c_{m-k} = -tr(A M_k) / k.
inline Polynomial char_poly(const SquareMatrix& a)
{
  require_square(a);
  const std::size_t m = a.rows();
  std::vector<Complex> c(m + 1, Complex{0.0});
  c[m] = Complex{1.0};
  SquareMatrix mk(m, m);
  for (std::size_t k = 1; k <= m; ++k) {
    mk = a * mk;
    for (std::size_t i = 0; i < m; ++i)
      mk(i, i) += c[m - k + 1];
    c[m - k] = -trace(a * mk) / static_cast<double>(k);
  }
  return Polynomial(std::move(c));
}

struct Spectrum
{
  RootSet eigenvalues; // descending modulus
  bool all_simple = false;
  bool all_nonzero = false;
  Complex dominant{0.0};
  double rho = 0.0; // largest modulus strictly below |dominant|
};

inline Spectrum make_spectrum(RootSet eigenvalues, const Tolerances& tol = {})
{
  Spectrum s;
  s.all_simple = eigenvalues.all_distinct(tol);
  s.all_nonzero = eigenvalues.all_nonzero(tol);
  if (eigenvalues.size() > 0) {
    s.dominant = eigenvalues[0];
    const double top = std::abs(s.dominant);
    const double gap = tol.distinct_rel * top;
    for (const auto& l : eigenvalues.roots)
      if (std::abs(l) < top - gap)
        s.rho = std::max(s.rho, std::abs(l));
  }
  s.eigenvalues = std::move(eigenvalues);
  return s;
}

inline Spectrum eigenvalues(const SquareMatrix& a, const Tolerances& tol = {})
{
  return make_spectrum(find_roots(char_poly(a), tol), tol);
}

/// Closed form of n -> (A^n)_{ij} from a precomputed spectrum and the
/// powers A^1..A^m.
inline ClosedForm power_entry_closed_form(const Spectrum& spectrum,
                                          std::span<const SquareMatrix> powers, std::size_t i,
                                          std::size_t j, const Tolerances& tol = {})
{
  const std::size_t m = spectrum.eigenvalues.size();
  if (powers.size() != m)
    throw ArgumentError("power_entry_closed_form: need the powers A^1..A^m");
  if (i >= m || j >= m)
    throw ArgumentError("power_entry_closed_form: index out of range");
  if (!spectrum.all_nonzero)
    throw HypothesisError(Hypothesis::zero_eigenvalue,
                          "closed form of matrix powers requires non-zero eigenvalues",
                          spectrum.eigenvalues.abs_min);
  if (!spectrum.all_simple)
    throw HypothesisError(Hypothesis::repeated_eigenvalue,
                          "closed form of matrix powers requires simple eigenvalues",
                          spectrum.eigenvalues.sep_min);
  std::vector<Complex> terms(m);
  for (std::size_t t = 0; t < m; ++t)
    terms[t] = powers[t](i, j);
  return closed_form_from_terms(spectrum.eigenvalues, terms, tol);
}

/// (A^n)_{ij} = sum_r c_r l_r^n for a matrix with simple non-zero spectrum.
inline ClosedForm power_entry_closed_form(const SquareMatrix& a, std::size_t i, std::size_t j,
                                          const Tolerances& tol = {})
{
  const Spectrum s = eigenvalues(a, tol);
  const auto powers = successive_powers(a, a.rows());
  return power_entry_closed_form(s, powers, i, j, tol);
}

} // namespace recspec

#endif // RECSPEC_SPECTRAL_HPP
