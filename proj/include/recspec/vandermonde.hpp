#ifndef RECSPEC_VANDERMONDE_HPP
#define RECSPEC_VANDERMONDE_HPP

#include <cstddef>
#include <string>

#include "numkernel.hpp"

namespace recspec {

/// Above this size the closed-form inverse loses accuracy in double
/// precision. Callers should warn; the result is still computed.
inline constexpr std::size_t vandermonde_soft_cap = 25;

/// Vandermonde matrix whose rows hold the powers 1..n of the nodes:
/// entry (t, i) = nodes[i]^(t+1). Note the first row is the nodes
/// themselves, not a row of ones.
inline Matrix<Complex> vandermonde_matrix(const RootSet& nodes)
{
  const std::size_t n = nodes.size();
  Matrix<Complex> v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex power = nodes[i];
    for (std::size_t t = 0; t < n; ++t) {
      v(t, i) = power;
      power *= nodes[i];
    }
  }
  return v;
}

/// det V = (-1)^{C(n,2)} prod_i l_i prod_{i>j} (l_j - l_i).
inline Complex vandermonde_det(const RootSet& nodes)
{
  const std::size_t n = nodes.size();
  Complex det{1.0};
  for (std::size_t i = 0; i < n; ++i) {
    det *= nodes[i];
    for (std::size_t j = 0; j < i; ++j)
      det *= nodes[j] - nodes[i];
  }
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (pairs % 2 == 1)
    det = -det;
  return det;
}

/// Rejects node sets for which the closed-form inverse is singular or
/// numerically meaningless.
inline void require_invertible_nodes(const RootSet& nodes, const Tolerances& tol = {})
{
  if (nodes.size() == 0)
    throw ArgumentError("vandermonde: empty node set");
  if (!nodes.all_nonzero(tol))
    throw HypothesisError(Hypothesis::zero_node, "singular: zero node", nodes.abs_min);
  if (!nodes.all_distinct(tol))
    throw HypothesisError(Hypothesis::ill_conditioned,
                          "ill-conditioned: node separation below threshold", nodes.sep_min);
}

/// Row i of V^{-1}:
///   w_ij = (-1)^{n-j} e_{n-j}(nodes without i) / (l_i prod_{k!=i} (l_i - l_k)),
/// with j running 1..n. Preconditions are not checked here.
inline std::vector<Complex> vandermonde_inverse_row(const RootSet& nodes, std::size_t i)
{
  const std::size_t n = nodes.size();
  const std::vector<Complex> e = elementary_symmetric_all_excluding(nodes.roots, i);
  Complex denom = nodes[i];
  for (std::size_t k = 0; k < n; ++k)
    if (k != i)
      denom *= nodes[i] - nodes[k];
  std::vector<Complex> row(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
    row[j - 1] = sign * e[n - j] / denom;
  }
  return row;
}

/// Closed-form inverse of `vandermonde_matrix(nodes)`.
inline Matrix<Complex> vandermonde_inverse(const RootSet& nodes, const Tolerances& tol = {})
{
  require_invertible_nodes(nodes, tol);
  const std::size_t n = nodes.size();
  Matrix<Complex> w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = vandermonde_inverse_row(nodes, i);
    std::copy(row.begin(), row.end(), w.row(i).begin());
  }
  return w;
}

} // namespace recspec

#endif // RECSPEC_VANDERMONDE_HPP
