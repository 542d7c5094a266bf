#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <recspec/recurrence.hpp>

#include "support/oracles.hpp"

using namespace recspec;

namespace {

Recurrence fibonacci() { return Recurrence({1.0, 1.0}, {0.0, 1.0}); }

/// Recurrence whose characteristic roots are `roots`, with random initial terms.
Recurrence with_roots(const std::vector<Complex>& roots, std::mt19937_64& rng)
{
  const Polynomial p = poly_from_roots(roots);
  std::vector<Complex> a(roots.size()), x0(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    a[k] = -p[k];
    x0[k] = oracle::random_complex(rng, 0.5, 2.0);
  }
  return Recurrence(a, x0);
}

/// x_n via the companion matrix: state [x_{n-m+1} .. x_n] advanced by powers.
Complex companion_term(const Recurrence& rec, std::size_t n)
{
  const auto m = static_cast<Eigen::Index>(rec.order());
  if (n < rec.order())
    return rec.initial[n];
  oracle::CMat c = oracle::CMat::Zero(m, m);
  for (Eigen::Index i = 0; i + 1 < m; ++i)
    c(i, i + 1) = 1.0;
  for (Eigen::Index j = 0; j < m; ++j)
    c(m - 1, j) = rec.coeffs[j];
  Eigen::VectorXcd s(m);
  for (Eigen::Index j = 0; j < m; ++j)
    s(j) = rec.initial[j];
  const Eigen::VectorXcd out = oracle::matrix_power(c, n - rec.order() + 1) * s;
  return out(m - 1);
}

} // namespace

TEST(Recurrence, RejectsMismatchedSizes)
{
  EXPECT_THROW(Recurrence({1.0, 1.0}, {0.0}), ArgumentError);
  EXPECT_THROW(Recurrence({}, {}), ArgumentError);
}

TEST(Iterate, ClassicalSequences)
{
  const auto fib = iterate(fibonacci(), 10);
  ASSERT_EQ(fib.size(), 11u);
  EXPECT_EQ(fib[10], Complex(55.0));

  const auto geo = iterate(Recurrence({2.0}, {3.0}), 4);
  EXPECT_EQ(geo, (std::vector<Complex>{3.0, 6.0, 12.0, 24.0, 48.0}));

  EXPECT_EQ(iterate(fibonacci(), 0), std::vector<Complex>{0.0});
}

TEST(Iterate, MatchesCompanionPowers)
{
  std::mt19937_64 rng(31);
  std::vector<Complex> a(4), x0(4);
  for (auto& v : a)
    v = oracle::random_complex(rng, 0.1, 0.6);
  for (auto& v : x0)
    v = oracle::random_complex(rng, 0.5, 1.5);
  const Recurrence rec(a, x0);
  const auto x = iterate(rec, 20);
  for (std::size_t n = 0; n <= 20; ++n) {
    const Complex want = companion_term(rec, n);
    EXPECT_LT(std::abs(x[n] - want), 1e-12 * (1 + std::abs(want))) << n;
  }
}

TEST(CharacteristicPolynomial, Signs)
{
  EXPECT_EQ(characteristic_polynomial(fibonacci()).coeffs(), (std::vector<Complex>{-1.0, -1.0, 1.0}));
  EXPECT_EQ(characteristic_polynomial(Recurrence({2.0}, {3.0})).coeffs(),
            (std::vector<Complex>{-2.0, 1.0}));
}

TEST(CharacteristicPolynomial, RootsHaveSmallResidual)
{
  std::mt19937_64 rng(32);
  std::vector<Complex> a(5), x0(5, 1.0);
  for (auto& v : a)
    v = oracle::random_complex(rng, 0.2, 1.0);
  const Polynomial p = characteristic_polynomial(Recurrence(a, x0));
  for (const auto& z : find_roots(p).roots)
    EXPECT_LT(std::abs(p(z)) / (p.max_coeff_abs() * std::pow(1 + std::abs(z), 5.0)), 1e-10);
}

TEST(CharacteristicPolynomial, AnnihilatesCompanionMatrix)
{
  std::mt19937_64 rng(33);
  for (std::size_t m = 1; m <= 6; ++m) {
    std::vector<Complex> a(m), x0(m, 0.0);
    for (auto& v : a)
      v = oracle::random_complex(rng, 0.2, 1.5);
    Matrix<Complex> c(m, m);
    for (std::size_t i = 0; i + 1 < m; ++i)
      c(i, i + 1) = 1.0;
    for (std::size_t j = 0; j < m; ++j)
      c(m - 1, j) = a[j];
    const auto residual = characteristic_polynomial(Recurrence(a, x0))(c);
    EXPECT_LT(max_abs(residual), 1e-9) << "m=" << m;
  }
}

TEST(SolveClosedForm, Binet)
{
  const ClosedForm cf = solve_closed_form(fibonacci());
  const double s5 = std::sqrt(5.0);
  ASSERT_EQ(cf.roots.size(), 2u);
  EXPECT_NEAR(cf.roots[0].real(), (1 + s5) / 2, 1e-12);
  EXPECT_NEAR(cf.roots[1].real(), (1 - s5) / 2, 1e-12);
  // 2x2 solve: c1 + c2 = 0, c1 phi + c2 psi = 1
  EXPECT_LT(std::abs(cf.coefficients[0] - 1 / s5), 1e-10);
  EXPECT_LT(std::abs(cf.coefficients[1] + 1 / s5), 1e-10);
  EXPECT_NEAR(cf.coefficients[0].real(), 0.4472135955, 1e-10);
  EXPECT_NEAR(evaluate_closed_form(cf, 10).real(), 55.0, 1e-9);
  EXPECT_NEAR(evaluate_closed_form(cf, 10).imag(), 0.0, 1e-9);
}

TEST(SolveClosedForm, Geometric)
{
  const ClosedForm cf = solve_closed_form(Recurrence({2.0}, {3.0}));
  ASSERT_EQ(cf.roots.size(), 1u);
  EXPECT_LT(std::abs(cf.roots[0] - 2.0), 1e-14);
  EXPECT_LT(std::abs(cf.coefficients[0] - 3.0), 1e-14);
}

TEST(SolveClosedForm, EvaluateAtZeroIsCoefficientSum)
{
  std::mt19937_64 rng(34);
  const auto cf = solve_closed_form(with_roots(oracle::separated_points(rng, 4, 0.3), rng));
  Complex sum{0.0};
  for (const auto& c : cf.coefficients)
    sum += c;
  EXPECT_LT(std::abs(evaluate_closed_form(cf, 0) - sum), 1e-15 * (1 + std::abs(sum)));
}

TEST(SolveClosedForm, RejectsZeroAndRepeatedRoots)
{
  try {
    solve_closed_form(Recurrence({0.0, 1.0}, {1.0, 1.0})); // T^2 - T has root 0
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.kind(), Hypothesis::zero_root);
  }
  try {
    solve_closed_form(Recurrence({-1.0, 2.0}, {1.0, 2.0})); // (T - 1)^2
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.kind(), Hypothesis::repeated_root);
  }
}

TEST(SolveClosedForm, RandomOrderSixMatchesIteration)
{
  std::mt19937_64 rng(35);
  const auto rec = with_roots(oracle::separated_points(rng, 6, 0.2, 0.4, 1.6), rng);
  const auto cf = solve_closed_form(rec);
  EXPECT_LT(closed_form_deviation(cf, iterate(rec, 30)), 1e-8);
  const auto x = iterate(rec, 25);
  EXPECT_LT(std::abs(evaluate_closed_form(cf, 25) - x[25]), 1e-8 * closed_form_scale(cf, 25));
}

TEST(SolveClosedForm, PropertyRoundTripAndEliminationAgreement)
{
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + trial % 8;
    const auto rec = with_roots(oracle::separated_points(rng, m, 0.2, 0.3, 2.0), rng);
    const auto cf = solve_closed_form(rec);
    EXPECT_LT(closed_form_deviation(cf, iterate(rec, 30)), 1e-8) << "m=" << m;

    // independent route: solve V c = [x_1..x_m] by LU on the same roots
    const auto x = iterate(rec, m);
    Eigen::VectorXcd rhs(m);
    for (std::size_t t = 0; t < m; ++t)
      rhs(t) = x[t + 1];
    const Eigen::VectorXcd c = oracle::vandermonde_direct(cf.roots.roots).fullPivLu().solve(rhs);
    for (std::size_t i = 0; i < m; ++i)
      EXPECT_LT(std::abs(cf.coefficients[i] - c(i)), 1e-8 * (1e-3 + std::abs(c(i)))) << "m=" << m;
  }
}
