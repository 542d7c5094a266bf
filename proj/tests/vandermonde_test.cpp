#include <gtest/gtest.h>

#include <random>

#include <recspec/vandermonde.hpp>

#include "support/oracles.hpp"

using namespace recspec;

namespace {

RootSet nodes_of(std::initializer_list<Complex> v) { return RootSet(std::vector<Complex>(v)); }

} // namespace

TEST(VandermondeMatrix, RowsStartAtFirstPower)
{
  const auto v = vandermonde_matrix(nodes_of({1.0, 2.0}));
  EXPECT_EQ(v, (Matrix<Complex>{{1.0, 2.0}, {1.0, 4.0}}));
}

TEST(VandermondeDet, TwoByTwo)
{
  EXPECT_EQ(vandermonde_det(nodes_of({1.0, 2.0})), Complex(2.0));
  EXPECT_EQ(vandermonde_det(nodes_of({})), Complex(1.0));
  EXPECT_EQ(vandermonde_det(nodes_of({3.0, 0.0, 1.0})), Complex(0.0));
}

TEST(VandermondeDet, MatchesLu)
{
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto pts = oracle::separated_points(rng, n, 0.2);
    const Complex want = oracle::elimination_det(oracle::vandermonde_direct(pts));
    const Complex got = vandermonde_det(RootSet(pts));
    EXPECT_LT(std::abs(got - want), 1e-9 * std::abs(want)) << "n=" << n;
  }
}

TEST(VandermondeInverse, TwoByTwoFixesSign)
{
  // adjugate of [[1,2],[1,4]] over det 2
  const auto w = vandermonde_inverse(nodes_of({1.0, 2.0}));
  EXPECT_NEAR(std::abs(w(0, 0) - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w(0, 1) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w(1, 0) + 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w(1, 1) - 0.5), 0.0, 1e-15);
}

TEST(VandermondeInverse, SingleNode)
{
  const auto w = vandermonde_inverse(nodes_of({Complex(0.0, 2.0)}));
  EXPECT_LT(std::abs(w(0, 0) - 1.0 / Complex(0.0, 2.0)), 1e-15);
  EXPECT_LT(std::abs((w * vandermonde_matrix(nodes_of({Complex(0.0, 2.0)})))(0, 0) - 1.0), 1e-15);
}

TEST(VandermondeInverse, RejectsZeroAndCoincidentNodes)
{
  try {
    vandermonde_inverse(nodes_of({1.0, 0.0}));
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.kind(), Hypothesis::zero_node);
    EXPECT_STREQ(e.what(), "singular: zero node");
  }
  try {
    vandermonde_inverse(nodes_of({1.0, 1.0 + 1e-12, 2.0}));
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.kind(), Hypothesis::ill_conditioned);
    ASSERT_TRUE(e.value().has_value());
    EXPECT_NEAR(*e.value(), 1e-12, 1e-15);
  }
  EXPECT_THROW(vandermonde_inverse(nodes_of({})), ArgumentError);
}

TEST(VandermondeInverse, ThresholdIsConfigurable)
{
  Tolerances loose;
  loose.distinct_rel = 0.5;
  EXPECT_THROW(vandermonde_inverse(nodes_of({1.0, 1.5}), loose), HypothesisError);
  EXPECT_NO_THROW(vandermonde_inverse(nodes_of({1.0, 1.5})));
}

TEST(VandermondeInverse, ResidualSevenNodes)
{
  std::mt19937_64 rng(22);
  const auto pts = oracle::separated_points(rng, 7, 0.2);
  const auto v = oracle::vandermonde_direct(pts);
  const auto w = oracle::to_eigen(vandermonde_inverse(RootSet(pts)));
  const auto n = static_cast<Eigen::Index>(pts.size());
  EXPECT_LT(oracle::max_abs(w * v - oracle::CMat::Identity(n, n)), 1e-9);
}

TEST(VandermondeInverse, PropertyAgreesWithElimination)
{
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const auto pts = oracle::separated_points(rng, n, 0.25, 0.4, 2.0);
    const auto v = oracle::vandermonde_direct(pts);
    const auto w = oracle::to_eigen(vandermonde_inverse(RootSet(pts)));
    const auto id = oracle::CMat::Identity(n, n);
    EXPECT_LT(oracle::max_abs(w * v - id), 1e-9) << "n=" << n;
    EXPECT_LT(oracle::max_abs(v * w - id), 1e-9) << "n=" << n;

    const auto ref = oracle::elimination_inverse(v);
    const double scale = oracle::max_abs(ref);
    EXPECT_LT(oracle::max_abs(w - ref), 1e-8 * scale) << "n=" << n;

    // det(V) det(W) = 1
    const Complex prod = vandermonde_det(RootSet(pts)) * oracle::elimination_det(w);
    EXPECT_LT(std::abs(prod - 1.0), 1e-8) << "n=" << n;
  }
}
