#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aperispec/bounds.hpp"
#include "aperispec/checks/generators.hpp"
#include "aperispec/checks/oracles.hpp"
#include "aperispec/errors.hpp"
#include "aperispec/partition.hpp"
#include "aperispec/symbolic_ops.hpp"

using namespace aperispec;

namespace {

const Lattice Z = Lattice::integer(1);
const double kSchur = 2.0 * std::sqrt(2.0) + 1.0;

Hamiltonian fib_schrodinger() { return schrodinger_hamiltonian(Z, fibonacci_alphabet(), 1.0); }

}  // namespace

TEST(Partition, TrapezoidShape) {
  EXPECT_EQ(trapezoid(0.0), 1.0);
  EXPECT_EQ(trapezoid(0.5), 1.0);
  EXPECT_EQ(trapezoid(-0.5), 1.0);
  EXPECT_NEAR(trapezoid(7.0 / 12.0), 0.5, 1e-15);
  EXPECT_EQ(trapezoid(2.0 / 3.0), 0.0);
  EXPECT_EQ(trapezoid(0.9), 0.0);
}

TEST(Partition, OverlapCounts) {
  EXPECT_EQ(overlap_count(Z), 3);
  EXPECT_EQ(overlap_count(Lattice::integer(2)), 9);
  EXPECT_EQ(overlap_count(Lattice::integer(3)), 27);
}

TEST(Partition, AnalyticLipschitzInOneDimension) {
  const auto pc = partition_constants(Z);
  EXPECT_TRUE(pc.analytic);
  EXPECT_EQ(pc.C_L, 6.0);
  EXPECT_EQ(pc.Noverlap, 3);
  EXPECT_NEAR(sampled_lipschitz_constant(Z, 1e-4), 6.0, 1e-6);
}

TEST(Partition, SumsToOne) {
  gen::Rng rng(5);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  Eigen::MatrixXd skew(2, 2);
  skew << 1.0, 0.5, 0.0, 1.0;
  const Lattice lat2(skew);
  for (int i = 0; i < 2000; ++i) {
    EXPECT_NEAR(partition_sum(Z, Eigen::VectorXd::Constant(1, u(rng))), 1.0, 1e-10);
    EXPECT_NEAR(partition_sum(lat2, Eigen::Vector2d(u(rng), u(rng))), 1.0, 1e-10);
  }
}

TEST(Partition, BumpSupportedInTwoThirdsCube) {
  EXPECT_EQ(partition_bump(Z, Eigen::VectorXd::Constant(1, 0.67)), 0.0);
  EXPECT_EQ(partition_bump(Z, Eigen::VectorXd::Constant(1, 0.2)), 1.0);
  EXPECT_GT(partition_bump(Z, Eigen::VectorXd::Constant(1, 0.6)), 0.0);
}

TEST(Partition, GradientMatchesFiniteDifferences) {
  gen::Rng rng(6);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  const Lattice lat2 = Lattice::integer(2);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Vector2d x(u(rng), u(rng));
    // Stay away from the kinks at |u| = 1/3, 1/2, 2/3 where the derivative jumps.
    bool near_kink = false;
    for (double c : {1.0 / 3.0, 0.5, 2.0 / 3.0})
      for (int j = 0; j < 2; ++j) near_kink = near_kink || std::abs(std::abs(x[j]) - c) < 1e-5;
    if (near_kink) continue;
    const Eigen::VectorXd g = partition_gradient(lat2, x);
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(g[j], oracles::partition_gradient_fd(lat2, x, j), 1e-5);
  }
}

TEST(Partition, RescaledLipschitz) {
  // x -> qp(x / r) has Lipschitz constant C_L / r; sampled with difference quotients on a fine grid.
  for (double r : {2.0, 5.0, 10.0}) {
    double best = 0.0;
    const double h = 1e-4;
    for (double x = -r; x < r; x += h) {
      const double a = partition_bump(Z, Eigen::VectorXd::Constant(1, x / r));
      const double b = partition_bump(Z, Eigen::VectorXd::Constant(1, (x + h) / r));
      best = std::max(best, std::abs(b - a) / h);
    }
    EXPECT_LE(best, 6.0 / r * 1.001);
    EXPECT_GE(best, 6.0 / r * 0.99);
  }
}

TEST(Partition, TwoDimensionalGridConstant) {
  const auto pc = partition_constants(Lattice::integer(2), {.grid_step = 1e-3});
  EXPECT_FALSE(pc.analytic);
  EXPECT_EQ(pc.Noverlap, 9);
  EXPECT_GE(pc.C_L_sampled, 6.0 - 1e-9);
  EXPECT_DOUBLE_EQ(pc.C_L, pc.C_L_sampled * 1.01);
}

TEST(Cdl, Values) {
  const auto pc = partition_constants(Z);
  EXPECT_EQ(cdl_constant(pc, Z), 288.0);
  PartitionConstants one = pc;
  one.C_L = 1.0;
  EXPECT_EQ(cdl_constant(one, Z), 48.0);
  const auto pc2 = partition_constants(Lattice::integer(2), {.grid_step = 1e-3});
  EXPECT_DOUBLE_EQ(cdl_constant(pc2, Lattice::integer(2)), 16.0 * 9.0 * pc2.C_L);
}

TEST(FiniteBound, ZeroDistanceGivesZero) {
  const auto c = finite_range_bound(fib_schrodinger(), 0.0, partition_constants(Z));
  EXPECT_EQ(c.bound, 0.0);
  EXPECT_EQ(c.effective, 0.0);
}

TEST(FiniteBound, SchrodingerClosedForm) {
  const auto c = finite_range_bound(fib_schrodinger(), 1.0 / 6.0, partition_constants(Z));
  EXPECT_NEAR(c.bound, 288.0 * kSchur / 6.0, 1e-10);
  EXPECT_NEAR(c.bound, 183.7645, 1e-4);
  EXPECT_NEAR(c.fallback, 2.0 * kSchur, 1e-12);
  EXPECT_EQ(c.effective, c.fallback);
  EXPECT_EQ(c.theorem, "finite-range");
}

TEST(FiniteBound, LinearInHopConstant) {
  const Alphabet A = fibonacci_alphabet();
  Hamiltonian H = fib_schrodinger();
  std::vector<HopTerm> terms = H.terms();
  for (auto& t : terms) t.coef.C_t = 2.0 * H.C_hop();
  const Hamiltonian H2(Z, 1, 1.0, terms);
  const auto pc = partition_constants(Z);
  EXPECT_NEAR(finite_range_bound(H2, 0.01, pc).bound, 2.0 * finite_range_bound(H, 0.01, pc).bound, 1e-9);
}

TEST(FiniteBound, RejectsDistanceOutsideUnitInterval) {
  EXPECT_THROW(finite_range_bound(fib_schrodinger(), 1.5, partition_constants(Z)), DomainError);
  EXPECT_THROW(finite_range_bound(fib_schrodinger(), -0.1, partition_constants(Z)), DomainError);
}

TEST(FiniteBound, DigestIsDeterministicAndSensitive) {
  const auto pc = partition_constants(Z);
  const auto a = finite_range_bound(fib_schrodinger(), 0.125, pc, false, "x");
  const auto b = finite_range_bound(fib_schrodinger(), 0.125, pc, false, "x");
  const auto c = finite_range_bound(fib_schrodinger(), 0.125, pc, true, "x");
  EXPECT_EQ(a.digest, b.digest);
  EXPECT_NE(a.digest, c.digest);
  EXPECT_EQ(a.digest.size(), 16u);
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(InfiniteBound, ClosedFormAndConsistency) {
  const Hamiltonian H = synthetic_long_range(1.0, 16);
  const auto pc = partition_constants(Z);
  const auto c = infinite_range_bound(H, 1.0, 0.25, pc);
  EXPECT_EQ(c.theorem, "infinite-range");
  ASSERT_TRUE(c.constants.C_H.has_value());
  EXPECT_NEAR(c.bound, 2.0 * 288.0 * schur_norm(H) * (1.0 + H.C_hop()) * 0.25, 1e-9);
  EXPECT_LE(c.effective, c.fallback);
}

TEST(InfiniteBound, RefusesViolatedGrowth) {
  const Hamiltonian H(Z, 1, 1.0,
                      {{LatticePoint{1}, CoefficientFn::constant(1.0, 1.0, 5.0)},
                       {LatticePoint{-1}, CoefficientFn::constant(1.0, 1.0, 5.0)}});
  try {
    infinite_range_bound(H, 2.0, 0.1, partition_constants(Z));
    FAIL() << "expected refusal";
  } catch (const CertificateRefusedError& e) {
    EXPECT_NE(std::string(e.what()).find("s = 1"), std::string::npos);
  }
  EXPECT_NO_THROW(infinite_range_bound(H, 5.0, 0.1, partition_constants(Z)));
  EXPECT_THROW(infinite_range_bound(H, 0.5, 0.1, partition_constants(Z)), DomainError);
}

TEST(ResolventThreshold, SchrodingerValue) {
  const auto pc = partition_constants(Z);
  const Hamiltonian H = fib_schrodinger();
  // R~ = R_H + distortion + 1 = 3.
  EXPECT_NEAR(resolvent_gap_threshold(H, 10.0, pc, Z), 16.0 * 3.0 * 6.0 / (2.0 * 7.0) * kSchur, 1e-10);
  EXPECT_NEAR(resolvent_gap_threshold(H, 10.0, pc, Z), 78.756, 1e-3);
  EXPECT_THROW(resolvent_gap_threshold(H, 3.0, pc, Z), DomainError);
  double prev = resolvent_gap_threshold(H, 3.5, pc, Z);
  for (double r = 4.0; r < 100.0; r += 0.5) {
    const double v = resolvent_gap_threshold(H, r, pc, Z);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Fallback, TwiceSchurNorm) {
  EXPECT_NEAR(norm_fallback_bound(fib_schrodinger()), 2.0 * kSchur, 1e-14);
  const auto c = norm_fallback_certificate(fib_schrodinger(), 0.3, partition_constants(Z));
  EXPECT_EQ(c.bound, c.fallback);
  EXPECT_EQ(c.theorem, "norm-fallback");
}
