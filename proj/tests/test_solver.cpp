#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "modspace/solver.hpp"
#include "modspace/tolerance.hpp"
#include "support/oracles.hpp"

using namespace modspace;

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix diag(std::size_t d, double s) {
  Matrix a(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) a[i][i] = s;
  return a;
}

const ModularSpec kL1 = ModularSpec::ppower(1.0);

}  // namespace

TEST(VerifyContraction, HalfHasRatioExactlyOneHalf) {
  Sampler sampler(1);
  const AxiomReport r = verify_contraction(MapSpec::half(), kL1, 0.5, 3, sampler, 2000);
  EXPECT_TRUE(r.passed());
  ASSERT_TRUE(r.max_ratio);
  EXPECT_EQ(*r.max_ratio, 0.5);
}

TEST(VerifyContraction, UnderclaimedConstantIsCaught) {
  Sampler sampler(2);
  const AxiomReport r = verify_contraction(MapSpec::affine(diag(2, 0.9), Point::zeros(2)), kL1,
                                           0.5, 2, sampler, 1000);
  EXPECT_GE(r.count(Condition::Contraction), 1u);
  EXPECT_NEAR(*r.max_ratio, 0.9, 1e-9);
}

TEST(VerifyContraction, EmpiricalRatioDrawsTheSamePairs) {
  const MapSpec t = MapSpec::affine({{0.2, 0.3}, {-0.1, 0.4}}, Point{1.0, 0.0});
  Sampler a(3), b(3);
  const AxiomReport r = verify_contraction(t, kL1, 0.9, 2, a, 500);
  EXPECT_EQ(*r.max_ratio, empirical_contraction_ratio(t, kL1, 2, b, 500));
}

TEST(VerifyContraction, EmpiricalRatioReachesInducedNorm) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t % 6);
    const Matrix a = oracle::random_l1_contraction(rng, d, 0.7);
    Sampler sampler(static_cast<std::uint64_t>(t));
    const double c =
        empirical_contraction_ratio(MapSpec::affine(a, Point::zeros(d)), kL1, d, sampler, 4000);
    // Single-axis pairs hit the worst column; cancellation costs a few 1e-12.
    EXPECT_NEAR(c, 0.7, 1e-9);
  }
}

TEST(VerifySContraction, HalfUnderUnitPower) {
  // rho(c (x - y) / 2) = (c / 2) rho(x - y)
  Sampler s1(5);
  EXPECT_TRUE(verify_s_contraction(MapSpec::half(), kL1, 1.5, 0.75, 1.0, 2, s1, 2000).passed());
  Sampler s2(5);
  const AxiomReport r = verify_s_contraction(MapSpec::half(), kL1, 3.0, 1.2, 1.0, 2, s2, 2000);
  EXPECT_GE(r.count(Condition::SContraction), 1u);
  EXPECT_NEAR(*r.max_ratio, 1.5, 1e-9);
}

TEST(VerifySContraction, RejectsBadConstants) {
  Sampler sampler(1);
  EXPECT_THROW(verify_s_contraction(MapSpec::half(), kL1, 1.0, 0.5, 1.0, 1, sampler, 1),
               UsageError);
  EXPECT_THROW(verify_s_contraction(MapSpec::half(), kL1, 2.0, 0.5, 0.0, 1, sampler, 1),
               UsageError);
}

TEST(OrbitBound, ConstantMap) {
  const OrbitBound b = orbit_bound_check(MapSpec::constant(3.0), kL1, Point{-7.0, 1.0}, 10);
  EXPECT_EQ(b.sup, 12.0);
  EXPECT_TRUE(b.stabilized);
  EXPECT_EQ(b.argmax, 1u);
}

TEST(OrbitBound, HalfPeaksAtFirstStep) {
  const OrbitBound b = orbit_bound_check(MapSpec::half(), kL1, Point{1.0}, 50);
  EXPECT_EQ(b.sup, 1.0);
  EXPECT_TRUE(b.stabilized);
  EXPECT_EQ(b.argmax, 1u);
}

TEST(OrbitBound, AffineApproachesLimitFromBelow) {
  const MapSpec t = MapSpec::affine(diag(1, 0.5), Point{1.0});
  const OrbitBound b = orbit_bound_check(t, kL1, Point{0.0}, 100);
  EXPECT_NEAR(b.sup, 4.0, 1e-12);
  EXPECT_LE(b.sup, 4.0);
  EXPECT_TRUE(b.stabilized);
}

TEST(OrbitBound, OverflowIsUnbounded) {
  const OrbitBound b =
      orbit_bound_check(MapSpec::affine(diag(1, 1e100), Point{0.0}), kL1, Point{1.0}, 10);
  EXPECT_TRUE(std::isinf(b.sup));
  EXPECT_FALSE(b.stabilized);
}

TEST(Picard, ConstantMapSettlesOnSecondStep) {
  const IterationTrace tr = picard_solve(MapSpec::constant(2.5), kL1, Point{-1.0}, 1e-10, 100);
  ASSERT_TRUE(tr.converged);
  EXPECT_EQ(tr.iterations(), 2u);
  EXPECT_EQ(*tr.fixed_point, Point{2.5});
  EXPECT_EQ(tr.steps[1].x, Point{2.5});
  EXPECT_EQ(tr.steps[1].residual, 0.0);
}

TEST(Picard, HalfStepsArePowersOfTwo) {
  const IterationTrace tr = picard_solve(MapSpec::half(), kL1, Point{1.0}, 1e-10, 1000);
  ASSERT_TRUE(tr.converged);
  // 2^-33 > 1e-10 >= 2^-34
  EXPECT_EQ(tr.iterations(), 34u);
  EXPECT_TRUE(std::isnan(tr.steps[0].step_mod));
  for (std::size_t n = 1; n < tr.steps.size(); ++n) {
    EXPECT_EQ(tr.steps[n].n, n);
    EXPECT_EQ(tr.steps[n].step_mod, std::ldexp(1.0, -static_cast<int>(n)));
    EXPECT_EQ(tr.steps[n].residual, std::ldexp(1.0, -static_cast<int>(n) - 1));
    EXPECT_EQ(tr.steps[n].doubled_orbit, std::ldexp(1.0, 1 - static_cast<int>(n)));
  }
}

TEST(Picard, AffineErrorHalvesEachStep) {
  const MapSpec t = MapSpec::affine(diag(1, 0.5), Point{1.0});
  const IterationTrace tr = picard_solve(t, kL1, Point{0.0}, 1e-10, 1000);
  ASSERT_TRUE(tr.converged);
  for (const IterationStep& s : tr.steps) {
    EXPECT_EQ(distance(kL1, s.x, Point{2.0}), std::ldexp(2.0, -static_cast<int>(s.n)));
  }
}

TEST(Picard, OverflowCarriesPartialTrace) {
  const MapSpec t = MapSpec::affine(diag(1, 1e100), Point{0.0});
  try {
    picard_solve(t, kL1, Point{1.0}, 1e-10, 100);
    FAIL() << "expected divergence";
  } catch (const PicardDivergence& e) {
    EXPECT_FALSE(e.trace().converged);
    EXPECT_EQ(e.trace().steps.size(), 4u);  // 1, 1e100, 1e200, 1e300; next overflows
    EXPECT_TRUE(std::isinf(e.trace().steps.back().residual));
  }
}

TEST(Picard, ZeroIterationsReturnsStartOnly) {
  const IterationTrace tr = picard_solve(MapSpec::half(), kL1, Point{1.0}, 1e-10, 0);
  EXPECT_FALSE(tr.converged);
  ASSERT_EQ(tr.steps.size(), 1u);
  EXPECT_EQ(tr.steps[0].x, Point{1.0});
  EXPECT_EQ(tr.steps[0].residual, 0.5);
}

TEST(Picard, ExpandingMapDoesNotConverge) {
  const IterationTrace tr =
      picard_solve(MapSpec::affine(diag(1, 1.1), Point{0.0}), kL1, Point{1.0}, 1e-10, 50);
  EXPECT_FALSE(tr.converged);
  EXPECT_EQ(tr.iterations(), 50u);
}

TEST(Picard, RejectsBadInput) {
  EXPECT_THROW(picard_solve(MapSpec::half(), kL1, Point{1.0}, 0.0, 10), UsageError);
  EXPECT_THROW(picard_solve(MapSpec::affine(diag(2, 0.5), Point::zeros(2)), kL1, Point{1.0}, 1e-9,
                            10),
               UsageError);
}

TEST(PicardProperties, StepsDecayGeometrically) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 5);
    const double c = 0.3 + 0.03 * t;
    const Matrix a = oracle::random_l1_contraction(rng, d, c);
    Sampler sampler(static_cast<std::uint64_t>(100 + t));
    const Point x0 = sampler.point_at_scale(d, -1, 1);
    const IterationTrace tr =
        picard_solve(MapSpec::affine(a, Point::filled(d, 1.0)), kL1, x0, 1e-10, 2000);
    ASSERT_TRUE(tr.converged);
    for (std::size_t n = 1; n + 1 < tr.steps.size(); ++n) {
      EXPECT_TRUE(leq_tol(tr.steps[n + 1].step_mod, c * tr.steps[n].step_mod))
          << "t=" << t << " n=" << n;
    }
  }
}

TEST(PicardProperties, MatchesDirectSolve) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 8);
    const Matrix a = oracle::random_l1_contraction(rng, d, 0.5);
    std::vector<double> b(d);
    for (double& v : b) v = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    const IterationTrace tr = picard_solve(MapSpec::affine(a, Point(b)), kL1, Point::zeros(d),
                                           1e-10, 1000);
    ASSERT_TRUE(tr.converged);
    const Point exact(oracle::affine_fixed_point(a, b));
    EXPECT_LE(distance(kL1, *tr.fixed_point, exact), 1e-9);
  }
}

TEST(PicardProperties, ErrorObeysAPrioriBound) {
  // rho(x_n - x*) <= c^n / (1 - c) rho(x_1 - x_0) in a convex modular.
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const std::size_t d = 3;
    const double c = 0.6;
    const Matrix a = oracle::random_l1_contraction(rng, d, c);
    const std::vector<double> b{1.0, -1.0, 0.5};
    const IterationTrace tr =
        picard_solve(MapSpec::affine(a, Point(b)), kL1, Point::zeros(d), 1e-12, 1000);
    const Point exact(oracle::affine_fixed_point(a, b));
    const double first = tr.steps[1].step_mod;
    for (const IterationStep& s : tr.steps) {
      const double bound = std::pow(c, static_cast<double>(s.n)) / (1.0 - c) * first;
      EXPECT_LE(distance(kL1, s.x, exact), bound * (1.0 + 1e-9) + 1e-14);
    }
  }
}

TEST(PicardProperties, FixedPointIsUnique) {
  const std::vector<MapSpec> maps{MapSpec::half(), MapSpec::constant(0.25),
                                  MapSpec::logistic_damped(0.5),
                                  MapSpec::affine(diag(2, 0.5), Point{1.0, 1.0})};
  Sampler sampler(10);
  for (const MapSpec& t : maps) {
    for (int trial = 0; trial < 20; ++trial) {
      const Point x0 = sampler.point_at_scale(2, -1, 2);
      const Point y0 = x0 + Point::filled(2, 1.0 + sampler.uniform(0.0, 5.0));
      ASSERT_GE(distance(kL1, x0, y0), 1.0);
      const auto a = picard_solve(t, kL1, x0, 1e-10, 2000);
      const auto b = picard_solve(t, kL1, y0, 1e-10, 2000);
      ASSERT_TRUE(a.converged && b.converged) << t.describe();
      EXPECT_LE(distance(kL1, *a.fixed_point, *b.fixed_point), 1e-9) << t.describe();
    }
  }
}

TEST(PowerIndex, Examples) {
  EXPECT_EQ(power_index(0.9, 4.0), 20u);
  EXPECT_EQ(power_index(0.5, 4.0), 4u);
  EXPECT_EQ(power_index(0.25, 4.0), 2u);
  EXPECT_EQ(power_index(0.1, 4.0), 1u);
  EXPECT_EQ(power_index(0.0, 1e9), 1u);
}

TEST(PowerIndex, RejectsBadInput) {
  EXPECT_THROW(power_index(1.0, 2.0), UsageError);
  EXPECT_THROW(power_index(-0.1, 2.0), UsageError);
  EXPECT_THROW(power_index(0.5, 0.0), UsageError);
  EXPECT_THROW(power_index(0.5, INFINITY), NotApplicableError);
}

TEST(PowerIndex, AgreesWithEnumeration) {
  Sampler sampler(11);
  for (int t = 0; t < 5000; ++t) {
    const double c = sampler.uniform(0.01, 0.999);
    const double k = std::exp2(sampler.uniform(-3.0, 10.0));
    EXPECT_EQ(power_index(c, k), oracle::power_index_by_enumeration(c, k))
        << "c=" << c << " k=" << k;
  }
}

TEST(SolveViaPower, HalfUnderSquareModular) {
  const ModularSpec m = ModularSpec::ppower(2.0);
  const IterationTrace tr = solve_via_power(MapSpec::half(), m, 0.5, Point{1.0}, 1e-10, 1000);
  ASSERT_TRUE(tr.converged);
  EXPECT_EQ(tr.map_power, 4u);
  EXPECT_EQ(tr.delta2_constant, 4.0);
  const auto direct = picard_solve(MapSpec::half(), m, Point{1.0}, 1e-10, 1000);
  EXPECT_LE(distance(m, *tr.fixed_point, *direct.fixed_point), 1e-9);
}

TEST(SolveViaPower, AffineUnderSquareModular) {
  const ModularSpec m = ModularSpec::ppower(2.0);
  const MapSpec t = MapSpec::affine(diag(1, 0.5), Point{1.0});
  const IterationTrace tr = solve_via_power(t, m, 0.25, Point{0.0}, 1e-10, 1000);
  ASSERT_TRUE(tr.converged);
  EXPECT_EQ(tr.map_power, 2u);
  EXPECT_LE(distance(m, *tr.fixed_point, Point{2.0}), 1e-9);
}

TEST(SolveViaPower, SmallProductRunsPlainPicard) {
  const MapSpec t = MapSpec::affine(diag(1, 0.1), Point{1.0});
  const IterationTrace power = solve_via_power(t, kL1, 0.1, Point{0.0}, 1e-10, 1000);
  const IterationTrace plain = picard_solve(t, kL1, Point{0.0}, 1e-10, 1000);
  EXPECT_EQ(power.map_power, 1u);
  ASSERT_EQ(power.steps.size(), plain.steps.size());
  for (std::size_t i = 0; i < power.steps.size(); ++i) EXPECT_EQ(power.steps[i].x, plain.steps[i].x);
}

TEST(SolveViaPower, FalseClaimIsInconsistent) {
  // T x = 1 - x has T^2 = I, so x0 = 0 is fixed by T^2 but not by T.
  const MapSpec t = MapSpec::affine(diag(1, -1.0), Point{1.0});
  EXPECT_THROW(solve_via_power(t, kL1, 0.3, Point{0.0}, 1e-10, 100), InconsistencyError);
}

TEST(SolveViaPower, UnboundedDelta2IsNotApplicable) {
  const ModularSpec m = ModularSpec::orlicz(Integrand::ExpMinusOne, 2);
  EXPECT_THROW(solve_via_power(MapSpec::half(), m, 0.5, Point{1.0, 1.0}, 1e-10, 100),
               NotApplicableError);
}

TEST(SolveViaPower, OrliczULogUsesSampledConstant) {
  const ModularSpec m = ModularSpec::orlicz(Integrand::ULog, 2);
  const IterationTrace tr =
      solve_via_power(MapSpec::logistic_damped(0.5), m, 0.5, Point{3.0, -1.0}, 1e-10, 1000);
  ASSERT_TRUE(tr.converged);
  ASSERT_TRUE(tr.delta2_constant);
  EXPECT_LE(*tr.delta2_constant, 4.0 + 1e-9);
  EXPECT_GE(tr.map_power, 2u);
  EXPECT_LE(distance(m, *tr.fixed_point, Point::zeros(2)), 1e-9);
}
