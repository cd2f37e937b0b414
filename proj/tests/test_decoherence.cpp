#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "nanobeam/decoherence.hpp"
#include "nanobeam/spectrum.hpp"
#include "oracles.hpp"

using namespace nanobeam;
using std::numbers::pi;

namespace {

const double kDephasingLambda = 1.0 / (100.0 * pi * pi);
const double kHalf = std::sqrt(0.5);

ModeTable clamped_hinged() { return mode_frequencies(unit_spec(BoundaryCondition::ClampedHinged), 3); }

std::pair<std::complex<double>, std::complex<double>> random_amplitudes(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::complex<double> a{g(rng), g(rng)}, b{g(rng), g(rng)};
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  return {a / norm, b / norm};
}

}  // namespace

TEST(TwoModeEnergy, Examples) {
  EXPECT_EQ(two_mode_energy(1.0, 1.0, 0, 0, 1.0), 0.0);
  const ModeTable t = clamped_hinged();
  EXPECT_NEAR(two_mode_energy(t.mode(1).omega, t.mode(2).omega, 1, 0, 1.0), 15.4182, 0.004);
  const double w1 = pi * pi, w2 = 4 * pi * pi;
  EXPECT_EQ(two_mode_energy(w1, w2, 4, 0, 1.0), two_mode_energy(w1, w2, 0, 1, 1.0));
  EXPECT_THROW(two_mode_energy(1.0, 1.0, -1, 0, 1.0), DomainError);
}

TEST(OffdiagDecay, Examples) {
  EXPECT_EQ(offdiag_decay(0.0, 5.0, 12.0), 1.0);
  EXPECT_DOUBLE_EQ(offdiag_decay(1.0, 1.0, 1.0), std::exp(-1.0));
  EXPECT_NEAR(offdiag_decay(-19.1285, 1.013212e-3, 2.6974), std::exp(-1.0), 1e-3);
  EXPECT_EQ(offdiag_decay(3.0, 0.0, 10.0), 1.0);
  EXPECT_EQ(offdiag_decay(3.0, 2.0, 0.0), 1.0);
  EXPECT_LT(offdiag_decay(3.0, 2.0, 0.1), 1.0);
  EXPECT_GT(offdiag_decay(3.0, 2.0, 0.1), 0.0);
  EXPECT_THROW(offdiag_decay(1.0, 1.0, -1e-9), DomainError);
}

TEST(DecoherenceTime, Examples) {
  const ModeTable hh = mode_frequencies(unit_spec(), 2);
  EXPECT_TRUE(std::isinf(decoherence_time(make_scenario(hh, 1, 2, 4, 1, kHalf, kHalf, 1.0))));

  const ModeTable ch = clamped_hinged();
  const double t11 = decoherence_time(make_scenario(ch, 1, 2, 1, 1, kHalf, kHalf, kDephasingLambda));
  const double t21 = decoherence_time(make_scenario(ch, 1, 2, 2, 1, kHalf, kHalf, kDephasingLambda));
  EXPECT_NEAR(t11, 0.8270, 1e-3);
  EXPECT_NEAR(t21, 2.6974, 1e-3);
  // 40-digit references from the same roots
  EXPECT_NEAR(t11, 0.82696609939307, 1e-11);
  EXPECT_NEAR(t21, 2.69736773356191, 1e-11);

  EXPECT_TRUE(std::isinf(decoherence_time(make_scenario(ch, 1, 2, 1, 1, kHalf, kHalf, 0.0))));
}

TEST(DecoherenceTime, StrictlyDecreasingInGapAndStrength) {
  DephasingScenario s;
  s.omega_j = 1.0;
  s.omega_k = 1.0;
  s.a = kHalf;
  s.b = kHalf;
  s.n = 1;
  s.Lambda = 0.3;
  double prev = kInfiniteTime;
  for (int m = 2; m < 10; ++m) {  // |ΔE| = m − 1 grows
    s.m = m;
    const double t = decoherence_time(s);
    EXPECT_LT(t, prev);
    prev = t;
  }
  s.m = 3;
  prev = kInfiniteTime;
  for (double lam : {0.01, 0.1, 1.0, 10.0}) {
    s.Lambda = lam;
    EXPECT_LT(decoherence_time(s), prev);
    prev = decoherence_time(s);
  }
}

TEST(LinearEntropySeries, Examples) {
  const std::vector<double> grid = uniform_time_grid(50.0, 200);
  const ModeTable hh = mode_frequencies(unit_spec(), 2);
  const EntropySeries dfs = linear_entropy_series(make_scenario(hh, 1, 2, 4, 1, kHalf, kHalf, 1.0), grid);
  for (double d : dfs.delta) EXPECT_EQ(d, 0.0);
  EXPECT_TRUE(std::isinf(dfs.decoherence_time));

  const ModeTable ch = clamped_hinged();
  const EntropySeries mixed =
      linear_entropy_series(make_scenario(ch, 1, 2, 1, 1, kHalf, kHalf, kDephasingLambda), {0.0, 1e3});
  EXPECT_NEAR(mixed.delta.back(), 0.5, 1e-12);
  EXPECT_NEAR(mixed.delta_asymptote, 0.5, 1e-15);

  const EntropySeries pure =
      linear_entropy_series(make_scenario(ch, 1, 2, 1, 1, 1.0, 0.0, kDephasingLambda), grid);
  for (double d : pure.delta) EXPECT_EQ(d, 0.0);
}

TEST(LinearEntropySeries, ClosedFormMatchesDensityMatrix) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lam(0.0, 0.05), w(0.5, 80.0);
  std::uniform_int_distribution<int> occ(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    DephasingScenario s;
    s.omega_j = w(rng);
    s.omega_k = w(rng);
    s.m = occ(rng);
    s.n = occ(rng);
    std::tie(s.a, s.b) = random_amplitudes(rng);
    s.Lambda = lam(rng);
    const auto grid = uniform_time_grid(5.0, 399);
    const EntropySeries series = linear_entropy_series(s, grid);
    const double gap = energy_gap(s);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double want =
          oracle::purity_complement(s.a, s.b, offdiag_decay(gap, s.Lambda, grid[i]));
      EXPECT_NEAR(series.delta[i], want, 1e-12);
    }
  }
}

TEST(LinearEntropySeries, MonotoneBoundedAndTracePreserving) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lam(0.0, 0.1), w(1.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    DephasingScenario s;
    s.omega_j = w(rng);
    s.omega_k = w(rng);
    s.m = 1 + trial % 4;
    s.n = 1 + trial % 3;
    std::tie(s.a, s.b) = random_amplitudes(rng);
    s.Lambda = lam(rng);
    const EntropySeries series = linear_entropy_series(s, uniform_time_grid(30.0, 300));
    EXPECT_EQ(series.delta.front(), 0.0);
    const double bound = 2.0 * std::norm(s.a) * std::norm(s.b);
    EXPECT_LE(bound, 0.5 + 1e-15);
    for (std::size_t i = 0; i < series.delta.size(); ++i) {
      if (i) {
        EXPECT_GE(series.delta[i], series.delta[i - 1]);
      }
      EXPECT_LE(series.delta[i], series.delta_asymptote + 1e-12);
    }
    // diagonal entries |a|², |b|² are untouched by dephasing: the full-coherence
    // and zero-coherence limits bracket every value
    EXPECT_NEAR(oracle::purity_complement(s.a, s.b, 0.0), bound, 1e-12);
  }
}

TEST(LinearEntropySeries, SwapSymmetry) {
  const ModeTable ch = clamped_hinged();
  const auto grid = uniform_time_grid(10.0, 50);
  DephasingScenario s = make_scenario(ch, 1, 2, 2, 1, std::sqrt(0.3), std::sqrt(0.7), kDephasingLambda);
  // exchange branches: the n-branch becomes the m-branch of the swapped modes
  DephasingScenario swapped = make_scenario(ch, 2, 1, 1, 2, std::sqrt(0.7), std::sqrt(0.3), kDephasingLambda);
  EXPECT_DOUBLE_EQ(energy_gap(swapped), -energy_gap(s));
  const auto x = linear_entropy_series(s, grid).delta;
  const auto y = linear_entropy_series(swapped, grid).delta;
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], y[i], 1e-15);
}

TEST(LinearEntropySeries, ExactDegeneraciesAreDecoherenceFree) {
  std::mt19937_64 rng(17);
  const ModeTable hh = mode_frequencies(unit_spec(), 8);
  const auto grid = uniform_time_grid(1e4, 100);
  for (const auto& p : find_exact_degeneracies(unit_spec(), 8, 30)) {
    auto [a, b] = random_amplitudes(rng);
    const auto s = make_scenario(hh, p.a.k, p.b.k, p.a.n, p.b.n, a, b, 0.7);
    for (double d : linear_entropy_series(s, grid).delta) EXPECT_LE(std::abs(d), 1e-15);
  }
}

TEST(LinearEntropySeries, InputValidation) {
  const ModeTable ch = clamped_hinged();
  EXPECT_THROW(make_scenario(ch, 1, 2, 1, 1, 0.5, 0.5, kDephasingLambda), DomainError);
  EXPECT_THROW(make_scenario(ch, 1, 2, 1, 1, kHalf, kHalf, -1.0), DomainError);
  EXPECT_THROW(make_scenario(ch, 1, 9, 1, 1, kHalf, kHalf, 1.0), IndexError);
  const auto s = make_scenario(ch, 1, 2, 1, 1, kHalf, kHalf, kDephasingLambda);
  EXPECT_THROW(linear_entropy_series(s, {1.0, 0.5}), DomainError);
  EXPECT_THROW(linear_entropy_series(s, {-1.0}), DomainError);
}

TEST(RankSubspaces, Examples) {
  const ModeTable ch = clamped_hinged();
  const auto two = rank_subspaces(ch, 1, 2, 2, 1, kDephasingLambda);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(std::make_pair(two[0].m, two[0].n), std::make_pair(2, 1));
  EXPECT_EQ(std::make_pair(two[1].m, two[1].n), std::make_pair(1, 1));

  const auto three = rank_subspaces(ch, 1, 2, 3, 1, kDephasingLambda);
  EXPECT_EQ(std::make_pair(three[0].m, three[0].n), std::make_pair(3, 1));
  EXPECT_NEAR(three[0].decoherence_time, 71.70, 0.1);
  EXPECT_NEAR(three[0].decoherence_time, 71.6959454763357, 1e-9);
  EXPECT_NEAR(three[1].decoherence_time, 2.6974, 1e-3);

  const ModeTable hh = mode_frequencies(unit_spec(), 2);
  const auto hinged = rank_subspaces(hh, 1, 2, 4, 1, kDephasingLambda);
  EXPECT_EQ(std::make_pair(hinged[0].m, hinged[0].n), std::make_pair(4, 1));
  EXPECT_TRUE(std::isinf(hinged[0].decoherence_time));
  EXPECT_EQ(hinged[0].delta_E, 0.0);
  for (std::size_t i = 1; i < hinged.size(); ++i)
    EXPECT_GE(hinged[i - 1].decoherence_time, hinged[i].decoherence_time);
}

TEST(RankSubspaces, DeterministicTieBreak) {
  const ModeTable ch = clamped_hinged();
  const auto zero = rank_subspaces(ch, 1, 2, 3, 2, 0.0);  // every t* infinite
  ASSERT_EQ(zero.size(), 6u);
  for (std::size_t i = 1; i < zero.size(); ++i)
    EXPECT_LT(std::tie(zero[i - 1].m, zero[i - 1].n), std::tie(zero[i].m, zero[i].n));
}

TEST(ModeDecayRates, Examples) {
  const ModeTable hh = mode_frequencies(unit_spec(), 3);
  for (const auto& r : mode_decay_rates(hh, 0.0)) EXPECT_EQ(r.kappa, 0.0);
  EXPECT_DOUBLE_EQ(mode_decay_rates(hh, 1.0)[1].kappa, 4 * pi * pi);
  const ModeTable cf = mode_frequencies(unit_spec(BoundaryCondition::ClampedFree), 1);
  EXPECT_NEAR(mode_decay_rates(cf, 0.1)[0].kappa, 0.35160, 1e-4);
  EXPECT_THROW(mode_decay_rates(cf, -0.1), DomainError);
}
