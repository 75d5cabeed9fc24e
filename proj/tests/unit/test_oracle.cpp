// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "fdran/common/error.hpp"
#include "fdran/oracle/brute_force.hpp"
#include "fdran/oracle/verify.hpp"
#include "oracles.hpp"

using namespace fdran;

TEST(BruteForce, HeavyMatchesIndependentOracle) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    std::int64_t k = 0;
    const auto users = random_heavy_instance(seed, 4, 12, &k);
    for (double eta : {0.0, 0.1, 0.3}) {
      const auto lib = heavy_enumeration_optimum(users, k, eta);
      const auto ref = oracle::heavy_best_v(users, k, eta);
      ASSERT_EQ(lib.has_value(), ref.has_value()) << seed;
      if (lib) EXPECT_NEAR(*lib, *ref, 1e-12) << seed;
    }
  }
}

TEST(BruteForce, LightMatchesIndependentOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto model = random_light_instance(seed, 3, 3, 8);
    EXPECT_EQ(light_enumeration_optimum(model), oracle::light_min_units(model)) << seed;
    EXPECT_EQ(best_single_bs_units(model), oracle::single_bs_min_units(model)) << seed;
  }
}

TEST(BruteForce, LightOptimumAgreesWithFeasiblePointEnumeration) {
  // Smallest models only: the box of every variable is enumerated.
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto model = random_light_instance(seed, 2, 2, 4);
    const auto points = oracle::enumerate_feasible(model);
    std::optional<double> best;
    for (const auto& x : points) {
      double e = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) e += model.objective[j] * static_cast<double>(x[j]);
      if (!best || e < *best) best = e;
    }
    const auto units = light_enumeration_optimum(model);
    ASSERT_EQ(best.has_value(), units.has_value()) << seed;
    if (best) EXPECT_NEAR(*best, static_cast<double>(*units) * model.power, 1e-9) << seed;
  }
}

TEST(RandomInstances, HeavyAreHeavyLightAreLight) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::int64_t k = 0;
    const auto users = random_heavy_instance(seed, 4, 12, &k);
    std::int64_t need = 0;
    for (const auto& u : users) need += u.required_subcarriers();
    EXPECT_GT(need, k);
    EXPECT_LE(k, 12);
    EXPECT_LE(users.size(), 4u);
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto model = random_light_instance(seed, 3, 3, 8);
    EXPECT_LE(oracle::jt_all_units(model) / model.m, model.k);
  }
}

TEST(Verify, DefaultCapsPass) {
  const auto report = run_verify(VerifyCaps{});
  ASSERT_EQ(report.suites.size(), 2u);
  EXPECT_EQ(report.suites[0].total, 200);
  EXPECT_EQ(report.suites[1].total, 100);
  EXPECT_TRUE(report.ok()) << report.table();
  EXPECT_NE(report.table().find("PASS"), std::string::npos);
}

TEST(Verify, SingleUserIsVacuousPass) {
  VerifyCaps caps;
  caps.heavy_max_users = 1;
  caps.light_max_users = 1;
  caps.heavy_instances = 30;
  caps.light_instances = 30;
  EXPECT_TRUE(run_verify(caps).ok());
}

TEST(Verify, BrokenSchedulerIsReported) {
  VerifyHooks hooks;
  hooks.heavy = [](const std::vector<UserDemand>& users, std::int64_t k, double eta) {
    auto a = greedy_schedule(users, k, eta);
    a.objective *= 0.9;
    return a;
  };
  VerifyCaps caps;
  caps.heavy_instances = 20;
  caps.light_instances = 5;
  const auto report = run_verify(caps, hooks);
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.suites[0].ok());
  EXPECT_TRUE(report.suites[1].ok());
  EXPECT_FALSE(report.suites[0].failures.empty());
  EXPECT_NE(report.table().find("FAIL"), std::string::npos);
}

TEST(Verify, CapsAreBounded) {
  VerifyCaps caps;
  caps.heavy_max_k = 40;
  EXPECT_THROW(caps.validate(), Error);
  caps = VerifyCaps{};
  caps.light_max_bs = 4;
  EXPECT_THROW(caps.validate(), Error);
  caps = VerifyCaps{};
  caps.light_instances = -1;
  EXPECT_THROW(run_verify(caps), Error);
}

TEST(Oracle, QpskCapacityLimits) {
  EXPECT_NEAR(oracle::qpsk_capacity(1e4), 2.0, 1e-6);
  // Low SNR: QPSK tracks the Gaussian capacity 2 * 0.5 log2(1 + snr) closely.
  EXPECT_NEAR(oracle::qpsk_capacity(1e-3), std::log2(1.0 + 1e-3), 1e-5);
  EXPECT_NEAR(oracle::qpsk_capacity_inverse(oracle::qpsk_capacity(3.0)), 3.0, 1e-6);
}

TEST(Oracle, SignTest) {
  EXPECT_DOUBLE_EQ(oracle::sign_test_p(0, 0), 1.0);
  EXPECT_NEAR(oracle::sign_test_p(10, 0), std::pow(0.5, 10), 1e-15);
  EXPECT_NEAR(oracle::sign_test_p(5, 5), 0.623046875, 1e-12);
  EXPECT_LT(oracle::sign_test_p(15, 3), 0.05);
}
