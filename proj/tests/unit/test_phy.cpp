// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include "fdran/common/error.hpp"
#include "fdran/phy/channel.hpp"
#include "fdran/phy/channel_io.hpp"
#include "fdran/phy/cqi_table.hpp"
#include "fdran/phy/link.hpp"
#include "fdran/phy/miesm.hpp"
#include "fdran/phy/rate.hpp"
#include "oracles.hpp"

using namespace fdran;

namespace {

CMatrix random_matrix(int rows, int cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = cd(n(gen), n(gen));
  }
  return m;
}

Precoder unit_precoder(CMatrix m) {
  m /= m.norm();
  return Precoder{m};
}

double mean_power(const ChannelSet& c) {
  double p = 0.0;
  for (const auto& h : c.entries) p += h.squaredNorm();
  return p / static_cast<double>(c.entries.size());
}

}  // namespace

TEST(Channel, DeterministicForSameInputs) {
  PhyConfig cfg;
  const BsGeometry bs{0, {0, 0, 10}};
  const auto a = gen_channel({5, 7, 1.5}, bs, cfg, 8, 11, 3);
  const auto b = gen_channel({5, 7, 1.5}, bs, cfg, 8, 11, 3);
  ASSERT_EQ(a.entries.size(), 8u);
  for (std::size_t k = 0; k < a.entries.size(); ++k) EXPECT_TRUE(a.entries[k] == b.entries[k]);
}

TEST(Channel, LargeScaleFixedSmallScaleVaries) {
  PhyConfig cfg;
  const BsGeometry bs{0, {0, 0, 10}};
  const auto a = gen_channel({5, 7, 1.5}, bs, cfg, 4, 11, 1);
  const auto b = gen_channel({5, 7, 1.5}, bs, cfg, 4, 11, 2);
  EXPECT_NEAR(a.large_scale_gain, b.large_scale_gain, 1e-9 * a.large_scale_gain);
  EXPECT_FALSE(a.entries[0] == b.entries[0]);
}

TEST(Channel, SubsetMatchesFullBand) {
  PhyConfig cfg;
  const BsGeometry bs{1, {30, 0, 10}};
  const auto full = gen_channel({5, 7, 1.5}, bs, cfg, 16, 3, 9);
  const std::vector<int> idx{0, 5, 15};
  const auto part = gen_channel({5, 7, 1.5}, bs, cfg, 16, idx, 3, 9);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    EXPECT_TRUE(part.entries[i].isApprox(full.entries[static_cast<std::size_t>(idx[i])], 1e-12));
  }
}

TEST(Channel, PathLossExponentGovernsMeanPower) {
  // Empirical mean power over 10^4 (slot, subcarrier) samples at distances
  // 20 m and 40 m along the same bearing.
  PhyConfig cfg;
  cfg.n_tx = 2;
  cfg.n_rx = 1;
  const BsGeometry bs{0, {0, 0, 0}};
  auto empirical = [&](double d) {
    double acc = 0.0;
    int count = 0;
    for (int s = 0; s < 500; ++s) {
      const auto c = gen_channel({d, 0, 0}, bs, cfg, 20, 5, s * 37);
      for (const auto& h : c.entries) {
        acc += h.squaredNorm();
        ++count;
      }
    }
    return acc / count;
  };
  const double ratio = empirical(40.0) / empirical(20.0);
  EXPECT_NEAR(std::log2(ratio), -3.5, 0.35);
  // The deterministic large-scale part is exact.
  EXPECT_NEAR(large_scale_gain({40, 0, 0}, bs, cfg.channel) / large_scale_gain({20, 0, 0}, bs, cfg.channel),
              std::pow(2.0, -3.5), 1e-12);
}

TEST(Channel, StaticWhenDopplerZeroAndNoDelaySpread) {
  PhyConfig cfg;
  cfg.channel.doppler_hz = 0.0;
  const BsGeometry bs{0, {0, 0, 10}};
  const auto a = gen_channel({3, 4, 1.5}, bs, cfg, 4, 2, 1);
  const auto b = gen_channel({3, 4, 1.5}, bs, cfg, 4, 2, 500);
  EXPECT_TRUE(a.entries[0].isApprox(b.entries[0], 1e-12));
}

TEST(Channel, ConfigValidation) {
  PhyConfig cfg;
  cfg.n_tx = 0;
  EXPECT_THROW(cfg.validate(), Error);
  PhyConfig ok;
  EXPECT_NO_THROW(ok.validate());
  EXPECT_THROW(gen_channel({0, 0, 0}, BsGeometry{}, ok, 0, 1, 0), Error);
}

TEST(ChannelIo, RoundTripAndFormatErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "fdran_test_channel_io";
  std::filesystem::create_directories(dir);
  ChannelTensor t;
  t.slots = 2;
  t.bs = 1;
  t.subcarriers = 3;
  t.n_rx = 2;
  t.n_tx = 2;
  for (int i = 0; i < 2 * 3 * 2 * 2; ++i) t.data.emplace_back(i, -i);
  save_channel_tensor(t, dir / "c.bin");
  const auto back = load_channel_tensor(dir / "c.bin");
  EXPECT_EQ(back.data, t.data);
  const auto set = back.channel(1, 0);
  EXPECT_EQ(set.subcarrier_count(), 3);
  EXPECT_EQ(set.entries[0](0, 1), cd(13, -13));

  {
    std::ofstream f(dir / "bad.bin", std::ios::binary);
    f << "NOTMAGIC";
  }
  EXPECT_THROW(load_channel_tensor(dir / "bad.bin"), Error);
  std::filesystem::resize_file(dir / "c.bin", 30);
  EXPECT_THROW(load_channel_tensor(dir / "c.bin"), Error);
  std::filesystem::remove_all(dir);
}

TEST(ZeroForcing, Identity) {
  const CMatrix e = zf_equalizer(CMatrix::Identity(2, 2));
  EXPECT_TRUE(e.isApprox(CMatrix::Identity(2, 2)));
}

TEST(ZeroForcing, DiagonalInverse) {
  CMatrix g = CMatrix::Zero(2, 2);
  g(0, 0) = 2.0;
  g(1, 1) = 4.0;
  const CMatrix e = zf_equalizer(g);
  EXPECT_NEAR(std::abs(e(0, 0) - 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e(1, 1) - 0.25), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(e(0, 1)), 0.0, 1e-12);
}

TEST(ZeroForcing, LeftInverseOfRandomTallMatrix) {
  const CMatrix g = random_matrix(4, 2, 1);
  const CMatrix e = zf_equalizer(g);
  EXPECT_LT((e * g - CMatrix::Identity(2, 2)).norm(), 1e-9);
}

TEST(ZeroForcing, RankDeficientThrows) {
  CMatrix g(2, 2);
  g << cd(1), cd(2), cd(2), cd(4);
  try {
    zf_equalizer(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficient);
  }
  EXPECT_THROW(zf_equalizer(random_matrix(2, 3, 2)), Error);
}

TEST(LayerSinr, ScalarCase) {
  const CMatrix one = CMatrix::Identity(1, 1);
  const auto s = layer_sinr(one, Precoder{one}, one, 1.0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0], 1.0, 1e-12);
}

TEST(LayerSinr, ZeroForcingHasNoInterLayerTerm) {
  const CMatrix h = random_matrix(4, 16, 3);
  const Precoder w = unit_precoder(random_matrix(16, 2, 4));
  const CMatrix e = zf_equalizer(h * w.matrix);
  const auto s = layer_sinr(h, w, e, 0.1);
  for (int l = 0; l < 2; ++l) EXPECT_NEAR(s[static_cast<std::size_t>(l)], 1.0 / (0.1 * e.row(l).squaredNorm()), 1e-9);
}

TEST(LayerSinr, MatchesElementwiseOracle) {
  for (unsigned seed = 10; seed < 20; ++seed) {
    const CMatrix h = random_matrix(4, 16, seed);
    const Precoder w = unit_precoder(random_matrix(16, 2, seed + 100));
    const CMatrix e = random_matrix(2, 4, seed + 200);  // arbitrary equalizer exercises interference terms
    const auto lib = layer_sinr(h, w, e, 0.1);
    const auto ref = oracle::sinr_elementwise(h, w.matrix, e, 0.1);
    for (std::size_t l = 0; l < 2; ++l) {
      EXPECT_GE(lib[l], 0.0);
      EXPECT_NEAR(lib[l], ref[l], 1e-9 * std::max(1.0, ref[l]));
    }
  }
}

TEST(LayerSinr, DimensionMismatch) {
  EXPECT_THROW(layer_sinr(random_matrix(4, 8, 1), Precoder{random_matrix(16, 2, 2)}, random_matrix(2, 4, 3), 0.1),
               Error);
}

TEST(Miesm, EqualInputsAreAFixedPoint) {
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int q : {2, 4, 6}) {
      for (double s : {0.01, 1.0, 37.0, 1000.0}) {
        const std::vector<double> v(5, s);
        EXPECT_NEAR(effective_snr(v, alpha, q), s, 1e-9 * std::max(1.0, s)) << alpha << " " << q << " " << s;
      }
    }
  }
}

TEST(Miesm, SingleInputReturnsIt) { EXPECT_NEAR(effective_snr(std::vector<double>{3.3}, 1.0, 4), 3.3, 1e-9); }

TEST(Miesm, EmptyInputThrows) {
  try {
    effective_snr(std::vector<double>{}, 1.0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

TEST(Miesm, QpskCapacityMatchesQuadrature) {
  for (double s : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    EXPECT_NEAR(bicm_capacity(s, 2), oracle::qpsk_capacity(s), 2e-3) << s;
  }
}

TEST(Miesm, TwoPointQpskMatchesQuadratureOracle) {
  const std::vector<double> s{1.0, 100.0};
  const double lib = effective_snr(s, 1.0, 2);
  const double ref = oracle::qpsk_effective_snr(s, 1.0);
  EXPECT_NEAR(10.0 * std::log10(lib), 10.0 * std::log10(ref), 0.05);
}

TEST(Miesm, SandwichAndPermutationInvariance) {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(0.01, 200.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(7);
    for (auto& x : s) x = u(gen);
    for (double alpha : {0.5, 1.0, 2.0}) {
      for (int q : {2, 4, 6}) {
        const double e = effective_snr(s, alpha, q);
        EXPECT_GE(e, *std::min_element(s.begin(), s.end()) * (1 - 1e-9));
        EXPECT_LE(e, *std::max_element(s.begin(), s.end()) * (1 + 1e-9));
        auto r = s;
        std::reverse(r.begin(), r.end());
        EXPECT_NEAR(effective_snr(r, alpha, q), e, 1e-9 * e);
      }
    }
  }
}

TEST(Cqi, ThresholdBoundaries) {
  const auto& t = CqiTable::standard();
  EXPECT_EQ(real_cqi_db(-50.0, t), 0);
  EXPECT_EQ(real_cqi_db(t.at(7).snr_threshold_db, t), 7);
  EXPECT_EQ(real_cqi(std::numeric_limits<double>::infinity(), t), 15);
  int prev = 0;
  for (double db = -20.0; db < 40.0; db += 0.25) {
    const int c = real_cqi_db(db, t);
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(Cqi, TableInvariantsEnforced) {
  EXPECT_THROW(CqiTable({{1, 2, 100, 1.0}, {2, 2, 90, 2.0}}), Error);
  EXPECT_THROW(CqiTable({{1, 3, 100, 1.0}}), Error);
}

TEST(Rate, GoldenValueIsExact) {
  PhyConfig cfg;
  const auto& t = CqiTable::standard();
  const Rational r = achievable_rate_exact(2, 15, 15, 10, cfg, t);
  EXPECT_EQ(r, Rational(5350275, 4));  // 1,337,568.75 bits/s
  EXPECT_DOUBLE_EQ(achievable_rate(2, 15, 15, 10, cfg, t), 1337568.75);
}

TEST(Rate, ZeroBranches) {
  PhyConfig cfg;
  const auto& t = CqiTable::standard();
  EXPECT_EQ(achievable_rate(2, 9, 8, 10, cfg, t), 0.0);
  EXPECT_EQ(achievable_rate(2, 9, 9, 0, cfg, t), 0.0);
}

TEST(Rate, Monotonicity) {
  PhyConfig cfg;
  const auto& t = CqiTable::standard();
  for (std::int64_t k = 1; k < 20; ++k) EXPECT_LT(achievable_rate(1, 5, 15, k, cfg, t), achievable_rate(1, 5, 15, k + 1, cfg, t));
  for (int c = 1; c < 15; ++c) EXPECT_LE(achievable_rate(2, c, 15, 4, cfg, t), achievable_rate(2, c + 1, 15, 4, cfg, t));
}

TEST(Rate, SlotBitsAreFloorOfRateTimesSlot) {
  PhyConfig cfg;
  const auto& t = CqiTable::standard();
  EXPECT_EQ(bits_per_slot(2, 15, 15, 10, cfg, t), 1337);
  EXPECT_EQ(rate_per_subcarrier_bps(2, 15, cfg, t), 133756);
}

TEST(JointTransmission, SingletonEqualsHW) {
  PhyConfig cfg;
  const auto c = gen_channel({3, 3, 1.5}, BsGeometry{0, {0, 0, 10}}, cfg, 3, 1, 0);
  const Precoder w = unit_precoder(random_matrix(16, 2, 9));
  const auto eff = jt_effective_channel({&c}, std::vector<Precoder>{w});
  for (std::size_t k = 0; k < 3; ++k) EXPECT_TRUE(eff[k].isApprox(c.entries[k] * w.matrix, 1e-12));
}

TEST(JointTransmission, OpposedPrecodersCancel) {
  PhyConfig cfg;
  const auto c = gen_channel({3, 3, 1.5}, BsGeometry{0, {0, 0, 10}}, cfg, 2, 1, 0);
  const Precoder w = unit_precoder(random_matrix(16, 2, 9));
  const Precoder neg{-w.matrix};
  const auto eff = jt_effective_channel({&c, &c}, std::vector<Precoder>{w, neg});
  for (const auto& g : eff) EXPECT_LT(g.norm(), 1e-15);
}

TEST(JointTransmission, ThreeMembersSumIndependently) {
  PhyConfig cfg;
  std::vector<ChannelSet> cs;
  std::vector<Precoder> ws;
  for (int m = 0; m < 3; ++m) {
    cs.push_back(gen_channel({3, 3, 1.5}, BsGeometry{m, {10.0 * m, 0, 10}}, cfg, 2, 4, 1));
    ws.push_back(unit_precoder(random_matrix(16, 2, 30 + m)));
  }
  const auto eff = jt_effective_channel({&cs[0], &cs[1], &cs[2]}, ws);
  for (std::size_t k = 0; k < 2; ++k) {
    for (int r = 0; r < 4; ++r) {
      for (int l = 0; l < 2; ++l) {
        cd sum = 0.0;
        for (int m = 0; m < 3; ++m) {
          for (int t = 0; t < 16; ++t) sum += cs[m].entries[k](r, t) * ws[m].matrix(t, l);
        }
        EXPECT_NEAR(std::abs(eff[k](r, l) - sum), 0.0, 1e-12);
      }
    }
  }
}

TEST(JointTransmission, LayerMismatchThrows) {
  PhyConfig cfg;
  const auto c = gen_channel({3, 3, 1.5}, BsGeometry{0, {0, 0, 10}}, cfg, 1, 1, 0);
  try {
    jt_effective_channel({&c, &c}, std::vector<Precoder>{unit_precoder(random_matrix(16, 1, 1)),
                                                         unit_precoder(random_matrix(16, 2, 2))});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLayerMismatch);
  }
}
