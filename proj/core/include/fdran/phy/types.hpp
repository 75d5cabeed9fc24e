// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace fdran {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double distance(const Vec3& a, const Vec3& b);

/// Parameters of the synthetic multipath channel.
struct ChannelModelParams {
  double ref_gain = 1.0;            // linear power gain at 1 m
  double pathloss_exponent = 3.5;
  int min_paths = 3;
  int max_paths = 10;
  double max_delay_s = 300e-9;
  double k_factor_db_min = 0.0;     // Rician factor of the direct path
  double k_factor_db_max = 9.0;
  double angle_spread_deg = 60.0;   // half-width of scattered path offsets
  double doppler_hz = 100.0;
  int sinusoids = 16;               // per-path sum-of-sinusoids terms
};

struct PhyConfig {
  int n_tx = 16;
  int n_rx = 4;
  double noise_variance = 1e-6;
  double alpha = 1.0;
  int numerology = 0;
  double overhead = 0.14;
  int max_layers = 4;
  ChannelModelParams channel;

  double subcarrier_spacing_hz() const { return 15e3 * static_cast<double>(1 << numerology); }
  double slot_duration_s() const { return 1e-3 / static_cast<double>(1 << numerology); }
  /// Throws ConfigError on violated invariants.
  void validate() const;
};

/// Per-subcarrier N_rx x N_tx channel matrices seen from one BS.
struct ChannelSet {
  std::vector<CMatrix> entries;
  int bs_id = 0;
  std::int64_t slot = 0;
  double large_scale_gain = 0.0;

  int subcarrier_count() const { return static_cast<int>(entries.size()); }
  int n_rx() const { return entries.empty() ? 0 : static_cast<int>(entries.front().rows()); }
  int n_tx() const { return entries.empty() ? 0 : static_cast<int>(entries.front().cols()); }
};

/// N_tx x L precoding matrix. For joint transmission the rows are stacked
/// per BS in ascending BS order.
struct Precoder {
  CMatrix matrix;

  int layers() const { return static_cast<int>(matrix.cols()); }
  /// Row block belonging to the i-th member of a cooperation set.
  CMatrix block(int member, int n_tx) const { return matrix.middleRows(member * n_tx, n_tx); }
};

}  // namespace fdran
