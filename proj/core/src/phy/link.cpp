// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/phy/link.hpp"

#include <algorithm>
#include <cmath>

#include "fdran/common/error.hpp"

namespace fdran {

CMatrix zf_equalizer(const CMatrix& g) {
  if (g.cols() == 0 || g.rows() < g.cols()) {
    throw Error(ErrorCode::kRankDeficient, "effective channel has more layers than receive antennas");
  }
  const CMatrix gram = g.adjoint() * g;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  const double lmax = eig.eigenvalues().maxCoeff();
  const double lmin = eig.eigenvalues().minCoeff();
  if (!(lmax > 0.0) || lmin <= lmax * 1e-12) {
    throw Error(ErrorCode::kRankDeficient, "effective channel is rank deficient");
  }
  return gram.ldlt().solve(g.adjoint());
}

std::vector<double> layer_sinr_effective(const CMatrix& hw, const CMatrix& e, double noise_variance) {
  if (e.cols() != hw.rows() || e.rows() != hw.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "equalizer does not match effective channel");
  }
  const CMatrix g = e * hw;
  const auto layers = g.rows();
  std::vector<double> out(static_cast<std::size_t>(layers));
  for (Eigen::Index l = 0; l < layers; ++l) {
    const double signal = std::norm(g(l, l));
    double interference = 0.0;
    for (Eigen::Index i = 0; i < g.cols(); ++i) {
      if (i != l) interference += std::norm(g(l, i));
    }
    const double noise = noise_variance * e.row(l).squaredNorm();
    const double denom = interference + noise;
    out[static_cast<std::size_t>(l)] = denom > 0.0 ? signal / denom : (signal > 0.0 ? HUGE_VAL : 0.0);
  }
  return out;
}

std::vector<double> layer_sinr(const CMatrix& h, const Precoder& w, const CMatrix& e, double noise_variance) {
  if (h.cols() != w.matrix.rows()) throw Error(ErrorCode::kDimensionMismatch, "precoder rows != N_tx");
  return layer_sinr_effective(h * w.matrix, e, noise_variance);
}

CMatrix concat_channel(const std::vector<const ChannelSet*>& channels, int k) {
  if (channels.empty()) throw Error(ErrorCode::kEmptyInput, "no channels");
  const auto rows = channels.front()->entries.at(static_cast<std::size_t>(k)).rows();
  Eigen::Index cols = 0;
  for (const ChannelSet* c : channels) cols += c->entries.at(static_cast<std::size_t>(k)).cols();
  CMatrix out(rows, cols);
  Eigen::Index at = 0;
  for (const ChannelSet* c : channels) {
    const CMatrix& h = c->entries[static_cast<std::size_t>(k)];
    if (h.rows() != rows) throw Error(ErrorCode::kDimensionMismatch, "receive antenna counts differ");
    out.middleCols(at, h.cols()) = h;
    at += h.cols();
  }
  return out;
}

std::vector<CMatrix> jt_effective_channel(const std::vector<const ChannelSet*>& channels,
                                          const std::vector<Precoder>& precoders) {
  if (channels.empty()) throw Error(ErrorCode::kEmptyInput, "empty cooperation set");
  if (channels.size() != precoders.size()) throw Error(ErrorCode::kDimensionMismatch, "one precoder per BS required");
  const int layers = precoders.front().layers();
  const int sc = channels.front()->subcarrier_count();
  for (std::size_t m = 0; m < channels.size(); ++m) {
    if (precoders[m].layers() != layers) throw Error(ErrorCode::kLayerMismatch, "layer counts differ across BSs");
    if (channels[m]->subcarrier_count() != sc) {
      throw Error(ErrorCode::kDimensionMismatch, "subcarrier counts differ across BSs");
    }
  }
  std::vector<CMatrix> out(static_cast<std::size_t>(sc));
  for (int k = 0; k < sc; ++k) {
    CMatrix acc = CMatrix::Zero(channels.front()->n_rx(), layers);
    for (std::size_t m = 0; m < channels.size(); ++m) {
      const CMatrix& h = channels[m]->entries[static_cast<std::size_t>(k)];
      if (h.cols() != precoders[m].matrix.rows() || h.rows() != acc.rows()) {
        throw Error(ErrorCode::kDimensionMismatch, "channel and precoder dimensions differ");
      }
      acc.noalias() += h * precoders[m].matrix;
    }
    out[static_cast<std::size_t>(k)] = std::move(acc);
  }
  return out;
}

std::vector<CMatrix> jt_effective_channel(const std::vector<const ChannelSet*>& channels, const Precoder& stacked) {
  if (channels.empty()) throw Error(ErrorCode::kEmptyInput, "empty cooperation set");
  const int n_tx = channels.front()->n_tx();
  if (stacked.matrix.rows() != n_tx * static_cast<Eigen::Index>(channels.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "stacked precoder rows != N_tx * |B|");
  }
  std::vector<Precoder> parts;
  parts.reserve(channels.size());
  for (std::size_t m = 0; m < channels.size(); ++m) parts.push_back({stacked.block(static_cast<int>(m), n_tx)});
  return jt_effective_channel(channels, parts);
}

std::vector<double> zf_sinrs(const std::vector<CMatrix>& effective, double noise_variance) {
  std::vector<double> out;
  for (const CMatrix& g : effective) {
    try {
      const CMatrix e = zf_equalizer(g);
      const auto s = layer_sinr_effective(g, e, noise_variance);
      out.insert(out.end(), s.begin(), s.end());
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kRankDeficient) throw;
      out.insert(out.end(), static_cast<std::size_t>(g.cols()), 0.0);
    }
  }
  return out;
}

}  // namespace fdran
