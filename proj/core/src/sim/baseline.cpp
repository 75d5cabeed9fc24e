// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/sim/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fdran/common/error.hpp"
#include "fdran/phy/link.hpp"
#include "fdran/phy/miesm.hpp"
#include "fdran/phy/rate.hpp"

namespace fdran {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kFeedbackFree: return "feedback-free";
    case Scheme::kPmiFeedback: return "pmi";
    case Scheme::kOptimalFeedback: return "optimal";
  }
  return "unknown";
}

std::string_view to_string(CoopRestriction c) {
  switch (c) {
    case CoopRestriction::kSingleBs: return "single";
    case CoopRestriction::kFixedPair: return "pair";
    case CoopRestriction::kFlexible: return "flexible";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view s) {
  for (auto v : {Scheme::kFeedbackFree, Scheme::kPmiFeedback, Scheme::kOptimalFeedback}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<CoopRestriction> parse_coop(std::string_view s) {
  for (auto v : {CoopRestriction::kSingleBs, CoopRestriction::kFixedPair, CoopRestriction::kFlexible}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::vector<CMatrix> pmi_codebook(int dim, int layers) {
  if (dim < 1 || layers < 1 || layers > dim) throw Error(ErrorCode::kInvalidArgument, "bad codebook shape");
  constexpr int kEntries = 16;
  std::vector<CMatrix> book;
  book.reserve(kEntries);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim) * layers);
  for (int c = 0; c < kEntries; ++c) {
    CMatrix w(dim, layers);
    for (int l = 0; l < layers; ++l) {
      // Beams l/dim apart are orthogonal; the entry offset is a fraction of the circle.
      const double freq = static_cast<double>(c) / kEntries + static_cast<double>(l) / dim;
      for (int i = 0; i < dim; ++i) w(i, l) = std::polar(scale, 2.0 * std::numbers::pi * freq * i);
    }
    book.push_back(std::move(w));
  }
  return book;
}

namespace {

int cqi_for(const std::vector<const ChannelSet*>& reported, const Precoder& w, const PhyConfig& cfg,
            const CqiTable& table) {
  const auto eff = jt_effective_channel(reported, w);
  return determine_cqi(zf_sinrs(eff, cfg.noise_variance), cfg.alpha, table);
}

}  // namespace

int select_pmi(const std::vector<const ChannelSet*>& reported, int layers, const PhyConfig& cfg,
               const CqiTable& table) {
  const int dim = cfg.n_tx * static_cast<int>(reported.size());
  const auto book = pmi_codebook(dim, layers);
  int best = 0, best_cqi = -1;
  for (int c = 0; c < static_cast<int>(book.size()); ++c) {
    const int cqi = cqi_for(reported, Precoder{book[static_cast<std::size_t>(c)]}, cfg, table);
    if (cqi > best_cqi) {
      best_cqi = cqi;
      best = c;
    }
  }
  return best;
}

TransmissionParams baseline_params(Scheme scheme, const std::vector<const ChannelSet*>& reported,
                                   const PhyConfig& cfg, const CqiTable& table) {
  if (scheme == Scheme::kFeedbackFree) throw Error(ErrorCode::kInvalidArgument, "feedback-free uses the rate map");
  if (reported.empty() || reported.front()->entries.empty()) throw Error(ErrorCode::kEmptyInput, "no reported channel");
  const int dim = cfg.n_tx * static_cast<int>(reported.size());
  const int l_max = std::min({cfg.n_rx, cfg.max_layers, dim});

  CMatrix vecs;
  if (scheme == Scheme::kOptimalFeedback) {
    CMatrix gram = CMatrix::Zero(dim, dim);
    const int subcarriers = reported.front()->subcarrier_count();
    for (int k = 0; k < subcarriers; ++k) {
      const CMatrix h = concat_channel(reported, k);
      gram.noalias() += h.adjoint() * h;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
    vecs = eig.eigenvectors();
  }

  TransmissionParams best;
  best.layers = 0;
  for (int l = 1; l <= l_max; ++l) {
    Precoder w;
    if (scheme == Scheme::kOptimalFeedback) {
      w.matrix = vecs.rightCols(l).rowwise().reverse() / std::sqrt(static_cast<double>(l));
    } else {
      w.matrix = pmi_codebook(dim, l)[static_cast<std::size_t>(select_pmi(reported, l, cfg, table))];
    }
    const int cqi = cqi_for(reported, w, cfg, table);
    const std::int64_t rate = cqi > 0 ? rate_per_subcarrier_bps(l, cqi, cfg, table) : 0;
    if (best.layers == 0 || rate > best.rate_per_subcarrier) {
      best.layers = l;
      best.cqi_em = cqi;
      best.rate_per_subcarrier = rate;
      best.precoder = std::move(w);
    }
  }
  return best;
}

}  // namespace fdran
