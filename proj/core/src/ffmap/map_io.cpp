// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <bit>
#include <fstream>
#include <sstream>

#include "fdran/common/error.hpp"
#include "fdran/ffmap/rate_map.hpp"

namespace fdran {
namespace {

static_assert(std::endian::native == std::endian::little, "map files are little-endian");

constexpr std::array<char, 9> kMagic = {'F', 'D', 'R', 'A', 'N', 'M', 'A', 'P', '1'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw Error(ErrorCode::kFormatError, "truncated map file");
  return v;
}

int max_layers(const RateMap& map) {
  int l = 1;
  for (std::uint32_t c = 0; c < map.grid().cell_count(); ++c) {
    for (CoopMask m = 1; m <= static_cast<CoopMask>(map.masks_per_cell()); ++m) l = std::max(l, map.at(c, m).layers);
  }
  return l;
}

}  // namespace

void save_map(const RateMap& map, const std::filesystem::path& path) {
  std::ostringstream os(std::ios::binary);
  os.write(kMagic.data(), kMagic.size());
  put(os, kVersion);
  put(os, map.config_hash());
  const GridSpec& g = map.grid();
  for (double v : {g.origin.x, g.origin.y, g.origin.z, g.spacing.x, g.spacing.y, g.spacing.z}) put(os, v);
  for (auto c : g.counts) put(os, c);
  put(os, static_cast<std::uint16_t>(map.bs_count()));
  put(os, static_cast<std::uint16_t>(map.n_tx()));
  put(os, static_cast<std::uint16_t>(map.n_rx()));
  const int l_max = max_layers(map);
  put(os, static_cast<std::uint16_t>(l_max));
  put(os, map.seed());
  put(os, map.samples());
  put(os, static_cast<std::uint32_t>(map.entry_count()));

  const int rows = map.n_tx() * map.bs_count();
  for (std::uint32_t c = 0; c < g.cell_count(); ++c) {
    for (CoopMask m = 1; m <= static_cast<CoopMask>(map.masks_per_cell()); ++m) {
      const TransmissionParams& p = map.at(c, m);
      put(os, c);
      put(os, static_cast<std::uint16_t>(m));
      put(os, static_cast<std::uint8_t>(p.layers));
      put(os, static_cast<std::uint8_t>(p.cqi_em));
      put(os, p.rate_per_subcarrier);
      for (int r = 0; r < rows; ++r) {
        for (int l = 0; l < l_max; ++l) {
          const bool inside = r < p.precoder.matrix.rows() && l < p.precoder.matrix.cols();
          const cd v = inside ? p.precoder.matrix(r, l) : cd(0.0, 0.0);
          put(os, v.real());
          put(os, v.imag());
        }
      }
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kFormatError, "cannot write " + path.string());
  const std::string bytes = os.str();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kFormatError, "write failed for " + path.string());
}

RateMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFormatError, "cannot open " + path.string());
  std::array<char, 9> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw Error(ErrorCode::kFormatError, "bad map magic");
  const auto version = get<std::uint16_t>(in);
  if (version != kVersion) throw Error(ErrorCode::kFormatError, "unsupported map version " + std::to_string(version));
  const auto hash = get<std::uint64_t>(in);
  GridSpec g;
  g.origin.x = get<double>(in);
  g.origin.y = get<double>(in);
  g.origin.z = get<double>(in);
  g.spacing.x = get<double>(in);
  g.spacing.y = get<double>(in);
  g.spacing.z = get<double>(in);
  for (auto& c : g.counts) c = get<std::uint32_t>(in);
  try {
    g.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormatError, std::string("invalid grid: ") + e.what());
  }
  const int m = get<std::uint16_t>(in);
  const int n_tx = get<std::uint16_t>(in);
  const int n_rx = get<std::uint16_t>(in);
  const int l_max = get<std::uint16_t>(in);
  const auto seed = get<std::uint64_t>(in);
  const auto samples = get<std::uint32_t>(in);
  const auto entries = get<std::uint32_t>(in);
  if (m < 1 || m > 16 || n_tx < 1 || n_rx < 1 || l_max < 1 || l_max > 64) {
    throw Error(ErrorCode::kFormatError, "invalid map header");
  }
  RateMap map(g, m, n_tx, n_rx, seed, samples, hash);
  if (entries != map.entry_count()) throw Error(ErrorCode::kFormatError, "entry count does not match grid");

  const int rows = n_tx * m;
  for (std::uint32_t i = 0; i < entries; ++i) {
    const auto cell = get<std::uint32_t>(in);
    const CoopMask mask = get<std::uint16_t>(in);
    if (cell >= g.cell_count() || mask == 0 || mask > static_cast<CoopMask>(map.masks_per_cell())) {
      throw Error(ErrorCode::kFormatError, "record key out of range");
    }
    TransmissionParams p;
    p.layers = get<std::uint8_t>(in);
    p.cqi_em = get<std::uint8_t>(in);
    p.rate_per_subcarrier = get<std::int64_t>(in);
    if (p.layers < 1 || p.layers > l_max || p.cqi_em > 15 || p.rate_per_subcarrier < 0) {
      throw Error(ErrorCode::kFormatError, "record fields out of range");
    }
    const int used_rows = n_tx * std::popcount(mask);
    CMatrix full(rows, l_max);
    for (int r = 0; r < rows; ++r) {
      for (int l = 0; l < l_max; ++l) {
        const double re = get<double>(in);
        const double im = get<double>(in);
        full(r, l) = cd(re, im);
      }
    }
    p.precoder.matrix = full.topLeftCorner(used_rows, p.layers);
    map.at(cell, mask) = std::move(p);
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error(ErrorCode::kFormatError, "trailing bytes in map file");
  return map;
}

}  // namespace fdran
