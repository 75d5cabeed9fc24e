// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdran/phy/channel_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "common/int128.hpp"
#include "fdran/common/error.hpp"

namespace fdran {
namespace {

static_assert(std::endian::native == std::endian::little, "channel files are little-endian");

constexpr std::array<char, 8> kMagic = {'F', 'D', 'R', 'A', 'N', 'C', 'H', '1'};

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw Error(ErrorCode::kFormatError, "truncated channel file");
  return v;
}

}  // namespace

ChannelSet ChannelTensor::channel(std::uint32_t slot, std::uint32_t bs_index) const {
  if (slot >= slots || bs_index >= bs) throw Error(ErrorCode::kInvalidArgument, "channel tensor index out of range");
  ChannelSet out;
  out.bs_id = static_cast<int>(bs_index);
  out.slot = slot;
  const std::size_t per_sc = static_cast<std::size_t>(n_rx) * n_tx;
  std::size_t offset = (static_cast<std::size_t>(slot) * bs + bs_index) * subcarriers * per_sc;
  out.entries.reserve(subcarriers);
  double power = 0.0;
  for (std::uint32_t k = 0; k < subcarriers; ++k) {
    CMatrix h(n_rx, n_tx);
    for (std::uint32_t r = 0; r < n_rx; ++r) {
      for (std::uint32_t t = 0; t < n_tx; ++t) h(r, t) = data[offset++];
    }
    power += h.squaredNorm();
    out.entries.push_back(std::move(h));
  }
  out.large_scale_gain = subcarriers > 0 ? power / (static_cast<double>(subcarriers) * per_sc) : 0.0;
  return out;
}

ChannelTensor load_channel_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFormatError, "cannot open " + path.string());
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error(ErrorCode::kFormatError, "bad channel file magic");
  }
  ChannelTensor t;
  t.slots = get<std::uint32_t>(in);
  t.bs = get<std::uint32_t>(in);
  t.subcarriers = get<std::uint32_t>(in);
  t.n_rx = get<std::uint32_t>(in);
  t.n_tx = get<std::uint32_t>(in);
  const i128 count =
      static_cast<i128>(t.slots) * t.bs * t.subcarriers * t.n_rx * t.n_tx;
  if (count == 0 || count > (1ULL << 32)) throw Error(ErrorCode::kFormatError, "channel tensor dimensions invalid");
  t.data.resize(static_cast<std::size_t>(count));
  for (auto& v : t.data) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    v = cd(re, im);
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error(ErrorCode::kFormatError, "trailing bytes in channel file");
  return t;
}

void save_channel_tensor(const ChannelTensor& t, const std::filesystem::path& path) {
  const std::size_t expected = static_cast<std::size_t>(t.slots) * t.bs * t.subcarriers * t.n_rx * t.n_tx;
  if (t.data.size() != expected) throw Error(ErrorCode::kDimensionMismatch, "tensor data size does not match dims");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kFormatError, "cannot write " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put(out, t.slots);
  put(out, t.bs);
  put(out, t.subcarriers);
  put(out, t.n_rx);
  put(out, t.n_tx);
  for (const cd& v : t.data) {
    put(out, v.real());
    put(out, v.imag());
  }
}

}  // namespace fdran
