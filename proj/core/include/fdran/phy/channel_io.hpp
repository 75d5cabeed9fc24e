// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fdran/phy/types.hpp"

namespace fdran {

/// Channel tensor indexed [slot][bs][subcarrier][rx][tx], stored row-major.
struct ChannelTensor {
  std::uint32_t slots = 0;
  std::uint32_t bs = 0;
  std::uint32_t subcarriers = 0;
  std::uint32_t n_rx = 0;
  std::uint32_t n_tx = 0;
  std::vector<cd> data;

  ChannelSet channel(std::uint32_t slot, std::uint32_t bs_index) const;
};

/// Reads "FDRANCH1" files. Throws FormatError on bad magic, size or truncation.
ChannelTensor load_channel_tensor(const std::filesystem::path& path);
void save_channel_tensor(const ChannelTensor& tensor, const std::filesystem::path& path);

}  // namespace fdran
