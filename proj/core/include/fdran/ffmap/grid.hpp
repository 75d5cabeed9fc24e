// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include "fdran/phy/types.hpp"

namespace fdran {

/// Axis-aligned box of cells. Cell id = ix + nx * (iy + ny * iz).
struct GridSpec {
  Vec3 origin;
  Vec3 spacing{1.0, 1.0, 1.0};
  std::array<std::uint32_t, 3> counts{1, 1, 1};

  std::uint32_t cell_count() const { return counts[0] * counts[1] * counts[2]; }
  Vec3 cell_center(std::uint32_t cell) const;
  /// Containing cell. Points on a shared face go to the lower-index cell.
  /// Throws OutOfGrid.
  std::uint32_t cell_of(const Vec3& location) const;
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

}  // namespace fdran
