// Copyright 2026 The fdran Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace fdran {

// GCC and Clang both provide this type; the extension marker keeps -Wpedantic quiet.
__extension__ typedef __int128 i128;

}  // namespace fdran
