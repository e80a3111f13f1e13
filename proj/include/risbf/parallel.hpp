// SPDX-License-Identifier: Apache-2.0
//
// Execution policy for the data-parallel kernels. Every kernel ships a plain
// serial loop (the reference) and an OpenMP version; both consume identical
// per-chunk seeds and merge with deterministic tie-breaking, so results are
// bit-identical across policies and thread counts.

#pragma once

namespace risbf {

enum class Exec { Serial, Parallel };

}  // namespace risbf
