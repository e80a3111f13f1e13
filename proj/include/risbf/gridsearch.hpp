// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive reference search over uniform phase grids: every combination of
// L-level phases across all K*N entries, each completed by the direct power
// solve. Exponential cost; meant for desk-scale optimality checks.

#pragma once

#include "risbf/model.hpp"
#include "risbf/parallel.hpp"

namespace risbf {

struct GridSearchResult {
  bool feasible = false;
  double best_power_w = 0.0;
  long long best_index = -1;  // combination index, ties go to the smallest
  PhaseBeamformer phases;
};

/// Throws std::invalid_argument when levels^(K*N) exceeds 2^40 combinations.
GridSearchResult exhaustive_phase_search(const ChannelSet& channels,
                                         const Eigen::VectorXd& sinr_targets,
                                         double noise_power_w, int levels,
                                         Exec exec = Exec::Parallel);

}  // namespace risbf
