// SPDX-License-Identifier: Apache-2.0
//
// Rank relaxation baseline: solve the relaxed program over Hermitian W_k, then
// recover a feasible unit-modulus solution by Gaussian randomization. The
// relaxation value lower-bounds the minimum of the original problem; any
// extracted solution upper-bounds it.

#pragma once

#include <cstdint>

#include "risbf/model.hpp"
#include "risbf/parallel.hpp"
#include "risbf/sdp.hpp"

namespace risbf {

struct RelaxationResult {
  sdp::Status status = sdp::Status::NumericalFailure;
  std::vector<CMatrix> w;        // K Hermitian N x N matrices
  Eigen::VectorXd powers_w;      // p_k
  double relaxation_value_w = 0; // sum_k p_k
  int sdp_iterations = 0;
};

RelaxationResult solve_relaxation(const ChannelSet& channels,
                                  const SystemConfig& config, double tol = 1e-8,
                                  int max_iter = 200);

/// Gaussian randomization. Candidate 0 is the principal eigenvector of each
/// W_k; candidates 1..num_samples draw from CN(0, W_k / p_k) per user with
/// seeds derived from (seed, user, candidate). Every candidate set is
/// projected element-wise onto the unit circle and completed by the direct
/// power solve; the feasible candidate with minimal sum power wins, ties
/// resolved toward the smaller candidate index.
BeamformingSolution extract_rank_one(const RelaxationResult& relaxation,
                                     const ChannelSet& channels,
                                     const SystemConfig& config,
                                     int num_samples = 1000,
                                     std::uint64_t seed = 0,
                                     Exec exec = Exec::Parallel);

}  // namespace risbf
