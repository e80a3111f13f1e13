// SPDX-License-Identifier: Apache-2.0
//
// End-to-end dual method: solve the dual SDP, recover per-user phases in
// closed form from the multipliers, run power control, and report the
// measured duality gap.

#pragma once

#include "risbf/model.hpp"
#include "risbf/powerctl.hpp"
#include "risbf/sdp.hpp"

namespace risbf {

struct DualSolution {
  Eigen::VectorXd q;      // length K*N, entry k*N + n
  Eigen::VectorXd alpha;  // length K, raw-channel convention
  double dual_objective_w = 0.0;  // sum_k alpha_k sigma^2
};

/// Reads the multipliers out of a solved dual problem, undoing the internal
/// gain equilibration recorded in the problem metadata.
DualSolution extract_dual_solution(const sdp::Problem& problem,
                                   const sdp::Solution& solution, int num_users,
                                   int units_per_user, double noise_power_w);

struct PhaseRecovery {
  PhaseBeamformer unit_modulus;     // element-wise projection (the default)
  std::vector<CVector> norm_scaled; // sqrt(N) u / ||u||, kept for comparison
};

/// u_k = (diag(q_k) + sum_i alpha_i g_ik g_ik^H)^+ g_kk, pseudoinverse by
/// Hermitian eigendecomposition with relative threshold 1e-10. The returned
/// beamformer projects u_k element-wise onto the unit circle; zero entries
/// map to phase 1. Throws std::domain_error if some u_k vanishes entirely.
PhaseRecovery recover_phase_detail(const DualSolution& dual,
                                   const ChannelSet& channels,
                                   const Eigen::VectorXd& sinr_targets);

PhaseBeamformer recover_phase(const DualSolution& dual, const ChannelSet& channels,
                              const Eigen::VectorXd& sinr_targets);

struct DualMethodOptions {
  double sdp_tol = 1e-8;
  int sdp_max_iter = 200;
  FixedPointOptions power{};
};

/// Diagnostics: duality_gap_rel, dual_objective_w, iterations (power control),
/// sdp_iterations, norm_scaled_modulus_dev (spread of the norm-scaled recovery away
/// from unit modulus), max_leakage.
BeamformingSolution solve_dual_method(const ChannelSet& channels,
                                      const SystemConfig& config,
                                      const DualMethodOptions& opts = {});

}  // namespace risbf
