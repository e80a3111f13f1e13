// SPDX-License-Identifier: Apache-2.0
//
// Conventional phase beamformers: MRT (closed form, aligns every element to
// the direct channel) and unit-modulus ZF (necessary-condition feasibility
// test, then penalized alternating optimization against the orthogonal
// projector onto the nulled cross-channels' complement).

#pragma once

#include <optional>

#include "risbf/model.hpp"
#include "risbf/powerctl.hpp"

namespace risbf {

/// theta_kn = g_kk[n] / |g_kk[n]|; zero entries map to phase 1 and are
/// counted into *zero_entries when given.
PhaseBeamformer mrt_phase(const ChannelSet& channels, int* zero_entries = nullptr);

struct ZfFeasibility {
  // entry (k, i != k): 2 max_n |g_ki[n]| <= sum_n |g_ki[n]| holds.
  std::vector<std::vector<bool>> pair_ok;
  bool overall = false;  // conjunction; a false entry proves infeasibility,
                         // an all-true table does not prove feasibility
};

ZfFeasibility zf_feasibility(const ChannelSet& channels);

struct ZfState {
  CMatrix projector;     // Z_k, Hermitian idempotent
  CMatrix cross;         // G_k = [g_ik : i != k], N x (K-1)
  CVector aux;           // v_k
  double penalty = 1e3;  // lambda
};

ZfState make_zf_state(const ChannelSet& channels, int user, double penalty);

struct ZfPhaseResult {
  CVector theta;                        // unit modulus, g_kk^H theta real >= 0
  std::vector<double> objective_trace;  // after each full iteration
  int iterations = 0;
};

/// Alternating maximization of Re(g_kk^H Z_k v) - lambda ||theta - Z_k v||^2.
/// Deterministic start v0 = Z_k^H g_kk, or CN(0,1) entries when init_seed is
/// given. Elements where Z_k v vanishes keep their previous phase.
ZfPhaseResult zf_phase(const ChannelSet& channels, int user, double penalty = 1e3,
                       std::optional<std::uint64_t> init_seed = std::nullopt,
                       double tol = 1e-9, int max_iter = 500);

/// Largest residual cross-channel leakage max_{k, i != k} |g_ik^H theta_k|.
double max_cross_leakage(const ChannelSet& channels, const PhaseBeamformer& phases);

/// Completes a fixed beamformer into a BeamformingSolution: iterative power
/// control (diagnostics record its iteration count), then an exact linear
/// polish of the SINR-equality system. Status Feasible on success.
BeamformingSolution solve_with_phases(const PhaseBeamformer& phases,
                                      const ChannelSet& channels,
                                      const SystemConfig& config,
                                      const FixedPointOptions& power_opts = {});

}  // namespace risbf
