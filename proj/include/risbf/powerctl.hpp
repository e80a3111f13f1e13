// SPDX-License-Identifier: Apache-2.0
//
// Power control for a fixed phase beamformer. The per-user SINR-equality
// system p_k = (Gamma_k / a_k)(sum_{i != k} c_ki p_i + sigma^2) is a standard
// interference function, so the fixed-point iteration from p = 0 converges
// monotonically whenever the system is feasible. A direct linear solve of the
// same equality system serves as an independent oracle.

#pragma once

#include <optional>

#include "risbf/model.hpp"

namespace risbf {

/// Squared channel-und-phase gains entering the SINR: direct a_k =
/// |g_kk^H theta_k|^2 and cross c_ki = |g_ki^H theta_i|^2 (diagonal unused).
struct GainTable {
  Eigen::VectorXd direct;  // a_k, length K
  Eigen::MatrixXd cross;   // c_ki, K x K

  int num_users() const { return static_cast<int>(direct.size()); }
};

GainTable build_gain_table(const ChannelSet& channels,
                           const PhaseBeamformer& phases);

/// f_k(p) = (Gamma_k / a_k)(sum_{i != k} c_ki p_i + sigma^2).
/// Throws std::domain_error if any a_k is degenerate (below 1e-30).
PowerAllocation interference_map(const PowerAllocation& p, const GainTable& table,
                                 const Eigen::VectorXd& sinr_targets,
                                 double noise_power_w);

enum class PowerStatus { Converged, Infeasible, NumericalFailure };

struct PowerResult {
  PowerStatus status = PowerStatus::NumericalFailure;
  PowerAllocation powers;
  int iterations = 0;
};

struct FixedPointOptions {
  double epsilon_w = 1e-10;      // stop when ||p - f(p)|| < epsilon_w
  int max_iter = 10000;
  double sum_power_cap_w = 1e6;  // divergence declared above this
};

/// Fixed-point iteration p <- f(p) from p = 0. Infeasible when the iterate
/// diverges (sum power beyond the cap, or still expanding at max_iter).
PowerResult fixed_point(const GainTable& table, const Eigen::VectorXd& sinr_targets,
                        double noise_power_w, const FixedPointOptions& opts = {});

/// Direct solve of the equality system (I - D C) p = D sigma^2 1 with
/// D = diag(Gamma_k / a_k). Infeasible when the spectral radius of D C is
/// >= 1 - 1e-9 or the solve produces a negative power.
PowerResult direct_solve(const GainTable& table, const Eigen::VectorXd& sinr_targets,
                         double noise_power_w);

}  // namespace risbf
