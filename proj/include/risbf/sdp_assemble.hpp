// SPDX-License-Identifier: Apache-2.0
//
// Assembly of the two semidefinite programs of the method suite.
//
// Both assemblers normalize channel gains internally by s = sqrt(mean
// per-element gain power) and the noise by s^2; SINR constraints and powers
// are invariant under this equilibration. The factor is recorded in the
// problem metadata under "gain_scale_sq". SDR variables (W_k, p_k) are
// unaffected; dual multipliers alpha_k in the raw-channel convention are the
// solved values divided by gain_scale_sq (q_kn are unaffected).

#pragma once

#include <string>

#include "risbf/model.hpp"
#include "risbf/sdp.hpp"

namespace risbf {

/// Dual SDP: variables q_kn (free) and alpha_k (nonneg); maximize
/// sum_k alpha_k sigma^2 subject to sum_n q_kn <= 1 per user and, per user k,
/// the LMI  diag(q_k) + sum_{i != k} alpha_i g_ik g_ik^H
///            - (alpha_k / Gamma_k) g_kk g_kk^H  PSD.
sdp::Problem assemble_dual_problem(const ChannelSet& channels,
                                   const Eigen::VectorXd& sinr_targets,
                                   double noise_power_w);

/// Rank relaxation: Hermitian W_k PSD and powers p_k >= 0; minimize sum p_k
/// subject to [W_k]_nn = p_k and
///   g_kk^H W_k g_kk >= Gamma_k (sum_{i != k} g_ki^H W_i g_ki + sigma^2).
sdp::Problem assemble_sdr_problem(const ChannelSet& channels,
                                  const Eigen::VectorXd& sinr_targets,
                                  double noise_power_w);

std::string dual_q_name(int user, int unit);
std::string dual_alpha_name(int user);
std::string sdr_w_name(int user);
std::string sdr_p_name(int user);

}  // namespace risbf
