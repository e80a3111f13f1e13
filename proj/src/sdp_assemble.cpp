// SPDX-License-Identifier: Apache-2.0

#include "risbf/sdp_assemble.hpp"

#include <stdexcept>

namespace risbf {

namespace {

double mean_gain_power(const ChannelSet& channels) {
  const int K = channels.num_users();
  const int N = channels.units_per_user();
  double s = 0.0;
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < K; ++i) s += channels.gain(k, i).squaredNorm();
  return s / (static_cast<double>(K) * K * N);
}

void check_inputs(const ChannelSet& channels, const Eigen::VectorXd& sinr_targets,
                  double noise_power_w) {
  if (sinr_targets.size() != channels.num_users())
    throw std::invalid_argument("sdp assembly: SINR target length mismatch");
  if ((sinr_targets.array() <= 0.0).any())
    throw std::invalid_argument("sdp assembly: SINR targets must be > 0");
  if (!(noise_power_w > 0.0))
    throw std::invalid_argument("sdp assembly: noise power must be > 0");
  if (!channels.all_finite())
    throw std::invalid_argument("sdp assembly: non-finite channel entry");
}

}  // namespace

std::string dual_q_name(int user, int unit) {
  return "q[" + std::to_string(user) + "][" + std::to_string(unit) + "]";
}
std::string dual_alpha_name(int user) {
  return "alpha[" + std::to_string(user) + "]";
}
std::string sdr_w_name(int user) { return "W[" + std::to_string(user) + "]"; }
std::string sdr_p_name(int user) { return "p[" + std::to_string(user) + "]"; }

sdp::Problem assemble_dual_problem(const ChannelSet& channels,
                                   const Eigen::VectorXd& sinr_targets,
                                   double noise_power_w) {
  check_inputs(channels, sinr_targets, noise_power_w);
  const int K = channels.num_users();
  const int N = channels.units_per_user();

  const double scale_sq = mean_gain_power(channels);
  if (!(scale_sq > 0.0))
    throw std::invalid_argument("sdp assembly: all-zero channels");
  const double s = std::sqrt(scale_sq);
  const double noise_scaled = noise_power_w / scale_sq;

  sdp::Problem p(sdp::Sense::Maximize);
  std::vector<std::vector<int>> qv(K, std::vector<int>(N));
  std::vector<int> av(K);
  for (int k = 0; k < K; ++k)
    for (int n = 0; n < N; ++n) qv[k][n] = p.add_scalar(dual_q_name(k, n));
  for (int k = 0; k < K; ++k)
    av[k] = p.add_scalar(dual_alpha_name(k), /*nonneg=*/true);

  for (int k = 0; k < K; ++k) p.objective_scalar(av[k], noise_scaled);

  for (int k = 0; k < K; ++k) {
    sdp::LinExpr e;
    for (int n = 0; n < N; ++n) e.scalar_terms.emplace_back(qv[k][n], 1.0);
    p.add_constraint(std::move(e), sdp::Rel::LessEq, 1.0,
                     "power_share[" + std::to_string(k) + "]");
  }

  for (int k = 0; k < K; ++k) {
    std::vector<std::pair<int, CMatrix>> coeffs;
    for (int n = 0; n < N; ++n) {
      CMatrix e = CMatrix::Zero(N, N);
      e(n, n) = 1.0;
      coeffs.emplace_back(qv[k][n], std::move(e));
    }
    for (int i = 0; i < K; ++i) {
      const CVector g = channels.gain(i, k) / s;  // g_ik, row k to user i
      CMatrix outer = g * g.adjoint();
      if (i == k) outer *= -1.0 / sinr_targets[k];
      coeffs.emplace_back(av[i], std::move(outer));
    }
    p.add_lmi(CMatrix::Zero(N, N), std::move(coeffs),
              "lmi[" + std::to_string(k) + "]");
  }
  p.metadata["gain_scale_sq"] = scale_sq;
  return p;
}

sdp::Problem assemble_sdr_problem(const ChannelSet& channels,
                                  const Eigen::VectorXd& sinr_targets,
                                  double noise_power_w) {
  check_inputs(channels, sinr_targets, noise_power_w);
  const int K = channels.num_users();
  const int N = channels.units_per_user();

  const double scale_sq = mean_gain_power(channels);
  if (!(scale_sq > 0.0))
    throw std::invalid_argument("sdp assembly: all-zero channels");
  const double s = std::sqrt(scale_sq);
  const double noise_scaled = noise_power_w / scale_sq;

  sdp::Problem p(sdp::Sense::Minimize);
  std::vector<int> wv(K), pv(K);
  for (int k = 0; k < K; ++k) wv[k] = p.add_matrix(sdr_w_name(k), N);
  for (int k = 0; k < K; ++k)
    pv[k] = p.add_scalar(sdr_p_name(k), /*nonneg=*/true);
  for (int k = 0; k < K; ++k) p.objective_scalar(pv[k], 1.0);

  for (int k = 0; k < K; ++k) {
    for (int n = 0; n < N; ++n) {
      sdp::LinExpr e;
      CMatrix enn = CMatrix::Zero(N, N);
      enn(n, n) = 1.0;
      e.matrix_terms.emplace_back(wv[k], std::move(enn));
      e.scalar_terms.emplace_back(pv[k], -1.0);
      p.add_constraint(std::move(e), sdp::Rel::Equal, 0.0,
                       "diag[" + std::to_string(k) + "][" + std::to_string(n) +
                           "]");
    }
  }

  for (int k = 0; k < K; ++k) {
    sdp::LinExpr e;
    const CVector gkk = channels.gain(k, k) / s;
    e.matrix_terms.emplace_back(wv[k], (gkk * gkk.adjoint()).eval());
    for (int i = 0; i < K; ++i) {
      if (i == k) continue;
      const CVector gki = channels.gain(k, i) / s;
      e.matrix_terms.emplace_back(
          wv[i], (-sinr_targets[k] * gki * gki.adjoint()).eval());
    }
    p.add_constraint(std::move(e), sdp::Rel::GreaterEq,
                     sinr_targets[k] * noise_scaled,
                     "sinr[" + std::to_string(k) + "]");
  }
  p.metadata["gain_scale_sq"] = scale_sq;
  return p;
}

}  // namespace risbf
