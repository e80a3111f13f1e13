// SPDX-License-Identifier: Apache-2.0

#include "risbf/dualmethod.hpp"

#include <stdexcept>

#include "risbf/baselines.hpp"
#include "risbf/sdp_assemble.hpp"

namespace risbf {

DualSolution extract_dual_solution(const sdp::Problem& problem,
                                   const sdp::Solution& solution, int num_users,
                                   int units_per_user, double noise_power_w) {
  const auto it = problem.metadata.find("gain_scale_sq");
  const double scale_sq = (it != problem.metadata.end()) ? it->second : 1.0;

  DualSolution d;
  d.q.resize(static_cast<Eigen::Index>(num_users) * units_per_user);
  d.alpha.resize(num_users);
  for (int k = 0; k < num_users; ++k) {
    for (int n = 0; n < units_per_user; ++n)
      d.q[static_cast<Eigen::Index>(k) * units_per_user + n] =
          solution.scalar(dual_q_name(k, n));
    d.alpha[k] = solution.scalar(dual_alpha_name(k)) / scale_sq;
  }
  d.dual_objective_w = d.alpha.sum() * noise_power_w;
  return d;
}

PhaseRecovery recover_phase_detail(const DualSolution& dual,
                                   const ChannelSet& channels,
                                   const Eigen::VectorXd& sinr_targets) {
  const int K = channels.num_users();
  const int N = channels.units_per_user();
  if (dual.q.size() != static_cast<Eigen::Index>(K) * N ||
      dual.alpha.size() != K || sinr_targets.size() != K)
    throw std::invalid_argument("recover_phase: dimension mismatch");

  PhaseRecovery out;
  out.unit_modulus.phases.resize(K);
  out.norm_scaled.resize(K);
  for (int k = 0; k < K; ++k) {
    CMatrix m = CMatrix::Zero(N, N);
    m.diagonal() =
        dual.q.segment(static_cast<Eigen::Index>(k) * N, N).cast<Complex>();
    for (int i = 0; i < K; ++i) {
      const CVector& g_ik = channels.gain(i, k);  // row k to user i
      m += dual.alpha[i] * (g_ik * g_ik.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double cutoff = 1e-10 * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(N);
    for (int j = 0; j < N; ++j)
      if (std::abs(ev[j]) > cutoff) inv[j] = 1.0 / ev[j];
    const CVector u = es.eigenvectors() * inv.asDiagonal() *
                      es.eigenvectors().adjoint() * channels.gain(k, k);

    const double unorm = u.norm();
    if (!(unorm > 0.0))
      throw std::domain_error("recover_phase: degenerate recovery for user " +
                              std::to_string(k));
    out.norm_scaled[k] = std::sqrt(static_cast<double>(N)) / unorm * u;
    CVector th(N);
    for (int n = 0; n < N; ++n) {
      const double mag = std::abs(u[n]);
      th[n] = (mag > 0.0) ? u[n] / mag : Complex(1.0, 0.0);
    }
    out.unit_modulus.phases[k] = std::move(th);
  }
  return out;
}

PhaseBeamformer recover_phase(const DualSolution& dual, const ChannelSet& channels,
                              const Eigen::VectorXd& sinr_targets) {
  return recover_phase_detail(dual, channels, sinr_targets).unit_modulus;
}

BeamformingSolution solve_dual_method(const ChannelSet& channels,
                                      const SystemConfig& config,
                                      const DualMethodOptions& opts) {
  config.check();
  if (channels.num_users() != config.num_users ||
      channels.units_per_user() != config.units_per_user)
    throw std::invalid_argument("solve_dual_method: channel dimensions mismatch");

  BeamformingSolution sol;

  const sdp::Problem problem = assemble_dual_problem(
      channels, config.sinr_targets, config.noise_power_w);
  const sdp::Solution sdpsol =
      sdp::solve(problem, opts.sdp_tol, opts.sdp_max_iter);
  sol.diagnostics["sdp_iterations"] = sdpsol.iterations;

  if (sdpsol.status != sdp::Status::Optimal) {
    // An unbounded dual certifies the original constraints cannot be met.
    sol.status = (sdpsol.status == sdp::Status::Unbounded)
                     ? SolutionStatus::Infeasible
                     : SolutionStatus::NumericalFailure;
    return sol;
  }

  const DualSolution dual =
      extract_dual_solution(problem, sdpsol, config.num_users,
                            config.units_per_user, config.noise_power_w);
  const PhaseRecovery rec =
      recover_phase_detail(dual, channels, config.sinr_targets);

  BeamformingSolution inner = solve_with_phases(rec.unit_modulus, channels,
                                                config, opts.power);
  inner.diagnostics["sdp_iterations"] = sdpsol.iterations;
  inner.diagnostics["sdp_residual"] =
      std::max({sdpsol.primal_residual, sdpsol.dual_residual, sdpsol.gap});
  inner.diagnostics["dual_objective_w"] = dual.dual_objective_w;
  double norm_scaled_dev = 0.0;
  for (const CVector& v : rec.norm_scaled)
    for (Eigen::Index n = 0; n < v.size(); ++n)
      norm_scaled_dev = std::max(norm_scaled_dev, std::abs(std::abs(v[n]) - 1.0));
  inner.diagnostics["norm_scaled_modulus_dev"] = norm_scaled_dev;

  if (!inner.feasible()) return inner;

  inner.status = SolutionStatus::Optimal;
  inner.diagnostics["duality_gap_rel"] =
      (inner.sum_power_w - dual.dual_objective_w) / inner.sum_power_w;
  return inner;
}

}  // namespace risbf
