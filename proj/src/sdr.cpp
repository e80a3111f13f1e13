// SPDX-License-Identifier: Apache-2.0

#include "risbf/sdr.hpp"

#include <stdexcept>

#include "risbf/baselines.hpp"
#include "risbf/powerctl.hpp"
#include "risbf/rng.hpp"
#include "risbf/sdp_assemble.hpp"

namespace risbf {

RelaxationResult solve_relaxation(const ChannelSet& channels,
                                  const SystemConfig& config, double tol,
                                  int max_iter) {
  config.check();
  if (channels.num_users() != config.num_users ||
      channels.units_per_user() != config.units_per_user)
    throw std::invalid_argument("solve_relaxation: channel dimensions mismatch");

  const sdp::Problem problem = assemble_sdr_problem(
      channels, config.sinr_targets, config.noise_power_w);
  const sdp::Solution sol = sdp::solve(problem, tol, max_iter);

  RelaxationResult res;
  res.status = sol.status;
  res.sdp_iterations = sol.iterations;
  if (sol.status != sdp::Status::Optimal) return res;

  const int K = config.num_users;
  res.w.resize(K);
  res.powers_w.resize(K);
  for (int k = 0; k < K; ++k) {
    res.w[k] = sol.matrix(sdr_w_name(k));
    res.powers_w[k] = sol.scalar(sdr_p_name(k));
  }
  res.relaxation_value_w = res.powers_w.sum();
  return res;
}

namespace {

// Element-wise phase projection; zero entries map to phase 1.
CVector project_phases(const CVector& u) {
  CVector th(u.size());
  for (Eigen::Index n = 0; n < u.size(); ++n) {
    const double mag = std::abs(u[n]);
    th[n] = (mag > 0.0) ? u[n] / mag : Complex(1.0, 0.0);
  }
  return th;
}

struct Candidate {
  double power = 0.0;
  bool feasible = false;
};

}  // namespace

BeamformingSolution extract_rank_one(const RelaxationResult& relaxation,
                                     const ChannelSet& channels,
                                     const SystemConfig& config, int num_samples,
                                     std::uint64_t seed, Exec exec) {
  config.check();
  BeamformingSolution sol;
  if (relaxation.status != sdp::Status::Optimal) {
    sol.status = relaxation.status == sdp::Status::Infeasible
                     ? SolutionStatus::Infeasible
                     : SolutionStatus::NumericalFailure;
    return sol;
  }
  const int K = config.num_users;
  const int N = config.units_per_user;
  if (num_samples < 0) throw std::invalid_argument("extract_rank_one: bad count");

  // Per-user factor of W_k / p_k and the principal eigenvector.
  std::vector<CMatrix> factor(K);
  std::vector<CVector> principal(K);
  for (int k = 0; k < K; ++k) {
    if (!(relaxation.powers_w[k] > 0.0)) {
      sol.status = SolutionStatus::NumericalFailure;
      return sol;
    }
    const CMatrix w = 0.5 * (relaxation.w[k] + relaxation.w[k].adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(w);
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    principal[k] = es.eigenvectors().col(N - 1);
    factor[k] = es.eigenvectors() *
                (ev / relaxation.powers_w[k]).cwiseSqrt().asDiagonal();
  }

  // Candidate phase sets: index 0 is the principal-eigenvector projection.
  const int total = num_samples + 1;
  std::vector<std::vector<CVector>> cand(total);
  cand[0].resize(K);
  for (int k = 0; k < K; ++k) cand[0][k] = project_phases(principal[k]);
  for (int c = 1; c < total; ++c) {
    cand[c].resize(K);
    for (int k = 0; k < K; ++k) {
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(k),
                                 static_cast<std::uint64_t>(c)}));
      CVector z(N);
      for (int n = 0; n < N; ++n) z[n] = rng.cnormal(1.0);
      cand[c][k] = project_phases(factor[k] * z);
    }
  }

  std::vector<Candidate> scored(total);
  auto evaluate = [&](int c) {
    PhaseBeamformer pb;
    pb.phases = cand[c];
    const GainTable table = build_gain_table(channels, pb);
    const PowerResult pr =
        direct_solve(table, config.sinr_targets, config.noise_power_w);
    if (pr.status == PowerStatus::Converged)
      scored[c] = {pr.powers.watts.sum(), true};
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < total; ++c) evaluate(c);
  } else {
    for (int c = 0; c < total; ++c) evaluate(c);
  }

  int best = -1;
  for (int c = 0; c < total; ++c) {
    if (!scored[c].feasible) continue;
    if (best < 0 || scored[c].power < scored[best].power) best = c;
  }
  if (best < 0) {
    sol.status = SolutionStatus::Infeasible;
    sol.diagnostics["num_samples"] = num_samples;
    return sol;
  }

  PhaseBeamformer pb;
  pb.phases = cand[best];
  sol = solve_with_phases(pb, channels, config);
  sol.diagnostics["num_samples"] = num_samples;
  sol.diagnostics["best_candidate"] = best;
  sol.diagnostics["relaxation_value_w"] = relaxation.relaxation_value_w;
  sol.diagnostics["sdp_iterations"] = relaxation.sdp_iterations;
  return sol;
}

}  // namespace risbf
