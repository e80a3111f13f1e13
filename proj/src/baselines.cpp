// SPDX-License-Identifier: Apache-2.0

#include "risbf/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "risbf/rng.hpp"

namespace risbf {

PhaseBeamformer mrt_phase(const ChannelSet& channels, int* zero_entries) {
  const int K = channels.num_users();
  const int N = channels.units_per_user();
  PhaseBeamformer pb;
  pb.phases.resize(K);
  int zeros = 0;
  for (int k = 0; k < K; ++k) {
    const CVector& g = channels.gain(k, k);
    CVector th(N);
    for (int n = 0; n < N; ++n) {
      const double mag = std::abs(g[n]);
      if (mag == 0.0) {
        th[n] = 1.0;
        ++zeros;
      } else {
        th[n] = g[n] / mag;
      }
    }
    pb.phases[k] = std::move(th);
  }
  if (zero_entries) *zero_entries = zeros;
  return pb;
}

ZfFeasibility zf_feasibility(const ChannelSet& channels) {
  const int K = channels.num_users();
  ZfFeasibility out;
  out.pair_ok.assign(K, std::vector<bool>(K, true));
  out.overall = true;
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < K; ++i) {
      if (i == k) continue;
      const Eigen::VectorXd mags = channels.gain(k, i).cwiseAbs();
      const bool ok = 2.0 * mags.maxCoeff() <= mags.sum();
      out.pair_ok[k][i] = ok;
      out.overall = out.overall && ok;
    }
  }
  return out;
}

ZfState make_zf_state(const ChannelSet& channels, int user, double penalty) {
  const int K = channels.num_users();
  const int N = channels.units_per_user();
  ZfState st;
  st.penalty = penalty;
  st.cross.resize(N, std::max(0, K - 1));
  int col = 0;
  for (int i = 0; i < K; ++i) {
    if (i == user) continue;
    st.cross.col(col++) = channels.gain(i, user);  // g_ik, row `user` to user i
  }
  if (K == 1) {
    st.projector = CMatrix::Identity(N, N);
  } else {
    // Z = I - G (G^H G)^+ G^H, pseudoinverse via Hermitian eigendecomposition.
    const CMatrix gram = st.cross.adjoint() * st.cross;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double cutoff = 1e-10 * std::max(ev.maxCoeff(), 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
    for (Eigen::Index j = 0; j < ev.size(); ++j)
      if (ev[j] > cutoff) inv[j] = 1.0 / ev[j];
    const CMatrix pinv = es.eigenvectors() * inv.asDiagonal() *
                         es.eigenvectors().adjoint();
    st.projector = CMatrix::Identity(N, N) - st.cross * pinv * st.cross.adjoint();
    st.projector = 0.5 * (st.projector + st.projector.adjoint());
  }
  st.aux = st.projector.adjoint() * channels.gain(user, user);
  return st;
}

namespace {

double zf_objective(const CVector& g_kk, const ZfState& st, const CVector& theta,
                    const CVector& v) {
  const CVector zv = st.projector * v;
  return (g_kk.adjoint() * zv).value().real() -
         st.penalty * (theta - zv).squaredNorm();
}

}  // namespace

ZfPhaseResult zf_phase(const ChannelSet& channels, int user, double penalty,
                       std::optional<std::uint64_t> init_seed, double tol,
                       int max_iter) {
  if (user < 0 || user >= channels.num_users())
    throw std::invalid_argument("zf_phase: user index out of range");
  const int N = channels.units_per_user();
  const CVector& g_kk = channels.gain(user, user);

  ZfState st = make_zf_state(channels, user, penalty);
  if (init_seed) {
    Rng rng(*init_seed);
    for (int n = 0; n < N; ++n) st.aux[n] = rng.cnormal(1.0);
  }

  // (Z^H Z)^+ is fixed across iterations; precompute it once.
  const CMatrix zhz = st.projector.adjoint() * st.projector;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(zhz);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cutoff = 1e-10 * std::max(ev.maxCoeff(), 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index j = 0; j < ev.size(); ++j)
    if (ev[j] > cutoff) inv[j] = 1.0 / ev[j];
  const CMatrix zhz_pinv =
      es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
  const CVector zh_g = st.projector.adjoint() * g_kk;

  ZfPhaseResult res;
  CVector theta = CVector::Ones(N);
  double prev = -std::numeric_limits<double>::infinity();
  for (int t = 1; t <= max_iter; ++t) {
    const CVector zv = st.projector * st.aux;
    for (int n = 0; n < N; ++n) {
      const double mag = std::abs(zv[n]);
      if (mag > 0.0) theta[n] = zv[n] / mag;
    }
    st.aux = zhz_pinv * (zh_g / (2.0 * penalty) +
                         st.projector.adjoint() * theta);
    const double obj = zf_objective(g_kk, st, theta, st.aux);
    res.objective_trace.push_back(obj);
    res.iterations = t;
    if (t > 1 && std::abs(obj - prev) < tol * (1.0 + std::abs(obj))) break;
    prev = obj;
  }

  // Rotate so the aligned gain is real nonnegative, then re-project onto the
  // unit circle to absorb the rotation's rounding.
  const Complex gain = g_kk.dot(theta);
  if (std::abs(gain) > 0.0) theta *= std::conj(gain) / std::abs(gain);
  for (int n = 0; n < N; ++n) theta[n] /= std::abs(theta[n]);
  res.theta = theta;
  return res;
}

double max_cross_leakage(const ChannelSet& channels, const PhaseBeamformer& phases) {
  const int K = channels.num_users();
  double worst = 0.0;
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < K; ++i) {
      if (i == k) continue;
      worst = std::max(worst,
                       std::abs(channels.gain(i, k).dot(phases.phases[k])));
    }
  return worst;
}

BeamformingSolution solve_with_phases(const PhaseBeamformer& phases,
                                      const ChannelSet& channels,
                                      const SystemConfig& config,
                                      const FixedPointOptions& power_opts) {
  config.check();
  BeamformingSolution sol;
  sol.phases = phases;

  const GainTable table = build_gain_table(channels, phases);
  const PowerResult it = fixed_point(table, config.sinr_targets,
                                     config.noise_power_w, power_opts);
  if (it.status == PowerStatus::Infeasible) {
    sol.status = SolutionStatus::Infeasible;
    sol.diagnostics["iterations"] = it.iterations;
    return sol;
  }
  if (it.status == PowerStatus::NumericalFailure) {
    sol.status = SolutionStatus::NumericalFailure;
    sol.diagnostics["iterations"] = it.iterations;
    return sol;
  }

  // Exact polish: the SINR-equality system is linear, so finish with the
  // direct solve; the iteration count still reflects the scheme itself.
  const PowerResult exact =
      direct_solve(table, config.sinr_targets, config.noise_power_w);
  sol.powers = (exact.status == PowerStatus::Converged) ? exact.powers : it.powers;
  sol.sinrs = sinr(channels, phases, sol.powers, config.noise_power_w);
  sol.sum_power_w = sol.powers.watts.sum();
  sol.status = SolutionStatus::Feasible;
  sol.diagnostics["iterations"] = it.iterations;
  sol.diagnostics["max_leakage"] = max_cross_leakage(channels, phases);
  return sol;
}

}  // namespace risbf
