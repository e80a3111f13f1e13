// SPDX-License-Identifier: Apache-2.0

#include "risbf/powerctl.hpp"

#include <stdexcept>

namespace risbf {

namespace {
constexpr double kDegenerateGain = 1e-30;

void check_gains(const GainTable& table, const Eigen::VectorXd& sinr_targets) {
  if (table.cross.rows() != table.num_users() ||
      table.cross.cols() != table.num_users() ||
      sinr_targets.size() != table.num_users())
    throw std::invalid_argument("power control: dimension mismatch");
  for (int k = 0; k < table.num_users(); ++k)
    if (table.direct[k] < kDegenerateGain)
      throw std::domain_error("power control: degenerate direct gain, user " +
                              std::to_string(k));
}
}  // namespace

GainTable build_gain_table(const ChannelSet& channels,
                           const PhaseBeamformer& phases) {
  const int K = channels.num_users();
  if (phases.num_users() != K)
    throw std::invalid_argument("build_gain_table: dimension mismatch");
  GainTable t;
  t.direct.resize(K);
  t.cross.setZero(K, K);
  for (int k = 0; k < K; ++k) {
    t.direct[k] = std::norm(channels.gain(k, k).dot(phases.phases[k]));
    for (int i = 0; i < K; ++i) {
      if (i == k) continue;
      t.cross(k, i) = std::norm(channels.gain(k, i).dot(phases.phases[i]));
    }
  }
  return t;
}

PowerAllocation interference_map(const PowerAllocation& p, const GainTable& table,
                                 const Eigen::VectorXd& sinr_targets,
                                 double noise_power_w) {
  check_gains(table, sinr_targets);
  const int K = table.num_users();
  if (p.num_users() != K)
    throw std::invalid_argument("interference_map: dimension mismatch");
  PowerAllocation out;
  out.watts.resize(K);
  for (int k = 0; k < K; ++k) {
    double interf = 0.0;
    for (int i = 0; i < K; ++i)
      if (i != k) interf += table.cross(k, i) * p.watts[i];
    out.watts[k] = sinr_targets[k] / table.direct[k] * (interf + noise_power_w);
  }
  return out;
}

PowerResult fixed_point(const GainTable& table, const Eigen::VectorXd& sinr_targets,
                        double noise_power_w, const FixedPointOptions& opts) {
  check_gains(table, sinr_targets);
  const int K = table.num_users();

  PowerResult res;
  res.powers.watts = Eigen::VectorXd::Zero(K);
  double mid_residual = -1.0;
  for (int t = 1; t <= opts.max_iter; ++t) {
    PowerAllocation next = interference_map(res.powers, table, sinr_targets,
                                            noise_power_w);
    res.powers = next;
    res.iterations = t;

    if (res.powers.watts.sum() > opts.sum_power_cap_w) {
      res.status = PowerStatus::Infeasible;
      return res;
    }
    const PowerAllocation fp =
        interference_map(res.powers, table, sinr_targets, noise_power_w);
    const double residual = (res.powers.watts - fp.watts).norm();
    if (residual < opts.epsilon_w) {
      res.status = PowerStatus::Converged;
      return res;
    }
    if (t == opts.max_iter / 2) mid_residual = residual;
    if (t == opts.max_iter) {
      // A residual that has not contracted since mid-run means the fixed
      // point keeps receding (spectral radius >= 1); a clearly shrinking
      // residual that merely missed epsilon is a numerical failure instead.
      res.status = (mid_residual >= 0.0 && residual >= 0.9 * mid_residual)
                       ? PowerStatus::Infeasible
                       : PowerStatus::NumericalFailure;
    }
  }
  return res;
}

PowerResult direct_solve(const GainTable& table, const Eigen::VectorXd& sinr_targets,
                         double noise_power_w) {
  check_gains(table, sinr_targets);
  const int K = table.num_users();

  const Eigen::VectorXd d = sinr_targets.array() / table.direct.array();
  Eigen::MatrixXd dc = d.asDiagonal() * table.cross;
  dc.diagonal().setZero();

  PowerResult res;
  const double rho = Eigen::EigenSolver<Eigen::MatrixXd>(dc, false)
                         .eigenvalues()
                         .cwiseAbs()
                         .maxCoeff();
  if (rho >= 1.0 - 1e-9) {
    res.status = PowerStatus::Infeasible;
    return res;
  }

  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(K, K) - dc;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const Eigen::VectorXd rhs = d * noise_power_w;
  const Eigen::VectorXd p = lu.solve(rhs);
  if (!p.allFinite() || (m * p - rhs).norm() > 1e-8 * (1.0 + rhs.norm()) ||
      p.minCoeff() < 0.0) {
    res.status = PowerStatus::Infeasible;
    return res;
  }
  res.powers.watts = p;
  res.status = PowerStatus::Converged;
  return res;
}

}  // namespace risbf
