// SPDX-License-Identifier: Apache-2.0

#include "risbf/model.hpp"

#include <cmath>
#include <stdexcept>

namespace risbf {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (!(watts > 0.0)) throw std::domain_error("watts_to_dbm: watts must be > 0");
  return 10.0 * std::log10(watts) + 30.0;
}

SystemConfig SystemConfig::make(int num_users, int units_per_user,
                                double sinr_target) {
  SystemConfig c;
  c.num_users = num_users;
  c.units_per_user = units_per_user;
  c.sinr_targets = Eigen::VectorXd::Constant(num_users, sinr_target);
  return c;
}

void SystemConfig::check() const {
  if (num_users < 1) throw std::invalid_argument("SystemConfig: num_users < 1");
  if (units_per_user < 1)
    throw std::invalid_argument("SystemConfig: units_per_user < 1");
  if (!(noise_power_w > 0.0))
    throw std::invalid_argument("SystemConfig: noise_power_w must be > 0");
  if (sinr_targets.size() != num_users)
    throw std::invalid_argument("SystemConfig: sinr_targets length != num_users");
  if ((sinr_targets.array() <= 0.0).any())
    throw std::invalid_argument("SystemConfig: sinr_targets must be > 0");
  if (deployment.kind == DeploymentKind::Distributed && !(deployment.radius_m > 0.0))
    throw std::invalid_argument("SystemConfig: distributed radius must be > 0");
  if (!(area_side_m > 0.0))
    throw std::invalid_argument("SystemConfig: area_side_m must be > 0");
}

bool ChannelSet::all_finite() const {
  for (const auto& v : g_)
    if (!v.allFinite()) return false;
  return true;
}

double unit_modulus_residual(const PhaseBeamformer& pb) {
  double r = 0.0;
  for (const auto& th : pb.phases)
    for (Eigen::Index n = 0; n < th.size(); ++n)
      r = std::max(r, std::abs(std::abs(th[n]) - 1.0));
  return r;
}

const char* to_string(SolutionStatus s) {
  switch (s) {
    case SolutionStatus::Optimal: return "optimal";
    case SolutionStatus::Feasible: return "feasible";
    case SolutionStatus::Infeasible: return "infeasible";
    case SolutionStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

Eigen::VectorXd sinr(const ChannelSet& channels, const PhaseBeamformer& phases,
                     const PowerAllocation& powers, double noise_power_w) {
  const int K = channels.num_users();
  if (phases.num_users() != K || powers.num_users() != K)
    throw std::invalid_argument("sinr: dimension mismatch");
  for (int k = 0; k < K; ++k)
    if (phases.phases[k].size() != channels.units_per_user())
      throw std::invalid_argument("sinr: phase vector length mismatch");
  if (!(noise_power_w > 0.0))
    throw std::invalid_argument("sinr: noise power must be > 0");

  Eigen::VectorXd out(K);
  for (int k = 0; k < K; ++k) {
    const double signal =
        powers.watts[k] * std::norm(channels.gain(k, k).dot(phases.phases[k]));
    double interference = 0.0;
    for (int i = 0; i < K; ++i) {
      if (i == k) continue;
      interference +=
          powers.watts[i] * std::norm(channels.gain(k, i).dot(phases.phases[i]));
    }
    out[k] = signal / (interference + noise_power_w);
  }
  return out;
}

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport validate(const BeamformingSolution& solution,
                          const SystemConfig& config, const ChannelSet& channels,
                          double tol) {
  ValidationReport report;

  const int K = config.num_users;
  bool dims_ok = solution.phases.num_users() == K &&
                 solution.powers.num_users() == K &&
                 channels.num_users() == K &&
                 channels.units_per_user() == config.units_per_user;
  if (dims_ok) {
    for (const auto& th : solution.phases.phases)
      if (th.size() != config.units_per_user) dims_ok = false;
  }
  report.checks.push_back({"dimensions", dims_ok, dims_ok ? 0.0 : 1.0});
  if (!dims_ok) return report;

  constexpr double kUnitModulusTol = 1e-9;
  const double um = unit_modulus_residual(solution.phases);
  report.checks.push_back({"unit_modulus", um <= kUnitModulusTol, um});

  const Eigen::VectorXd g =
      sinr(channels, solution.phases, solution.powers, config.noise_power_w);
  const double slack = (g - config.sinr_targets).minCoeff();
  report.checks.push_back({"sinr_slack", slack >= -tol, slack});

  const double pmin = solution.powers.watts.minCoeff();
  report.checks.push_back({"power_nonneg", pmin >= 0.0, pmin});

  const double sum = solution.powers.watts.sum();
  const double dev = std::abs(solution.sum_power_w - sum);
  report.checks.push_back({"sum_power_consistent",
                           dev <= 1e-12 * (1.0 + std::abs(sum)), dev});
  return report;
}

}  // namespace risbf
