// SPDX-License-Identifier: Apache-2.0
//
// Domain types shared by all solvers: system configuration, channel grids,
// unit-modulus phase beamformers, power allocations, and packaged solutions,
// plus SINR evaluation, solution validation, and dBm/watt conversions.
//
// All types are immutable value objects once filled in; every operation here
// is a pure function, safe to call from any number of concurrent workers.

#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace risbf {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class DeploymentKind { Centralized, Distributed };

struct Deployment {
  DeploymentKind kind = DeploymentKind::Centralized;
  double radius_m = 0.0;  // ring radius, Distributed only

  static Deployment centralized() { return {DeploymentKind::Centralized, 0.0}; }
  static Deployment distributed(double radius_m) {
    return {DeploymentKind::Distributed, radius_m};
  }
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);  // throws std::domain_error for watts <= 0

/// System-level constants of one problem instance. Defaults: K=8 users,
/// N=20 RIS units per user, noise -114 dBm, SINR target 2 (linear),
/// pathloss exponent 3, centralized deployment in a 500 m square.
struct SystemConfig {
  int num_users = 8;                                          // K
  int units_per_user = 20;                                    // N
  double noise_power_w = 3.9810717055349695e-15;              // -114 dBm
  Eigen::VectorXd sinr_targets = Eigen::VectorXd::Constant(8, 2.0);  // linear
  double pathloss_exponent = 3.0;
  Deployment deployment{};
  double area_side_m = 500.0;

  // Convenience: K users, N units, equal linear SINR target, other defaults.
  static SystemConfig make(int num_users, int units_per_user, double sinr_target);

  void check() const;  // throws std::invalid_argument on malformed fields
};

/// K x K grid of complex gain vectors; entry (user k, row i) is the length-N
/// channel g_ki from the N RIS units in row i to user k.
class ChannelSet {
 public:
  ChannelSet() = default;
  ChannelSet(int num_users, int units_per_user)
      : K_(num_users), N_(units_per_user),
        g_(static_cast<size_t>(num_users) * num_users,
           CVector::Zero(units_per_user)) {}

  const CVector& gain(int user, int row) const { return g_[idx(user, row)]; }
  CVector& gain(int user, int row) { return g_[idx(user, row)]; }

  int num_users() const { return K_; }
  int units_per_user() const { return N_; }
  bool all_finite() const;

 private:
  size_t idx(int user, int row) const {
    return static_cast<size_t>(user) * K_ + row;
  }
  int K_ = 0, N_ = 0;
  std::vector<CVector> g_;
};

/// K unit-modulus phase vectors theta_k of length N.
struct PhaseBeamformer {
  std::vector<CVector> phases;

  int num_users() const { return static_cast<int>(phases.size()); }
  int units_per_user() const {
    return phases.empty() ? 0 : static_cast<int>(phases.front().size());
  }
};

/// max_{k,n} | |theta_kn| - 1 |
double unit_modulus_residual(const PhaseBeamformer& pb);

/// Per-user transmit powers in watts.
struct PowerAllocation {
  Eigen::VectorXd watts;

  int num_users() const { return static_cast<int>(watts.size()); }
};

enum class SolutionStatus { Optimal, Feasible, Infeasible, NumericalFailure };

const char* to_string(SolutionStatus s);

struct BeamformingSolution {
  PhaseBeamformer phases;
  PowerAllocation powers;
  Eigen::VectorXd sinrs;  // linear ratios, length K
  double sum_power_w = 0.0;
  SolutionStatus status = SolutionStatus::NumericalFailure;
  std::map<std::string, double> diagnostics;

  bool feasible() const {
    return status == SolutionStatus::Optimal || status == SolutionStatus::Feasible;
  }
};

/// Per-user SINR of Eq. gamma_k = p_k |g_kk^H theta_k|^2 /
/// (sum_{i != k} p_i |g_ki^H theta_i|^2 + noise). Throws std::invalid_argument
/// on dimension mismatch or nonpositive noise.
Eigen::VectorXd sinr(const ChannelSet& channels, const PhaseBeamformer& phases,
                     const PowerAllocation& powers, double noise_power_w);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_pass() const;
  const ValidationCheck* find(const std::string& name) const;
};

/// Checks a solution against the problem constraints: unit modulus (fixed
/// tolerance 1e-9), SINR slack min_k (gamma_k - Gamma_k) >= -tol, power
/// nonnegativity, and sum-power consistency. Never throws; dimension
/// mismatches are reported as a failing "dimensions" check.
ValidationReport validate(const BeamformingSolution& solution,
                          const SystemConfig& config, const ChannelSet& channels,
                          double tol);

}  // namespace risbf
