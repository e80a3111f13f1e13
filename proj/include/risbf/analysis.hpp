// SPDX-License-Identifier: Apache-2.0
//
// Discrete phase quantization, the energy-efficiency metric, and Monte Carlo
// plus closed-form estimators of the received-power scaling in the number of
// RIS units (single-user): linear growth for an unoptimized all-ones phase
// vector, quadratic growth under MRT phases.

#pragma once

#include <cstdint>

#include "risbf/model.hpp"
#include "risbf/parallel.hpp"

namespace risbf {

/// Nearest element of F = {e^{j 2 pi l / 2^b}} per entry, by complex-modulus
/// distance; exact halfway ties go to the smaller angle in [0, 2 pi).
PhaseBeamformer quantize_phases(const PhaseBeamformer& phases, int bits);

struct EnergyModel {
  double amplifier_inverse_efficiency = 1.25;            // mu = 1 / 0.8
  double bs_circuit_power_w = 0.7943282347242815;        // 29 dBm
  double user_circuit_power_w = 0.0031622776601683794;   // 5 dBm
  double ris_element_power_w = 0.0031622776601683794;    // 5 dBm
  double bandwidth_hz = 1e6;
};

/// sum_k B log2(1 + Gamma_k) / (mu P + P_B + sum_k P_user + N K P_ris),
/// with P the solution's sum transmit power. The numerator uses the targets;
/// SINR equals the target at any power-control optimum. Requires a feasible
/// solution.
double energy_efficiency(const BeamformingSolution& solution,
                         const SystemConfig& config,
                         const EnergyModel& model = {});

enum class ScalingMode { AllOnes, Mrt };

struct ScalingEstimate {
  double mean_w = 0.0;
  double stderr_w = 0.0;
  int trials = 0;
};

/// Monte Carlo estimate of P0 * E |g^T theta|^2 with g ~ CN(0, rho I).
/// Trials run in fixed chunks of 4096 with seeds derived per chunk and are
/// reduced in chunk order, so the estimate is independent of the execution
/// policy and thread count.
ScalingEstimate scaling_law_trial(int n_units, double rho, double p0_w,
                                  ScalingMode mode, int trials,
                                  std::uint64_t seed, Exec exec = Exec::Parallel);

/// Closed form: AllOnes -> N rho P0; Mrt -> P0 (N rho + N (N-1) pi rho / 4),
/// from the Rayleigh moments E|g| = sqrt(pi rho) / 2 and E|g|^2 = rho.
double scaling_law_exact(int n_units, double rho, double p0_w, ScalingMode mode);

}  // namespace risbf
