// SPDX-License-Identifier: Apache-2.0

#include "risbf/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "risbf/rng.hpp"

namespace risbf {

PhaseBeamformer quantize_phases(const PhaseBeamformer& phases, int bits) {
  if (bits < 1) throw std::invalid_argument("quantize_phases: bits must be >= 1");
  const long levels = 1L << bits;
  PhaseBeamformer out;
  out.phases.reserve(phases.phases.size());
  for (const CVector& th : phases.phases) {
    CVector q(th.size());
    for (Eigen::Index n = 0; n < th.size(); ++n) {
      double a = std::arg(th[n]);
      if (a < 0.0) a += 2.0 * M_PI;
      const double t = a * levels / (2.0 * M_PI);
      long l0 = static_cast<long>(std::floor(t));
      if (l0 >= levels) l0 = 0;  // a == 2 pi after rounding
      const double frac = t - l0;
      long l;
      if (frac < 0.5) l = l0;
      else if (frac > 0.5) l = (l0 + 1) % levels;
      else l = std::min(l0, (l0 + 1) % levels);  // tie: smaller angle
      q[n] = std::polar(1.0, 2.0 * M_PI * l / levels);
    }
    out.phases.push_back(std::move(q));
  }
  return out;
}

double energy_efficiency(const BeamformingSolution& solution,
                         const SystemConfig& config, const EnergyModel& model) {
  if (!solution.feasible())
    throw std::invalid_argument("energy_efficiency: solution not feasible");
  double rate = 0.0;
  for (int k = 0; k < config.num_users; ++k)
    rate += model.bandwidth_hz * std::log2(1.0 + config.sinr_targets[k]);
  const double consumed =
      model.amplifier_inverse_efficiency * solution.sum_power_w +
      model.bs_circuit_power_w +
      config.num_users * model.user_circuit_power_w +
      static_cast<double>(config.units_per_user) * config.num_users *
          model.ris_element_power_w;
  return rate / consumed;
}

namespace {
constexpr int kChunk = 4096;

// Sum and sum-of-squares of the per-trial samples of one chunk.
void run_chunk(int n_units, double rho, double p0_w, ScalingMode mode,
               int count, std::uint64_t chunk_seed, double& sum, double& sumsq) {
  Rng rng(chunk_seed);
  sum = 0.0;
  sumsq = 0.0;
  for (int t = 0; t < count; ++t) {
    double sample;
    if (mode == ScalingMode::AllOnes) {
      Complex acc(0.0, 0.0);
      for (int n = 0; n < n_units; ++n) acc += rng.cnormal(rho);
      sample = p0_w * std::norm(acc);
    } else {
      double acc = 0.0;
      for (int n = 0; n < n_units; ++n) acc += std::abs(rng.cnormal(rho));
      sample = p0_w * acc * acc;
    }
    sum += sample;
    sumsq += sample * sample;
  }
}
}  // namespace

ScalingEstimate scaling_law_trial(int n_units, double rho, double p0_w,
                                  ScalingMode mode, int trials,
                                  std::uint64_t seed, Exec exec) {
  if (n_units < 1 || trials < 1)
    throw std::invalid_argument("scaling_law_trial: n_units and trials >= 1");
  if (!(rho > 0.0))
    throw std::invalid_argument("scaling_law_trial: rho must be > 0");

  const int nchunks = (trials + kChunk - 1) / kChunk;
  std::vector<double> sums(nchunks), sumsqs(nchunks);
  auto job = [&](int c) {
    const int count = std::min(kChunk, trials - c * kChunk);
    run_chunk(n_units, rho, p0_w, mode, count,
              derive_seed(seed, {static_cast<std::uint64_t>(c)}), sums[c],
              sumsqs[c]);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < nchunks; ++c) job(c);
  } else {
    for (int c = 0; c < nchunks; ++c) job(c);
  }

  double sum = 0.0, sumsq = 0.0;
  for (int c = 0; c < nchunks; ++c) {  // fixed reduction order
    sum += sums[c];
    sumsq += sumsqs[c];
  }
  ScalingEstimate est;
  est.trials = trials;
  est.mean_w = sum / trials;
  if (trials > 1) {
    const double var = std::max(0.0, (sumsq - trials * est.mean_w * est.mean_w) /
                                         (trials - 1));
    est.stderr_w = std::sqrt(var / trials);
  }
  return est;
}

double scaling_law_exact(int n_units, double rho, double p0_w, ScalingMode mode) {
  if (n_units < 1)
    throw std::invalid_argument("scaling_law_exact: n_units must be >= 1");
  const double n = n_units;
  if (mode == ScalingMode::AllOnes) return n * rho * p0_w;
  return p0_w * (n * rho + n * (n - 1.0) * M_PI * rho / 4.0);
}

}  // namespace risbf
