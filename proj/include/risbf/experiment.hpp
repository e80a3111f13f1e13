// SPDX-License-Identifier: Apache-2.0
//
// Configuration-driven experiment runner: parses a plain-text key = value
// config with section headers, runs the requested solvers over sweep points
// and trials, and writes one CSV row per (point, trial, method) plus a
// human-readable summary. Numbers in the config accept unit suffixes:
// dBm (power), dB (ratio), m/km (length), Hz/kHz/MHz/GHz (frequency).
//
// CSV columns, in order:
//   scenario_id, seed, method, K, N, sinr_target_db, pathloss_exponent,
//   deployment, phase_bits, status, sum_power_w, sum_power_dbm,
//   ee_bits_per_joule, iterations, duality_gap_rel, max_leakage
// Fields that do not apply to a row carry "na". Per-trial seeds derive from
// the base seed as derive_seed(seed, {3, point_index, trial_index}); the SDR
// randomization seed as derive_seed(seed, {4, point_index, trial_index}).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "risbf/analysis.hpp"
#include "risbf/channel.hpp"
#include "risbf/model.hpp"
#include "risbf/parallel.hpp"

namespace risbf {

enum class Method { DM, SDR, MRT, ZF };

const char* to_string(Method m);
std::optional<Method> method_from_string(const std::string& s);

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_no, const std::string& what)
      : std::runtime_error("config line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

// Quantity parsing; used by the config reader and exposed for reuse.
double parse_power_w(const std::string& text);      // watts or dBm
double parse_ratio_linear(const std::string& text); // linear or dB
double parse_length_m(const std::string& text);     // m or km
double parse_freq_hz(const std::string& text);      // Hz/kHz/MHz/GHz
Deployment parse_deployment(const std::string& text);
std::string deployment_to_string(const Deployment& d);

struct SweepSpec {
  std::string parameter;  // sinr_target | pathloss_exponent | units_per_user |
                          // num_users | phase_bits | deployment
  std::vector<std::string> values;  // raw tokens, interpreted per parameter
};

struct ExperimentConfig {
  SystemConfig base;
  int units_multiplier = 0;  // when > 0, units_per_user = multiplier * K
  std::uint64_t seed = 1;
  double fading_variance = 1.0;
  std::vector<Method> methods;
  std::optional<SweepSpec> sweep;
  int trials_per_point = 1;
  int phase_bits = 0;  // 0 denotes continuous phases
  double zf_penalty = 1e3;
  int sdr_samples = 1000;
  EnergyModel energy;

  void check() const;  // throws std::invalid_argument
};

ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);

struct ResolvedPoint {
  SystemConfig config;
  int phase_bits = 0;
};

/// The sweep expanded into concrete per-point configurations (a single point
/// when no sweep is present).
std::vector<ResolvedPoint> resolve_points(const ExperimentConfig& config);

struct RunOutcome {
  std::string csv_path;
  std::string summary_path;
  int rows = 0;
  int infeasible = 0;
  int numerical_failures = 0;
};

RunOutcome run_experiment(const ExperimentConfig& config,
                          const std::string& output_dir,
                          Exec exec = Exec::Parallel);

/// Per-point, per-method medians and pairwise power savings recomputed from a
/// results CSV. Malformed rows are skipped and counted into *skipped_rows.
/// Throws std::runtime_error when the file has no usable rows.
std::string compare_summary(const std::string& csv_path,
                            int* skipped_rows = nullptr);

}  // namespace risbf
