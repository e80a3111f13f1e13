// SPDX-License-Identifier: Apache-2.0
//
// Times the OpenMP kernels against their serial reference implementations and
// checks that both produce identical results.

#include <omp.h>

#include <cmath>
#include <cstdio>

#include "risbf/analysis.hpp"
#include "risbf/channel.hpp"
#include "risbf/gridsearch.hpp"
#include "risbf/sdr.hpp"

using namespace risbf;

namespace {

Scenario make_scenario(int users, int units, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.config = SystemConfig::make(users, units, 2.0);
  spec.seed = seed;
  return generate_scenario(spec);
}

void report(const char* name, double t_serial, double t_parallel, bool match) {
  std::printf("%-28s %10.3fs %12.3fs %9.2fx   %s\n", name, t_serial, t_parallel,
              t_serial / t_parallel, match ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %11s %13s %10s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    const SystemConfig cfg = SystemConfig::make(2, 2, 2.0);
    const Scenario sc = make_scenario(2, 2, 7);
    double t0 = omp_get_wtime();
    const auto a = exhaustive_phase_search(sc.channels, cfg.sinr_targets,
                                           cfg.noise_power_w, 16, Exec::Serial);
    double t1 = omp_get_wtime();
    const auto b = exhaustive_phase_search(sc.channels, cfg.sinr_targets,
                                           cfg.noise_power_w, 16, Exec::Parallel);
    double t2 = omp_get_wtime();
    report("phase grid search 16^4", t1 - t0, t2 - t1,
           a.best_index == b.best_index && a.best_power_w == b.best_power_w);
  }

  {
    const int n = 64, trials = 400000;
    double t0 = omp_get_wtime();
    const auto a =
        scaling_law_trial(n, 1.0, 1.0, ScalingMode::Mrt, trials, 3, Exec::Serial);
    double t1 = omp_get_wtime();
    const auto b = scaling_law_trial(n, 1.0, 1.0, ScalingMode::Mrt, trials, 3,
                                     Exec::Parallel);
    double t2 = omp_get_wtime();
    report("scaling-law MC 4e5 x N=64", t1 - t0, t2 - t1, a.mean_w == b.mean_w);
  }

  {
    const Scenario sc = make_scenario(4, 8, 11);
    SystemConfig cfg = SystemConfig::make(4, 8, 2.0);
    const RelaxationResult relax = solve_relaxation(sc.channels, cfg);
    double t0 = omp_get_wtime();
    const auto a =
        extract_rank_one(relax, sc.channels, cfg, 4000, 5, Exec::Serial);
    double t1 = omp_get_wtime();
    const auto b =
        extract_rank_one(relax, sc.channels, cfg, 4000, 5, Exec::Parallel);
    double t2 = omp_get_wtime();
    report("SDR randomization x4000", t1 - t0, t2 - t1,
           a.sum_power_w == b.sum_power_w &&
               a.diagnostics.at("best_candidate") ==
                   b.diagnostics.at("best_candidate"));
  }
  return 0;
}
