// SPDX-License-Identifier: Apache-2.0

#include "risbf/gridsearch.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "risbf/powerctl.hpp"

namespace risbf {

namespace {

PhaseBeamformer phases_for_index(long long index, int num_users, int units,
                                 const std::vector<Complex>& grid) {
  const int levels = static_cast<int>(grid.size());
  PhaseBeamformer pb;
  pb.phases.assign(num_users, CVector(units));
  long long rem = index;
  for (int k = 0; k < num_users; ++k)
    for (int n = 0; n < units; ++n) {
      pb.phases[k][n] = grid[rem % levels];
      rem /= levels;
    }
  return pb;
}

}  // namespace

GridSearchResult exhaustive_phase_search(const ChannelSet& channels,
                                         const Eigen::VectorXd& sinr_targets,
                                         double noise_power_w, int levels,
                                         Exec exec) {
  const int K = channels.num_users();
  const int N = channels.units_per_user();
  if (levels < 1) throw std::invalid_argument("grid search: levels must be >= 1");

  const double combos = std::pow(static_cast<double>(levels),
                                 static_cast<double>(K) * N);
  if (combos > double(1LL << 40))
    throw std::invalid_argument("grid search: combination count too large");
  const long long total = static_cast<long long>(combos);

  std::vector<Complex> grid(levels);
  for (int l = 0; l < levels; ++l)
    grid[l] = std::polar(1.0, 2.0 * M_PI * l / levels);

  struct Best {
    double power = 0.0;
    long long index = -1;
  };
  auto eval = [&](long long c) -> Best {
    const PhaseBeamformer pb = phases_for_index(c, K, N, grid);
    const GainTable table = build_gain_table(channels, pb);
    if (table.direct.minCoeff() < 1e-30) return {};  // nulled direct channel
    const PowerResult pr = direct_solve(table, sinr_targets, noise_power_w);
    if (pr.status != PowerStatus::Converged) return {};
    return {pr.powers.watts.sum(), c};
  };
  auto better = [](const Best& a, const Best& b) {
    if (b.index < 0) return a;
    if (a.index < 0) return b;
    if (b.power < a.power || (b.power == a.power && b.index < a.index)) return b;
    return a;
  };

  Best best;
  if (exec == Exec::Parallel) {
#pragma omp parallel
    {
      Best local;
#pragma omp for schedule(static) nowait
      for (long long c = 0; c < total; ++c) local = better(local, eval(c));
#pragma omp critical
      best = better(best, local);
    }
  } else {
    for (long long c = 0; c < total; ++c) best = better(best, eval(c));
  }

  GridSearchResult res;
  if (best.index < 0) return res;
  res.feasible = true;
  res.best_power_w = best.power;
  res.best_index = best.index;
  res.phases = phases_for_index(best.index, K, N, grid);
  return res;
}

}  // namespace risbf
