// SPDX-License-Identifier: Apache-2.0
//
// The seeded regression corpus: a fixed list of desk-scale scenarios
// (K <= 8, N <= 32) spanning user counts, unit counts, targets, pathloss
// exponents, and both deployments. Everything downstream derives
// deterministically from these entries.

#pragma once

#include <vector>

#include "risbf/channel.hpp"

namespace risbf::testutil {

struct CorpusEntry {
  int num_users;
  int units_per_user;
  double sinr_target;
  double pathloss_exponent;
  bool distributed;
  std::uint64_t seed;
};

inline std::vector<CorpusEntry> regression_corpus() {
  std::vector<CorpusEntry> out;
  auto add = [&out](int users, int units, double target, double alpha,
                    bool distributed, int seeds, std::uint64_t seed0) {
    for (int s = 0; s < seeds; ++s)
      out.push_back({users, units, target, alpha, distributed,
                     seed0 + static_cast<std::uint64_t>(s)});
  };
  // single-user sanity points
  add(1, 1, 2.0, 3.0, false, 2, 100);
  add(1, 8, 2.0, 3.0, false, 2, 110);
  add(1, 32, 2.0, 3.0, false, 2, 120);
  // small multiuser
  add(2, 2, 2.0, 3.0, false, 4, 200);
  add(2, 4, 2.0, 3.0, false, 4, 210);
  add(2, 8, 2.0, 3.0, false, 4, 220);
  add(2, 16, 2.0, 3.0, false, 4, 230);
  add(2, 32, 2.0, 3.0, false, 2, 240);
  add(3, 4, 2.0, 3.0, false, 4, 300);
  add(3, 8, 2.0, 3.0, false, 4, 310);
  add(3, 12, 2.0, 3.0, false, 4, 320);
  // medium
  add(4, 8, 2.0, 3.0, false, 5, 400);
  add(5, 10, 2.0, 3.0, false, 5, 500);
  add(4, 16, 2.0, 3.0, false, 5, 410);
  add(4, 32, 2.0, 3.0, false, 3, 420);
  add(6, 12, 2.0, 3.0, false, 5, 600);
  add(6, 18, 2.0, 3.0, false, 5, 610);
  // the paper-default sizes and the largest corner
  add(8, 16, 2.0, 3.0, false, 5, 800);
  add(8, 20, 2.0, 3.0, false, 5, 810);
  add(8, 24, 2.0, 3.0, false, 3, 820);
  add(8, 32, 2.0, 3.0, false, 3, 830);
  // target and pathloss variations
  add(4, 16, 1.0, 3.0, false, 5, 900);
  add(4, 16, 4.0, 3.0, false, 5, 910);
  add(4, 16, 2.0, 2.0, false, 5, 920);
  // distributed deployment
  add(2, 8, 2.0, 3.0, true, 2, 1000);
  add(4, 16, 2.0, 3.0, true, 2, 1010);
  add(8, 20, 2.0, 3.0, true, 2, 1020);
  return out;
}

inline ScenarioSpec corpus_spec(const CorpusEntry& e) {
  ScenarioSpec spec;
  spec.config = SystemConfig::make(e.num_users, e.units_per_user, e.sinr_target);
  spec.config.pathloss_exponent = e.pathloss_exponent;
  if (e.distributed) spec.config.deployment = Deployment::distributed(100.0);
  spec.seed = e.seed;
  return spec;
}

}  // namespace risbf::testutil
