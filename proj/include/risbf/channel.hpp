// SPDX-License-Identifier: Apache-2.0
//
// Deterministic, seeded generation of channel realizations and network
// geometry. Users are dropped uniformly in a square centered on the
// transmitter; each gain entry is sqrt(pathloss(d)) * h with h ~ CN(0, rho).
//
// Draw order: position of user k comes from the stream derive_seed(seed,
// {0, k}); the fading vector of grid entry (k, i) comes from derive_seed(seed,
// {1, k, i}), entries n = 0..N-1 in order. Streams are independent of K and
// N, so a scenario is a prefix of any larger scenario with the same seed.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>

#include "risbf/model.hpp"

namespace risbf {

struct ScenarioSpec {
  SystemConfig config;
  std::uint64_t seed = 0;
  double fading_variance = 1.0;  // rho, per-entry variance of the CN fading

  void check() const;  // throws std::invalid_argument
};

struct Scenario {
  ChannelSet channels;
  std::vector<std::array<double, 2>> user_positions_m;  // K points
};

/// Large-scale pathloss 10^{-3.76} d^{-alpha}, d in meters, clamped to
/// d >= 1 m to avoid blowup near the transmitter.
double pathloss(double distance_m, double exponent);

/// Position of RIS row i: the transmitter location (0,0) for Centralized;
/// (cos(2 i pi / K), sin(2 i pi / K)) * radius for Distributed.
std::array<double, 2> ris_row_position(const SystemConfig& config, int row);

Scenario generate_scenario(const ScenarioSpec& spec);

/// n i.i.d. CN(0, rho) samples, deterministic per seed.
CVector raw_fading(int n, double rho, std::uint64_t seed);

/// Plain-text fixture format: a header "K N", then K*K lines, each the
/// flattened entry (k, i) as N whitespace-separated "a+bj" tokens.
void save_channels(std::ostream& os, const ChannelSet& channels);
ChannelSet load_channels(std::istream& is);

}  // namespace risbf
