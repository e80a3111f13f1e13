// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test suites: synthetic O(1)-scale channels and
// gain tables with a controlled interference spectral radius.

#pragma once

#include "risbf/model.hpp"
#include "risbf/powerctl.hpp"
#include "risbf/rng.hpp"

namespace risbf::testutil {

inline ChannelSet random_channels(int num_users, int units, std::uint64_t seed) {
  ChannelSet ch(num_users, units);
  Rng rng(seed);
  for (int k = 0; k < num_users; ++k)
    for (int i = 0; i < num_users; ++i)
      for (int n = 0; n < units; ++n) ch.gain(k, i)[n] = rng.cnormal(1.0);
  return ch;
}

inline PhaseBeamformer random_phases(int num_users, int units,
                                     std::uint64_t seed) {
  PhaseBeamformer pb;
  pb.phases.assign(num_users, CVector(units));
  Rng rng(seed);
  for (int k = 0; k < num_users; ++k)
    for (int n = 0; n < units; ++n)
      pb.phases[k][n] = std::polar(1.0, 2.0 * M_PI * rng.uniform());
  return pb;
}

inline double interference_spectral_radius(const GainTable& t,
                                           const Eigen::VectorXd& targets) {
  Eigen::MatrixXd dc =
      (targets.array() / t.direct.array()).matrix().asDiagonal() * t.cross;
  dc.diagonal().setZero();
  return Eigen::EigenSolver<Eigen::MatrixXd>(dc, false)
      .eigenvalues()
      .cwiseAbs()
      .maxCoeff();
}

// Random gain table rescaled so the interference iteration has the given
// spectral radius (< 1 feasible, >= 1 infeasible).
inline GainTable random_gain_table(int num_users, std::uint64_t seed,
                                   const Eigen::VectorXd& targets,
                                   double spectral_radius) {
  Rng rng(seed);
  GainTable t;
  t.direct.resize(num_users);
  t.cross.setZero(num_users, num_users);
  for (int k = 0; k < num_users; ++k) t.direct[k] = 0.5 + 1.5 * rng.uniform();
  if (num_users > 1) {
    for (int k = 0; k < num_users; ++k)
      for (int i = 0; i < num_users; ++i)
        if (i != k) t.cross(k, i) = rng.uniform();
    const double rho = interference_spectral_radius(t, targets);
    t.cross *= spectral_radius / rho;
  }
  return t;
}

}  // namespace risbf::testutil
