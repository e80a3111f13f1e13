// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "risbf/baselines.hpp"
#include "risbf/channel.hpp"
#include "risbf/dualmethod.hpp"
#include "support/testutil.hpp"

using namespace risbf;
using namespace risbf::testutil;

TEST_CASE("mrt aligns every element to the direct channel") {
  ChannelSet ch(1, 2);
  ch.gain(0, 0) << Complex(1, 1), Complex(2, 0);
  const PhaseBeamformer pb = mrt_phase(ch);
  CHECK(std::abs(pb.phases[0][0] - Complex(1, 1) / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(pb.phases[0][1] - Complex(1, 0)) < 1e-15);
  const Complex aligned = ch.gain(0, 0).dot(pb.phases[0]);
  CHECK(aligned.real() == doctest::Approx(std::sqrt(2.0) + 2.0).epsilon(1e-14));
  CHECK(std::abs(aligned.imag()) < 1e-14);
}

TEST_CASE("mrt keeps a negative real channel's sign") {
  ChannelSet ch(1, 1);
  ch.gain(0, 0) << Complex(-1, 0);
  const PhaseBeamformer pb = mrt_phase(ch);
  CHECK(std::abs(pb.phases[0][0] - Complex(-1, 0)) < 1e-15);
}

TEST_CASE("mrt alignment property on random channels") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ChannelSet ch = random_channels(2, 8, seed);
    const PhaseBeamformer pb = mrt_phase(ch);
    for (int k = 0; k < 2; ++k) {
      const Complex a = ch.gain(k, k).dot(pb.phases[k]);
      const double abs_sum = ch.gain(k, k).cwiseAbs().sum();
      CHECK(a.real() == doctest::Approx(abs_sum).epsilon(1e-12));
      CHECK(std::abs(a.imag()) <= 1e-12 * abs_sum);
    }
  }
}

TEST_CASE("mrt maps zero entries to phase 1 and counts them") {
  ChannelSet ch(1, 3);
  ch.gain(0, 0) << Complex(0, 0), Complex(2, 0), Complex(0, 0);
  int zeros = 0;
  const PhaseBeamformer pb = mrt_phase(ch, &zeros);
  CHECK(zeros == 2);
  CHECK(pb.phases[0][0] == Complex(1, 0));
  CHECK(pb.phases[0][2] == Complex(1, 0));
}

TEST_CASE("nulling feasibility: the triangle-style necessary condition") {
  ChannelSet ch(2, 3);
  ch.gain(0, 1) << Complex(1, 0), Complex(1, 0), Complex(3, 0);  // 2*3 > 5
  ch.gain(1, 0) << Complex(1, 0), Complex(1, 0), Complex(1, 0);  // 2 <= 3
  const ZfFeasibility f = zf_feasibility(ch);
  CHECK_FALSE(f.pair_ok[0][1]);
  CHECK(f.pair_ok[1][0]);
  CHECK_FALSE(f.overall);
}

TEST_CASE("two unequal magnitudes can never null") {
  ChannelSet ch(2, 2);
  ch.gain(0, 1) << Complex(1, 0), Complex(2, 0);
  ch.gain(1, 0) << Complex(1, 0), Complex(1, 0);
  const ZfFeasibility f = zf_feasibility(ch);
  CHECK_FALSE(f.pair_ok[0][1]);
  CHECK(f.pair_ok[1][0]);
}

TEST_CASE("projector state: idempotent and annihilates the cross channels") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const int K = 3, N = 6;
    const ChannelSet ch = random_channels(K, N, seed * 3);
    for (int k = 0; k < K; ++k) {
      const ZfState st = make_zf_state(ch, k, 1e3);
      CHECK((st.projector * st.projector - st.projector).cwiseAbs().maxCoeff() <=
            1e-10);
      for (int i = 0; i < K; ++i) {
        if (i == k) continue;
        const CVector& g = ch.gain(i, k);
        CHECK((st.projector * g).norm() <= 1e-10 * g.norm());
      }
    }
  }
}

TEST_CASE("single user reduces to MRT phases") {
  const ChannelSet ch = random_channels(1, 5, 4);
  const ZfPhaseResult r = zf_phase(ch, 0);
  const PhaseBeamformer mrt = mrt_phase(ch);
  // both are rotated so g^H theta is real positive, so they match elementwise
  for (int n = 0; n < 5; ++n)
    CHECK(std::abs(r.theta[n] - mrt.phases[0][n]) < 1e-6);
}

namespace {

// Closed form of the penalized objective maximized over the auxiliary vector
// for a fixed theta:  Re(g^H P theta) + ||P g||^2/(4 lambda)
//                     - lambda ||(I - P) theta||^2.
double penalized_objective_at(const CVector& g, const CMatrix& projector,
                              const CVector& theta, double lambda) {
  const CVector pg = projector * g;
  const CVector pt = projector * theta;
  return (g.adjoint() * pt).value().real() + pg.squaredNorm() / (4.0 * lambda) -
         lambda * (theta - pt).squaredNorm();
}

}  // namespace

TEST_CASE("two-user instance with an exact unit-modulus null") {
  ChannelSet ch(2, 2);
  ch.gain(0, 0) << Complex(1, 0), Complex(-1, 0);  // g_11
  ch.gain(1, 0) << Complex(1, 0), Complex(1, 0);   // g_21, to be nulled
  ch.gain(0, 1) << Complex(1, 0), Complex(1, 0);
  ch.gain(1, 1) << Complex(1, 0), Complex(-1, 0);
  const double lambda = 1e3;
  const ZfPhaseResult r = zf_phase(ch, 0, lambda);
  // theta = [1, -1] up to a global phase; the output rotation pins it exactly
  CHECK(std::abs(r.theta[0] - Complex(1, 0)) < 1e-6);
  CHECK(std::abs(r.theta[1] - Complex(-1, 0)) < 1e-6);
  CHECK(std::abs(ch.gain(1, 0).dot(r.theta)) < 1e-6);  // nulled
  // aligned gain reaches 2; the penalized objective tops out at 2 + 1/(2 lambda)
  CHECK(ch.gain(0, 0).dot(r.theta).real() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.objective_trace.back() ==
        doctest::Approx(2.0 + 1.0 / (2.0 * lambda)).epsilon(1e-6));

  // brute force over a 64-level phase grid confirms the optimum
  const ZfState st = make_zf_state(ch, 0, lambda);
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < 64; ++a)
    for (int b = 0; b < 64; ++b) {
      CVector th(2);
      th << std::polar(1.0, 2.0 * M_PI * a / 64),
          std::polar(1.0, 2.0 * M_PI * b / 64);
      best = std::max(best, penalized_objective_at(ch.gain(0, 0), st.projector,
                                                   th, lambda));
    }
  CHECK(r.objective_trace.back() == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("objective trace never decreases") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int K = 2 + static_cast<int>(seed % 3);
    const int N = K + 2 + static_cast<int>(seed % 4);
    const ChannelSet ch = random_channels(K, N, seed * 17);
    const ZfPhaseResult r = zf_phase(ch, static_cast<int>(seed % K));
    for (size_t t = 1; t < r.objective_trace.size(); ++t)
      CHECK(r.objective_trace[t] >=
            r.objective_trace[t - 1] - 1e-9 * (1.0 + std::abs(r.objective_trace[t])));
  }
}

TEST_CASE("random init converges with a monotone trace too") {
  const ChannelSet ch = random_channels(3, 8, 13);
  const ZfPhaseResult r = zf_phase(ch, 1, 1e3, std::uint64_t{99});
  CHECK(r.iterations >= 1);
  for (size_t t = 1; t < r.objective_trace.size(); ++t)
    CHECK(r.objective_trace[t] >=
          r.objective_trace[t - 1] - 1e-9 * (1.0 + std::abs(r.objective_trace[t])));
  CHECK(unit_modulus_residual({{r.theta}}) <= 1e-15);
}

TEST_CASE("residual leakage shrinks as the penalty grows") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const int K = 3, N = 8;
    const ChannelSet ch = random_channels(K, N, seed * 29);
    double prev = -1.0;
    for (double lam : {10.0, 1e3, 1e5}) {
      PhaseBeamformer pb;
      pb.phases.resize(K);
      for (int k = 0; k < K; ++k)
        pb.phases[k] = zf_phase(ch, k, lam, std::nullopt, 1e-12, 2000).theta;
      const double leak = max_cross_leakage(ch, pb);
      if (prev >= 0.0) CHECK(leak <= prev * (1.0 + 1e-9));
      prev = leak;
    }
  }
}

TEST_CASE("power completion closed forms") {
  // MRT, single user: p = Gamma sigma^2 / (sum |g|)^2
  ChannelSet ch(1, 2);
  ch.gain(0, 0) << Complex(3, 0), Complex(0, 4);
  SystemConfig cfg = SystemConfig::make(1, 2, 2.0);
  cfg.noise_power_w = 1.0;
  const BeamformingSolution mrt = solve_with_phases(mrt_phase(ch), ch, cfg);
  REQUIRE(mrt.status == SolutionStatus::Feasible);
  CHECK(mrt.sum_power_w == doctest::Approx(2.0 / 49.0).epsilon(1e-10));

  // exact nulling: interference-free powers p_k = Gamma sigma^2 / a_k
  ChannelSet ch2(2, 2);
  ch2.gain(0, 0) << Complex(1, 0), Complex(-1, 0);
  ch2.gain(1, 0) << Complex(1, 0), Complex(1, 0);
  ch2.gain(0, 1) << Complex(1, 0), Complex(1, 0);
  ch2.gain(1, 1) << Complex(1, 0), Complex(-1, 0);
  SystemConfig cfg2 = SystemConfig::make(2, 2, 2.0);
  cfg2.noise_power_w = 1.0;
  PhaseBeamformer zf;
  zf.phases = {zf_phase(ch2, 0).theta, zf_phase(ch2, 1).theta};
  const BeamformingSolution sol = solve_with_phases(zf, ch2, cfg2);
  REQUIRE(sol.status == SolutionStatus::Feasible);
  // each aligned gain is 2, so a = 4 and p_k = 0.5
  CHECK(sol.sum_power_w == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.diagnostics.at("max_leakage") < 1e-6);
}

TEST_CASE("dual method beats MRT once interference matters") {
  ScenarioSpec spec;
  spec.config = SystemConfig::make(4, 16, 2.0);
  spec.seed = 3;
  const Scenario sc = generate_scenario(spec);
  const BeamformingSolution dm = solve_dual_method(sc.channels, spec.config);
  const BeamformingSolution mrt =
      solve_with_phases(mrt_phase(sc.channels), sc.channels, spec.config);
  REQUIRE(dm.feasible());
  REQUIRE(mrt.feasible());
  CHECK(dm.sum_power_w < mrt.sum_power_w);
}

TEST_CASE("MRT hits its interference ceiling under a demanding target") {
  // MRT ignores interference; its achievable SIR is capped near N pi / (4(K-1))
  // regardless of power, so a target of 10 at K=4, N=16 cannot be met.
  ScenarioSpec spec;
  spec.config = SystemConfig::make(4, 16, 10.0);
  spec.seed = 3;
  const Scenario sc = generate_scenario(spec);
  const BeamformingSolution mrt =
      solve_with_phases(mrt_phase(sc.channels), sc.channels, spec.config);
  CHECK(mrt.status == SolutionStatus::Infeasible);
  const BeamformingSolution dm = solve_dual_method(sc.channels, spec.config);
  CHECK(dm.feasible());
}
