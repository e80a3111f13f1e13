// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "risbf/model.hpp"
#include "risbf/rng.hpp"

using namespace risbf;

namespace {

// Independent re-evaluation of the SINR defining formula with long double
// accumulation; kept free of the library's complex helpers on purpose.
std::vector<double> sinr_oracle(const ChannelSet& ch, const PhaseBeamformer& pb,
                                const Eigen::VectorXd& p, double noise) {
  const int K = ch.num_users();
  const int N = ch.units_per_user();
  std::vector<double> out(K);
  for (int k = 0; k < K; ++k) {
    long double num_re = 0, num_im = 0;
    for (int n = 0; n < N; ++n) {
      const Complex g = ch.gain(k, k)[n], t = pb.phases[k][n];
      // conj(g) * t
      num_re += (long double)g.real() * t.real() + (long double)g.imag() * t.imag();
      num_im += (long double)g.real() * t.imag() - (long double)g.imag() * t.real();
    }
    long double signal = p[k] * (num_re * num_re + num_im * num_im);
    long double denom = noise;
    for (int i = 0; i < K; ++i) {
      if (i == k) continue;
      long double re = 0, im = 0;
      for (int n = 0; n < N; ++n) {
        const Complex g = ch.gain(k, i)[n], t = pb.phases[i][n];
        re += (long double)g.real() * t.real() + (long double)g.imag() * t.imag();
        im += (long double)g.real() * t.imag() - (long double)g.imag() * t.real();
      }
      denom += p[i] * (re * re + im * im);
    }
    out[k] = (double)(signal / denom);
  }
  return out;
}

ChannelSet random_channels(int K, int N, std::uint64_t seed) {
  ChannelSet ch(K, N);
  Rng rng(seed);
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < K; ++i)
      for (int n = 0; n < N; ++n) ch.gain(k, i)[n] = rng.cnormal(1.0);
  return ch;
}

PhaseBeamformer random_phases(int K, int N, std::uint64_t seed) {
  PhaseBeamformer pb;
  pb.phases.assign(K, CVector(N));
  Rng rng(seed);
  for (int k = 0; k < K; ++k)
    for (int n = 0; n < N; ++n)
      pb.phases[k][n] = std::polar(1.0, 2.0 * M_PI * rng.uniform());
  return pb;
}

}  // namespace

TEST_CASE("dbm/watt conversions") {
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dbm_to_watts(-114.0) == doctest::Approx(3.981e-15).epsilon(1e-3));
  CHECK_THROWS_AS(watts_to_dbm(0.0), std::domain_error);
  CHECK_THROWS_AS(watts_to_dbm(-1.0), std::domain_error);

  // round trip on a log-spaced grid of watt values
  for (double e = -18.0; e <= 3.0; e += 0.5) {
    const double w = std::pow(10.0, e);
    CHECK(dbm_to_watts(watts_to_dbm(w)) == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("sinr single user, no interference") {
  ChannelSet ch(1, 2);
  ch.gain(0, 0) << Complex(1, 0), Complex(1, 0);
  PhaseBeamformer pb;
  pb.phases = {CVector::Ones(2)};
  PowerAllocation p{Eigen::VectorXd::Constant(1, 4.0)};
  const Eigen::VectorXd g = sinr(ch, pb, p, 1.0);
  CHECK(g[0] == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("sinr two symmetric users") {
  ChannelSet ch(2, 1);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i) ch.gain(k, i) << Complex(1, 0);
  PhaseBeamformer pb;
  pb.phases = {CVector::Ones(1), CVector::Ones(1)};
  PowerAllocation p{Eigen::VectorXd::Constant(2, 2.0)};
  const Eigen::VectorXd g = sinr(ch, pb, p, 1.0);
  CHECK(g[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("sinr matches the independent oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int K = 2 + static_cast<int>(seed % 3);
    const int N = 2 + static_cast<int>(seed % 5);
    const ChannelSet ch = random_channels(K, N, seed);
    const PhaseBeamformer pb = random_phases(K, N, seed + 100);
    Rng rng(seed + 200);
    Eigen::VectorXd p(K);
    for (int k = 0; k < K; ++k) p[k] = rng.uniform() + 0.1;
    const double noise = rng.uniform() + 0.5;

    const Eigen::VectorXd got = sinr(ch, pb, {p}, noise);
    const std::vector<double> want = sinr_oracle(ch, pb, p, noise);
    for (int k = 0; k < K; ++k)
      CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
  }
}

TEST_CASE("sinr homogeneity: scaling powers and noise together") {
  const ChannelSet ch = random_channels(3, 4, 42);
  const PhaseBeamformer pb = random_phases(3, 4, 43);
  Eigen::VectorXd p(3);
  p << 0.5, 1.5, 2.5;
  const Eigen::VectorXd base = sinr(ch, pb, {p}, 2.0);
  for (double c : {0.1, 3.0, 1e6}) {
    const Eigen::VectorXd scaled = sinr(ch, pb, {(c * p).eval()}, c * 2.0);
    for (int k = 0; k < 3; ++k)
      CHECK(scaled[k] == doctest::Approx(base[k]).epsilon(1e-12));
  }
}

TEST_CASE("sinr invariant to a common phase rotation of any theta_k") {
  const ChannelSet ch = random_channels(3, 4, 7);
  PhaseBeamformer pb = random_phases(3, 4, 8);
  Eigen::VectorXd p = Eigen::VectorXd::Constant(3, 1.0);
  const Eigen::VectorXd base = sinr(ch, pb, {p}, 1.0);
  pb.phases[1] *= std::polar(1.0, 1.234);
  const Eigen::VectorXd rotated = sinr(ch, pb, {p}, 1.0);
  for (int k = 0; k < 3; ++k)
    CHECK(rotated[k] == doctest::Approx(base[k]).epsilon(1e-12));
}

TEST_CASE("sinr rejects dimension mismatches") {
  const ChannelSet ch = random_channels(2, 2, 1);
  PhaseBeamformer pb = random_phases(3, 2, 2);
  PowerAllocation p{Eigen::VectorXd::Ones(2)};
  CHECK_THROWS_AS(sinr(ch, pb, p, 1.0), std::invalid_argument);
  PhaseBeamformer bad_n = random_phases(2, 3, 2);
  CHECK_THROWS_AS(sinr(ch, bad_n, p, 1.0), std::invalid_argument);
  PhaseBeamformer ok = random_phases(2, 2, 2);
  CHECK_THROWS_AS(sinr(ch, ok, p, 0.0), std::invalid_argument);
}

TEST_CASE("validate accepts a feasible single-user solution") {
  ChannelSet ch(1, 2);
  ch.gain(0, 0) << Complex(1, 0), Complex(1, 0);
  SystemConfig cfg = SystemConfig::make(1, 2, 2.0);
  cfg.noise_power_w = 1.0;

  BeamformingSolution sol;
  sol.phases.phases = {CVector::Ones(2)};
  sol.powers.watts = Eigen::VectorXd::Constant(1, 0.5);  // gamma = 0.5*4 = 2
  sol.sinrs = sinr(ch, sol.phases, sol.powers, cfg.noise_power_w);
  sol.sum_power_w = 0.5;
  sol.status = SolutionStatus::Feasible;

  const ValidationReport rep = validate(sol, cfg, ch, 1e-6);
  CHECK(rep.all_pass());
}

TEST_CASE("validate flags a non-unit modulus entry") {
  ChannelSet ch(1, 2);
  ch.gain(0, 0) << Complex(1, 0), Complex(1, 0);
  SystemConfig cfg = SystemConfig::make(1, 2, 2.0);
  cfg.noise_power_w = 1.0;

  BeamformingSolution sol;
  sol.phases.phases = {CVector::Ones(2)};
  sol.phases.phases[0][1] = Complex(0.5, 0.0);
  sol.powers.watts = Eigen::VectorXd::Constant(1, 1.0);
  sol.sum_power_w = 1.0;
  const ValidationReport rep = validate(sol, cfg, ch, 1e-6);
  CHECK_FALSE(rep.all_pass());
  const ValidationCheck* um = rep.find("unit_modulus");
  REQUIRE(um != nullptr);
  CHECK_FALSE(um->pass);
  CHECK(um->residual == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("validate flags downscaled powers") {
  // Equality point for the symmetric 2-user instance: p = (1, 1) at
  // a = 4, c = 1, Gamma = 2, sigma^2 = 1 (closed form Gamma sigma^2/(a-Gamma c)).
  ChannelSet ch(2, 2);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i) {
      ch.gain(k, i) << Complex(0, 0), Complex(0, 0);
      if (i == k) ch.gain(k, i) << Complex(1, 0), Complex(1, 0);
    }
  ch.gain(0, 1) << Complex(1, 0), Complex(0, 0);
  ch.gain(1, 0) << Complex(1, 0), Complex(0, 0);
  SystemConfig cfg = SystemConfig::make(2, 2, 2.0);
  cfg.noise_power_w = 1.0;

  BeamformingSolution sol;
  sol.phases.phases = {CVector::Ones(2), CVector::Ones(2)};
  sol.powers.watts = Eigen::VectorXd::Constant(2, 1.0);
  sol.sinrs = sinr(ch, sol.phases, sol.powers, cfg.noise_power_w);
  sol.sum_power_w = 2.0;
  sol.status = SolutionStatus::Feasible;
  CHECK(validate(sol, cfg, ch, 1e-6).all_pass());

  sol.powers.watts *= 0.9;
  sol.sum_power_w = sol.powers.watts.sum();
  const ValidationReport rep = validate(sol, cfg, ch, 1e-6);
  const ValidationCheck* slack = rep.find("sinr_slack");
  REQUIRE(slack != nullptr);
  CHECK_FALSE(slack->pass);
}

TEST_CASE("validate reports dimension mismatches instead of throwing") {
  const ChannelSet ch = random_channels(2, 2, 3);
  SystemConfig cfg = SystemConfig::make(2, 2, 2.0);
  BeamformingSolution sol;  // empty phases and powers
  const ValidationReport rep = validate(sol, cfg, ch, 1e-6);
  CHECK_FALSE(rep.all_pass());
  const ValidationCheck* dims = rep.find("dimensions");
  REQUIRE(dims != nullptr);
  CHECK_FALSE(dims->pass);
}

TEST_CASE("system config defaults and checks") {
  SystemConfig cfg;
  CHECK(cfg.num_users == 8);
  CHECK(cfg.units_per_user == 20);
  CHECK(cfg.noise_power_w == doctest::Approx(dbm_to_watts(-114.0)).epsilon(1e-14));
  CHECK(cfg.sinr_targets.size() == 8);
  CHECK(cfg.sinr_targets[0] == 2.0);
  CHECK(cfg.pathloss_exponent == 3.0);
  CHECK(cfg.area_side_m == 500.0);
  CHECK_NOTHROW(cfg.check());

  cfg.num_users = 0;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
}
