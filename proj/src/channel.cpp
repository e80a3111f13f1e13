// SPDX-License-Identifier: Apache-2.0

#include "risbf/channel.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "risbf/rng.hpp"

namespace risbf {

namespace {
constexpr double kPathlossAt1m = 1.7378008287493763e-4;  // 10^{-3.76}
constexpr double kMinDistanceM = 1.0;
}  // namespace

void ScenarioSpec::check() const {
  config.check();
  if (!(fading_variance > 0.0))
    throw std::invalid_argument("ScenarioSpec: fading_variance must be > 0");
}

double pathloss(double distance_m, double exponent) {
  const double d = std::max(distance_m, kMinDistanceM);
  return kPathlossAt1m * std::pow(d, -exponent);
}

std::array<double, 2> ris_row_position(const SystemConfig& config, int row) {
  if (config.deployment.kind == DeploymentKind::Centralized) return {0.0, 0.0};
  const double ang = 2.0 * M_PI * row / config.num_users;
  return {std::cos(ang) * config.deployment.radius_m,
          std::sin(ang) * config.deployment.radius_m};
}

Scenario generate_scenario(const ScenarioSpec& spec) {
  spec.check();
  const int K = spec.config.num_users;
  const int N = spec.config.units_per_user;

  Scenario sc;
  sc.channels = ChannelSet(K, N);
  sc.user_positions_m.resize(K);

  for (int k = 0; k < K; ++k) {
    Rng pos(derive_seed(spec.seed, {0, static_cast<std::uint64_t>(k)}));
    const double half = spec.config.area_side_m / 2.0;
    sc.user_positions_m[k] = {(2.0 * pos.uniform() - 1.0) * half,
                              (2.0 * pos.uniform() - 1.0) * half};
  }

  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < K; ++i) {
      const auto rp = ris_row_position(spec.config, i);
      const double dx = sc.user_positions_m[k][0] - rp[0];
      const double dy = sc.user_positions_m[k][1] - rp[1];
      const double d = std::hypot(dx, dy);
      const double amp =
          std::sqrt(pathloss(d, spec.config.pathloss_exponent));
      Rng fade(derive_seed(spec.seed, {1, static_cast<std::uint64_t>(k),
                                       static_cast<std::uint64_t>(i)}));
      CVector& g = sc.channels.gain(k, i);
      for (int n = 0; n < N; ++n) g[n] = amp * fade.cnormal(spec.fading_variance);
    }
  }
  return sc;
}

CVector raw_fading(int n, double rho, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("raw_fading: n must be >= 1");
  if (!(rho > 0.0)) throw std::invalid_argument("raw_fading: rho must be > 0");
  Rng rng(seed);
  CVector out(n);
  for (int i = 0; i < n; ++i) out[i] = rng.cnormal(rho);
  return out;
}

namespace {

std::string format_complex(const Complex& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "j";
  return os.str();
}

Complex parse_complex(const std::string& tok) {
  // a+bj / a-bj, with optional leading sign on a.
  const size_t jpos = tok.find('j');
  if (jpos == std::string::npos || jpos + 1 != tok.size())
    throw std::runtime_error("load_channels: malformed token '" + tok + "'");
  size_t split = std::string::npos;
  for (size_t p = 1; p + 1 < tok.size(); ++p) {
    if ((tok[p] == '+' || tok[p] == '-') && tok[p - 1] != 'e' && tok[p - 1] != 'E')
      split = p;  // last sign not part of an exponent separates re and im
  }
  if (split == std::string::npos)
    throw std::runtime_error("load_channels: malformed token '" + tok + "'");
  const double re = std::stod(tok.substr(0, split));
  const double im = std::stod(tok.substr(split, jpos - split));
  return {re, im};
}

}  // namespace

void save_channels(std::ostream& os, const ChannelSet& channels) {
  const int K = channels.num_users();
  const int N = channels.units_per_user();
  os << K << " " << N << "\n";
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < K; ++i) {
      const CVector& g = channels.gain(k, i);
      for (int n = 0; n < N; ++n) os << (n ? " " : "") << format_complex(g[n]);
      os << "\n";
    }
  }
}

ChannelSet load_channels(std::istream& is) {
  int K = 0, N = 0;
  if (!(is >> K >> N) || K < 1 || N < 1)
    throw std::runtime_error("load_channels: bad header");
  ChannelSet out(K, N);
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < K; ++i) {
      CVector& g = out.gain(k, i);
      for (int n = 0; n < N; ++n) {
        std::string tok;
        if (!(is >> tok)) throw std::runtime_error("load_channels: truncated file");
        g[n] = parse_complex(tok);
      }
    }
  }
  return out;
}

}  // namespace risbf
