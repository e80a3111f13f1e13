// SPDX-License-Identifier: Apache-2.0
//
// Seeded random streams. The uniform source is std::mt19937_64, whose output
// sequence is pinned down bit-exactly by the C++ standard. Doubles and normal
// deviates use the fixed mappings documented below, so a stream is
// reproducible across platforms and standard libraries:
//
//   uniform:  u = ((x >> 11) + 0.5) * 2^-53           with x = mt19937_64 draw
//   normal:   Box-Muller on consecutive uniforms,
//             z1 = sqrt(-2 ln u1) cos(2 pi u2),  z2 = sqrt(-2 ln u1) sin(2 pi u2)
//   CN(0,v):  sqrt(v/2) * (z1 + i z2)
//
// Stream seeds are derived from a base seed with splitmix64, folding the call
// path:  h = mix(base); for each path element p: h = mix(h ^ mix(p)).

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace risbf {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p));
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  // Circularly symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> cnormal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = s * normal();
    const double im = s * normal();
    return {re, im};
  }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace risbf
