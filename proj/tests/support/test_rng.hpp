#pragma once

// Self-contained deterministic RNG for tests, independent of the library's
// sampling machinery so oracles stay on a separate code path.

#include <cmath>
#include <cstdint>

#include "ballchain/linalg.hpp"
#include "ballchain/types.hpp"

namespace ballchain::testing {

struct TestRng {
  std::uint64_t state;

  explicit TestRng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t x = (state += 0x9e3779b97f4a7c15ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    double u1 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  cdouble cgaussian() { return {gaussian(), gaussian()}; }

  CVector unit_vector(int n) {
    while (true) {
      CVector z(n);
      for (int i = 0; i < n; ++i) z[i] = cgaussian();
      const double nz = norm(z);
      if (nz > 1e-8) {
        for (auto& c : z) c /= nz;
        return z;
      }
    }
  }

  CVector ball_point(int n, double radius) {
    CVector z = unit_vector(n);
    const double r = radius * std::sqrt(uniform());
    for (auto& c : z) c *= r;
    return z;
  }

  CMatrix matrix(int n, double scale = 1.0) {
    CMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a(i, j) = cdouble{uniform(-scale, scale), uniform(-scale, scale)};
    return a;
  }
};

}  // namespace ballchain::testing
