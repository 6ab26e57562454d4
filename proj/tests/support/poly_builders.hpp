#pragma once

// Small construction helpers shared by the test binaries.

#include "ballchain/polymap.hpp"
#include "support/test_rng.hpp"

namespace ballchain::testing {

inline Term make_term(std::vector<int> exps, cdouble c) {
  return Term{MultiIndex{std::move(exps)}, c};
}

/// f(z) = (z1 + a z2^2, z2)
inline PolyMap shear2(cdouble a) {
  std::vector<std::vector<Term>> coords(2);
  coords[0].push_back(make_term({1, 0}, 1.0));
  coords[0].push_back(make_term({0, 2}, a));
  coords[1].push_back(make_term({0, 1}, 1.0));
  return PolyMap(2, std::move(coords));
}

/// f(z) = z + c (z1^2, 0)
inline PolyMap bump2(cdouble c) {
  std::vector<std::vector<Term>> coords(2);
  coords[0].push_back(make_term({1, 0}, 1.0));
  coords[0].push_back(make_term({2, 0}, c));
  coords[1].push_back(make_term({0, 1}, 1.0));
  return PolyMap(2, std::move(coords));
}

/// Random normalized map: identity plus random terms of degree in [2, max_deg].
inline PolyMap random_normalized(TestRng& rng, int n, int max_deg, double scale) {
  std::vector<std::vector<Term>> coords(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> ei(n, 0);
    ei[i] = 1;
    coords[i].push_back(make_term(ei, 1.0));
    const int extra = 1 + static_cast<int>(rng.uniform() * 3.0);
    for (int t = 0; t < extra; ++t) {
      std::vector<int> exps(n, 0);
      int deg = 2 + static_cast<int>(rng.uniform() * (max_deg - 1));
      for (int d = 0; d < deg; ++d) exps[static_cast<int>(rng.uniform() * n)]++;
      coords[i].push_back(
          make_term(exps, cdouble{rng.uniform(-scale, scale), rng.uniform(-scale, scale)}));
    }
  }
  return PolyMap(n, std::move(coords));
}

/// Random polynomial map without normalization constraints.
inline PolyMap random_map(TestRng& rng, int n, int max_deg, double scale) {
  std::vector<std::vector<Term>> coords(n);
  for (int i = 0; i < n; ++i) {
    const int terms = 2 + static_cast<int>(rng.uniform() * 4.0);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> exps(n, 0);
      int deg = static_cast<int>(rng.uniform() * (max_deg + 1));
      for (int d = 0; d < deg; ++d) exps[static_cast<int>(rng.uniform() * n)]++;
      coords[i].push_back(
          make_term(exps, cdouble{rng.uniform(-scale, scale), rng.uniform(-scale, scale)}));
    }
  }
  return PolyMap(n, std::move(coords));
}

}  // namespace ballchain::testing
