#pragma once

#include <cstdint>
#include <vector>

#include "ballchain/types.hpp"

namespace ballchain {

/// Deterministic quasi-random stream of unit vectors in C^n: Weyl-sequence
/// uniforms (irrational rotations offset by the seed) fed through Box-Muller
/// and normalized.  Identical output on every platform and thread count, and
/// a longer stream is always a prefix-extension of a shorter one.
class DirectionStream {
 public:
  DirectionStream(int dim, std::uint64_t seed);
  CVector next();

 private:
  double next_uniform(int slot);
  int dim_;
  std::uint64_t counter_ = 0;
  std::vector<double> alphas_;
  std::vector<double> offsets_;
};

struct TangentPair {
  CVector z;  // point in the ball
  CVector v;  // unit vector with Re<z,v> = 0
};

/// Quantifier domain for the membership criteria: points on spheres of the
/// radii schedule plus real-orthogonal unit tangent pairs.
struct BallSample {
  int dim = 0;
  std::vector<double> radii;
  int per_sphere = 0;
  int tangent_count = 0;
  std::uint64_t seed = 0;
  std::vector<CVector> points;
  std::vector<TangentPair> tangent_pairs;
};

/// {0.1, ..., 0.9, 0.95, 0.99}
std::vector<double> default_radii();

BallSample make_sample(int dim, std::vector<double> radii, int per_sphere,
                       int tangent_count, std::uint64_t seed);

/// Same directions shrunk by r: points scaled, tangents untouched
/// (Re<r z, v> = 0 still holds).  Used for dilation-stability comparisons.
BallSample scale_sample(const BallSample& s, double r);

}  // namespace ballchain
