#include "ballchain/sampling.hpp"

#include <cmath>

namespace ballchain {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr int kPrimes[16] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

DirectionStream::DirectionStream(int dim, std::uint64_t seed) : dim_(dim) {
  if (dim < 1 || dim > 8)
    throw Error(Errc::invalid_input, "direction stream supports 1 <= n <= 8");
  const int slots = 2 * dim;
  alphas_.resize(slots);
  offsets_.resize(slots);
  for (int i = 0; i < slots; ++i) {
    double a = std::sqrt(static_cast<double>(kPrimes[i]));
    alphas_[i] = a - std::floor(a);
    offsets_[i] = static_cast<double>(splitmix64(seed + 0x9e37ULL * (i + 1)) >> 11) * 0x1.0p-53;
  }
}

double DirectionStream::next_uniform(int slot) {
  const double x = static_cast<double>(counter_ + 1) * alphas_[slot] + offsets_[slot];
  return x - std::floor(x);
}

CVector DirectionStream::next() {
  for (int attempt = 0; attempt < 64; ++attempt) {
    CVector z(dim_);
    for (int j = 0; j < dim_; ++j) {
      double u1 = next_uniform(2 * j);
      if (u1 < 1e-300) u1 = 1e-300;
      const double u2 = next_uniform(2 * j + 1);
      const double r = std::sqrt(-2.0 * std::log(u1));
      z[j] = cdouble{r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
    }
    ++counter_;
    const double nz = norm(z);
    if (nz > 1e-8) {
      for (auto& c : z) c /= nz;
      return z;
    }
  }
  throw Error(Errc::internal_inconsistency, "degenerate direction stream");
}

std::vector<double> default_radii() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
}

BallSample make_sample(int dim, std::vector<double> radii, int per_sphere,
                       int tangent_count, std::uint64_t seed) {
  if (per_sphere < 1) throw Error(Errc::invalid_input, "per_sphere must be >= 1");
  for (double r : radii)
    if (!(r > 0.0 && r < 1.0))
      throw Error(Errc::invalid_input, "sample radii must lie in (0,1)");

  BallSample s;
  s.dim = dim;
  s.radii = radii;
  s.per_sphere = per_sphere;
  s.tangent_count = tangent_count;
  s.seed = seed;
  s.points.reserve(radii.size() * per_sphere);
  s.tangent_pairs.reserve(radii.size() * tangent_count);

  DirectionStream points_stream(dim, seed);
  for (double r : radii)
    for (int i = 0; i < per_sphere; ++i) {
      CVector z = points_stream.next();
      for (auto& c : z) c *= r;
      s.points.push_back(std::move(z));
    }

  DirectionStream tangent_stream(dim, splitmix64(seed ^ 0x7AB6EULL));
  for (double r : radii)
    for (int i = 0; i < tangent_count; ++i) {
      CVector z = tangent_stream.next();
      for (auto& c : z) c *= r;
      CVector v;
      for (int attempt = 0; attempt < 64; ++attempt) {
        v = tangent_stream.next();
        // Real-orthogonal projection v <- v - Re<v,z> z / ||z||^2.
        const double proj = inner(v, z).real() / norm_sq(z);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= proj * z[j];
        const double nv = norm(v);
        if (nv > 1e-6) {
          for (auto& c : v) c /= nv;
          break;
        }
        v.clear();
      }
      if (v.empty())
        throw Error(Errc::internal_inconsistency, "tangent projection degenerate");
      s.tangent_pairs.push_back(TangentPair{std::move(z), std::move(v)});
    }
  return s;
}

BallSample scale_sample(const BallSample& s, double r) {
  if (!(r > 0.0 && r <= 1.0))
    throw Error(Errc::invalid_input, "scale factor must lie in (0,1]");
  BallSample out = s;
  for (double& rr : out.radii) rr *= r;
  for (CVector& z : out.points)
    for (auto& c : z) c *= r;
  for (TangentPair& p : out.tangent_pairs)
    for (auto& c : p.z) c *= r;
  return out;
}

}  // namespace ballchain
