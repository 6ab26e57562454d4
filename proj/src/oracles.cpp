#include "ballchain/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "ballchain/parallel.hpp"

namespace ballchain::oracle {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Rng {
  std::uint64_t state;
  double uniform() {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
  double gaussian() {
    double u1 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }
  CVector unit_vector(int n) {
    CVector z(n);
    double nz = 0.0;
    do {
      for (int i = 0; i < n; ++i) z[i] = cdouble{gaussian(), gaussian()};
      nz = norm(z);
    } while (nz < 1e-12);
    for (auto& c : z) c /= nz;
    return z;
  }
};

double rayleigh(const CMatrix& h, const CVector& z) { return inner(h * z, z).real(); }

// One relaxation step: replace z by the extreme Rayleigh vector of H
// restricted to span{z, Hz}.
CVector subspace_step(const CMatrix& h, const CVector& z, bool minimize) {
  CVector hz = h * z;
  // Orthonormalize {z, hz}.
  CVector w = hz - inner(hz, z) * z;
  const double wn = norm(w);
  if (wn < 1e-14) return z;  // already an eigenvector
  for (auto& c : w) c /= wn;
  // 2x2 restriction [[a, b],[conj(b), d]] of H on (z, w).
  const double a = rayleigh(h, z);
  const double d = rayleigh(h, w);
  const cdouble b = inner(h * w, z);
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  const double target = minimize ? mean - rad : mean + rad;
  // Eigenvector for `target`: (b, target - a) in the (z, w) basis.
  cdouble cz = b;
  cdouble cw = cdouble{target - a, 0.0};
  double cn = std::sqrt(std::norm(cz) + std::norm(cw));
  if (cn < 1e-300) return z;
  cz /= cn;
  cw /= cn;
  CVector out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = cz * z[i] + cw * w[i];
  const double on = norm(out);
  for (auto& c : out) c /= on;
  return out;
}

}  // namespace

std::pair<double, double> sphere_range_extrema(const CMatrix& a, int samples,
                                               int polish_iters, std::uint64_t seed) {
  const int n = a.dim();
  const CMatrix h = hermitian_part(a);
  Rng rng{splitmix64(seed ^ 0x5eedULL)};

  double lo = 1e308, hi = -1e308;
  CVector arg_lo, arg_hi;
  for (int i = 0; i < samples; ++i) {
    const CVector z = rng.unit_vector(n);
    const double v = rayleigh(h, z);
    if (v < lo) {
      lo = v;
      arg_lo = z;
    }
    if (v > hi) {
      hi = v;
      arg_hi = z;
    }
  }
  CVector zmin = arg_lo, zmax = arg_hi;
  for (int it = 0; it < polish_iters; ++it) zmin = subspace_step(h, zmin, true);
  for (int it = 0; it < polish_iters; ++it) zmax = subspace_step(h, zmax, false);
  lo = std::min(lo, rayleigh(h, zmin));
  hi = std::max(hi, rayleigh(h, zmax));
  return {lo, hi};
}

bool brute_force_resonant(const std::vector<cdouble>& eigs, int bound, double tol) {
  const int n = static_cast<int>(eigs.size());
  std::vector<int> m(n, 0);
  while (true) {
    int total = 0;
    cdouble sum{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      total += m[j];
      sum += static_cast<double>(m[j]) * eigs[j];
    }
    if (total >= 2 && total <= bound) {
      for (int s = 0; s < n; ++s)
        if (std::abs(eigs[s] - sum) <= tol * (1.0 + std::abs(eigs[s]))) return true;
    }
    int j = 0;
    while (j < n && m[j] == bound) m[j++] = 0;
    if (j == n) return false;
    ++m[j];
  }
}

bool brute_force_real_resonant(const std::vector<cdouble>& eigs, int bound, double tol) {
  const int n = static_cast<int>(eigs.size());
  std::vector<int> m(n, 0);
  while (true) {
    int total = 0;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      total += m[j];
      sum += m[j] * eigs[j].real();
    }
    if (total >= 2 && total <= bound) {
      for (int s = 0; s < n; ++s)
        if (std::abs(eigs[s].real() - sum) <= tol * (1.0 + std::abs(eigs[s].real())))
          return true;
    }
    int j = 0;
    while (j < n && m[j] == bound) m[j++] = 0;
    if (j == n) return false;
    ++m[j];
  }
}

CVector shear_flow_closed_form(double a, const CVector& z, double t) {
  const double decay = std::exp(-t);
  const cdouble w1 = decay * (z[0] + a * z[1] * z[1]);
  const cdouble w2 = decay * z[1];
  return {w1 - a * w2 * w2, w2};
}

double partial_series_k(double x, int kmax) {
  double acc = 0.0;
  double xk = x;  // x^1
  for (int k = 2; k <= kmax; ++k) {
    xk *= x;
    acc += k * xk;
  }
  return acc;
}

double partial_series_k2(double x, int kmax) {
  double acc = 0.0;
  double xk = x;
  for (int k = 2; k <= kmax; ++k) {
    xk *= x;
    acc += static_cast<double>(k) * k * xk;
  }
  return acc;
}

}  // namespace ballchain::oracle
