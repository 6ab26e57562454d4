#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ballchain/linalg.hpp"
#include "support/test_rng.hpp"

using namespace ballchain;
using ballchain::testing::TestRng;

namespace {

// Characteristic polynomial coefficients via Faddeev-LeVerrier:
// det(lambda I - A) = lambda^n + c[0] lambda^{n-1} + ... + c[n-1].
std::vector<cdouble> char_poly(const CMatrix& a) {
  const int n = a.dim();
  std::vector<cdouble> c(n);
  CMatrix m = a;
  for (int k = 1; k <= n; ++k) {
    cdouble tr = 0.0;
    for (int i = 0; i < n; ++i) tr += m(i, i);
    c[k - 1] = -tr / static_cast<double>(k);
    if (k == n) break;
    CMatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) += c[k - 1];
    m = a * shifted;
  }
  return c;
}

// Durand-Kerner root finding on the characteristic polynomial; an
// independent route to the spectrum for cross-checking the QR path.
std::vector<cdouble> durand_kerner_eigenvalues(const CMatrix& a) {
  const int n = a.dim();
  const std::vector<cdouble> c = char_poly(a);
  auto p = [&](cdouble x) {
    cdouble acc{1.0, 0.0};
    for (int k = 0; k < n; ++k) acc = acc * x + c[k];
    return acc;
  };
  std::vector<cdouble> w(n);
  cdouble seed{0.4, 0.9};
  cdouble acc{1.0, 0.0};
  for (int j = 0; j < n; ++j) {
    acc *= seed;
    w[j] = acc;
  }
  for (int it = 0; it < 400; ++it) {
    double moved = 0.0;
    for (int j = 0; j < n; ++j) {
      cdouble denom{1.0, 0.0};
      for (int k = 0; k < n; ++k)
        if (k != j) denom *= (w[j] - w[k]);
      if (std::abs(denom) < 1e-290) continue;
      const cdouble delta = p(w[j]) / denom;
      w[j] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return w;
}

double spectrum_distance(std::vector<cdouble> a, std::vector<cdouble> b) {
  // Greedy matching is fine for well separated desk-scale spectra.
  double worst = 0.0;
  for (const cdouble& x : a) {
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double d = std::abs(x - b[i]);
      if (d < best) {
        best = d;
        arg = i;
      }
    }
    worst = std::max(worst, best);
    b.erase(b.begin() + arg);
  }
  return worst;
}

CMatrix diag2(double a, double b) {
  CMatrix m(2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("hermitian eigenvalues: closed forms") {
  CHECK(hermitian_eigenvalues(CMatrix::identity(3)) ==
        std::vector<double>{1.0, 1.0, 1.0});

  CMatrix h(2);
  h(0, 0) = 2.0;
  h(1, 1) = 1.0;
  h(0, 1) = cdouble{0.0, 1.0};
  h(1, 0) = cdouble{0.0, -1.0};
  // closed form: mean +- sqrt(delta^2 + |b|^2)
  const double mean = 1.5, delta = 0.5;
  const double rad = std::sqrt(delta * delta + 1.0);
  auto eigs = hermitian_eigenvalues(h);
  CHECK(eigs[0] == doctest::Approx(mean - rad).epsilon(1e-13));
  CHECK(eigs[1] == doctest::Approx(mean + rad).epsilon(1e-13));
}

TEST_CASE("hermitian eigenvalues agree with the general QR route") {
  TestRng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 7.0);
    const CMatrix h = hermitian_part(rng.matrix(n));
    const std::vector<double> je = hermitian_eigenvalues(h);
    std::vector<cdouble> qe = eigenvalues(h);
    std::vector<double> qr(qe.size());
    for (std::size_t i = 0; i < qe.size(); ++i) {
      CHECK(std::abs(qe[i].imag()) < 1e-9);
      qr[i] = qe[i].real();
    }
    std::sort(qr.begin(), qr.end());
    for (std::size_t i = 0; i < qr.size(); ++i)
      CHECK(je[i] == doctest::Approx(qr[i]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("general eigenvalues match the characteristic polynomial oracle") {
  TestRng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 7.0);
    const CMatrix a = rng.matrix(n);
    const auto qr = eigenvalues(a);
    const auto dk = durand_kerner_eigenvalues(a);
    REQUIRE(qr.size() == static_cast<std::size_t>(n));
    CHECK(spectrum_distance(qr, dk) < 1e-7);
  }
}

TEST_CASE("eigenvalues: triangular and defective cases") {
  CMatrix t(3);
  t(0, 0) = cdouble{1.0, 2.0};
  t(0, 1) = 5.0;
  t(0, 2) = -1.0;
  t(1, 1) = cdouble{-0.5, 0.0};
  t(1, 2) = 0.25;
  t(2, 2) = cdouble{2.0, -1.0};
  auto eigs = eigenvalues(t);
  CHECK(spectrum_distance(eigs, {cdouble{1.0, 2.0}, cdouble{-0.5, 0.0}, cdouble{2.0, -1.0}}) < 1e-10);

  // Jordan block: repeated eigenvalue 1.
  CMatrix j(3);
  for (int i = 0; i < 3; ++i) j(i, i) = 1.0;
  j(0, 1) = 1.0;
  j(1, 2) = 1.0;
  auto je = eigenvalues(j);
  for (const auto& l : je) CHECK(std::abs(l - cdouble{1.0, 0.0}) < 1e-4);
}

TEST_CASE("solve: residual and singularity detection") {
  TestRng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 7.0);
    const CMatrix a = rng.matrix(n);
    CVector b(n);
    for (int i = 0; i < n; ++i) b[i] = rng.cgaussian();
    LuFactors f = lu_factor(a);
    if (f.min_pivot < 1e-12) continue;
    const CVector x = solve(a, b);
    const double res = distance(a * x, b);
    CHECK(res <= 1e-12 * (1.0 + norm(b)));
  }

  CMatrix s(2);
  s(0, 0) = 0.0;
  s(0, 1) = 0.0;
  s(1, 0) = 0.0;
  s(1, 1) = 1.0;
  CHECK_THROWS_WITH_AS(solve(s, CVector{1.0, 1.0}), doctest::Contains("singular"),
                       Error);
}

TEST_CASE("inverse round trip") {
  TestRng rng(47);
  const CMatrix a = rng.matrix(4);
  const CMatrix inv = inverse(a);
  CHECK(max_abs(a * inv - CMatrix::identity(4)) < 1e-11);
}

TEST_CASE("matrix exponential: diagonal closed form and semigroup") {
  const CMatrix d = diag2(1.0, 2.0);
  const CMatrix e = matrix_exponential(d);
  CHECK(std::abs(e(0, 0) - std::exp(1.0)) < 1e-13 * std::exp(1.0));
  CHECK(std::abs(e(1, 1) - std::exp(2.0)) < 1e-13 * std::exp(2.0));
  CHECK(std::abs(e(0, 1)) < 1e-14);

  TestRng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 3.0);
    const CMatrix a = rng.matrix(n);
    const double s = rng.uniform(-5.0, 5.0);
    const double t = rng.uniform(-5.0, 5.0);
    const CMatrix lhs = matrix_exponential(cdouble{s + t, 0.0} * a);
    const CMatrix rhs =
        matrix_exponential(cdouble{s, 0.0} * a) * matrix_exponential(cdouble{t, 0.0} * a);
    CHECK(max_abs(lhs - rhs) < 1e-10 * std::max(1.0, max_abs(lhs)));
  }
}

TEST_CASE("matrix exponential: overflow guard") {
  CMatrix big(2);
  big(0, 0) = 1000.0;
  big(1, 1) = 1000.0;
  CHECK_THROWS_AS(matrix_exponential(big), Error);
}

TEST_CASE("operator norm: sampled lower bound never exceeds it") {
  TestRng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 3.0);
    const CMatrix a = rng.matrix(n);
    const double nrm = operator_norm(a);
    double sampled = 0.0;
    for (int i = 0; i < 2000; ++i)
      sampled = std::max(sampled, norm(a * rng.unit_vector(n)));
    CHECK(sampled <= nrm * (1.0 + 1e-12));
    CHECK(sampled >= 0.5 * nrm);  // loose coverage sanity
  }
}
