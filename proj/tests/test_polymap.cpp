#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ballchain/polymap.hpp"
#include "support/poly_builders.hpp"
#include "support/test_rng.hpp"

using namespace ballchain;
using namespace ballchain::testing;

namespace {

// Central finite differences, the independent oracle for the derivatives.
CMatrix fd_jacobian(const PolyMap& f, const CVector& z, double h) {
  const int n = f.dim();
  CMatrix j(n);
  for (int v = 0; v < n; ++v) {
    CVector zp = z, zm = z;
    zp[v] += h;
    zm[v] -= h;
    const CVector fp = eval(f, zp);
    const CVector fm = eval(f, zm);
    for (int i = 0; i < n; ++i) j(i, v) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return j;
}

CVector fd_second_directional(const PolyMap& f, const CVector& z, const CVector& v,
                              double h) {
  CVector zp = z, zm = z;
  for (std::size_t i = 0; i < z.size(); ++i) {
    zp[i] += h * v[i];
    zm[i] -= h * v[i];
  }
  const CVector fp = eval(f, zp);
  const CVector f0 = eval(f, z);
  const CVector fm = eval(f, zm);
  CVector out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    out[i] = (fp[i] - 2.0 * f0[i] + fm[i]) / (h * h);
  return out;
}

}  // namespace

TEST_CASE("eval: direct substitution examples") {
  const PolyMap id = PolyMap::identity(2);
  const CVector z{cdouble{0.3, -0.1}, cdouble{0.2, 0.4}};
  CHECK(eval(id, z) == z);

  const PolyMap f = shear2(0.5);
  const CVector a = eval(f, {0.0, 1.0});
  CHECK(a[0] == cdouble{0.5, 0.0});
  CHECK(a[1] == cdouble{1.0, 0.0});

  const CVector b = eval(f, {0.1, 0.2});
  CHECK(std::abs(b[0] - cdouble{0.12, 0.0}) < 1e-16);
  CHECK(b[1] == cdouble{0.2, 0.0});

  CHECK_THROWS_AS(eval(f, CVector{1.0}), Error);
}

TEST_CASE("jacobian: hand differentiation and FD oracle") {
  const CVector z{cdouble{0.2, 0.1}, cdouble{-0.3, 0.25}};
  CHECK(max_abs(jacobian(PolyMap::identity(2), z) - CMatrix::identity(2)) == 0.0);

  const cdouble a{0.4, 0.2};
  const CMatrix j = jacobian(shear2(a), z);
  CHECK(j(0, 0) == cdouble{1.0, 0.0});
  CHECK(std::abs(j(0, 1) - 2.0 * a * z[1]) < 1e-16);
  CHECK(j(1, 0) == cdouble{0.0, 0.0});
  CHECK(j(1, 1) == cdouble{1.0, 0.0});

  TestRng rng(71);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 2;
    const PolyMap f = random_map(rng, n, 5, 1.0);
    const CVector p = rng.ball_point(n, 0.8);
    CHECK(max_abs(jacobian(f, p) - fd_jacobian(f, p, 1e-5)) < 1e-8);
  }
}

TEST_CASE("second derivative: closed form and FD oracle") {
  const CVector z{cdouble{0.2, 0.0}, cdouble{0.3, -0.1}};
  const CVector v{cdouble{0.5, 0.5}, cdouble{-0.25, 1.0}};
  const CVector zero = second_derivative(PolyMap::identity(2), z, v);
  CHECK(norm(zero) == 0.0);

  const cdouble a{0.7, -0.3};
  const CVector d2 = second_derivative(shear2(a), z, v);
  CHECK(std::abs(d2[0] - 2.0 * a * v[1] * v[1]) < 1e-15);
  CHECK(d2[1] == cdouble{0.0, 0.0});

  TestRng rng(73);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 2;
    const PolyMap f = random_map(rng, n, 5, 1.0);
    const CVector p = rng.ball_point(n, 0.7);
    const CVector dir = rng.unit_vector(n);
    const CVector exact = second_derivative(f, p, dir);
    const CVector approx = fd_second_directional(f, p, dir, 1e-4);
    CHECK(distance(exact, approx) < 1e-6);
  }
}

TEST_CASE("jacobian_solve: shear inverse and singular detection") {
  const CVector z{cdouble{0.1, 0.2}, cdouble{0.4, -0.3}};
  const CVector w{cdouble{1.0, -1.0}, cdouble{0.5, 0.0}};
  CHECK(distance(jacobian_solve(PolyMap::identity(2), z, w), w) < 1e-15);

  const cdouble a{0.6, 0.0};
  const PolyMap f = shear2(a);
  const CVector u = jacobian_solve(f, z, eval(f, z));
  // symbolic inverse of the triangular Jacobian applied to f(z)
  CHECK(std::abs(u[0] - (z[0] - a * z[1] * z[1])) < 1e-14);
  CHECK(std::abs(u[1] - z[1]) < 1e-15);
  const double residual = distance(jacobian(f, z) * u, eval(f, z));
  CHECK(residual <= 1e-12 * (1.0 + norm(eval(f, z))));

  // f = (z1^2, z2) has singular Jacobian on z1 = 0.
  std::vector<std::vector<Term>> coords(2);
  coords[0].push_back(make_term({2, 0}, 1.0));
  coords[1].push_back(make_term({0, 1}, 1.0));
  const PolyMap g(2, std::move(coords));
  CHECK_THROWS_AS(jacobian_solve(g, CVector{0.0, 0.5}, w), Error);
}

TEST_CASE("compose: identities and the evaluation oracle") {
  const PolyMap f = shear2(cdouble{0.5, 0.25});
  CHECK(compose(f, PolyMap::identity(2)) == f);
  CHECK(compose(PolyMap::identity(2), f) == f);

  // shear and its inverse cancel exactly on coefficients
  const PolyMap finv = shear2(cdouble{-0.5, -0.25});
  CHECK(compose(f, finv) == PolyMap::identity(2));

  TestRng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    const PolyMap a = random_map(rng, n, 3, 0.8);
    const PolyMap b = random_map(rng, n, 3, 0.8);
    const PolyMap c = compose(a, b);
    for (int pt = 0; pt < 10; ++pt) {
      const CVector z = rng.ball_point(n, 0.9);
      CHECK(distance(eval(c, z), eval(a, eval(b, z))) < 1e-12);
    }
  }
}

TEST_CASE("compose: degree cap") {
  std::vector<std::vector<Term>> coords(2);
  coords[0].push_back(make_term({1, 0}, 1.0));
  coords[0].push_back(make_term({0, 9}, 0.5));
  coords[1].push_back(make_term({0, 1}, 1.0));
  coords[1].push_back(make_term({9, 0}, 0.25));
  const PolyMap deg9(2, std::move(coords));
  CHECK_THROWS_AS(compose(deg9, deg9), Error);  // 81 > 64 blow-up
  const PolyMap truncated = compose(deg9, deg9, 5);
  CHECK(truncated.max_degree() <= 5);
}

TEST_CASE("dilate: coefficient scaling") {
  const PolyMap f = bump2(cdouble{0.3, -0.2});
  CHECK(dilate(f, 1.0) == f);

  const double r = 0.75;
  const PolyMap fr = dilate(f, r);
  MultiIndex sq{std::vector<int>{2, 0}};
  CHECK(fr.coefficient(0, sq) == cdouble{0.3, -0.2} * r);

  TestRng rng(97);
  const PolyMap g = random_normalized(rng, 3, 5, 0.4);
  const PolyMap gr = dilate(g, 0.5);
  for (int i = 0; i < 3; ++i)
    for (const Term& t : g.coord(i))
      CHECK(gr.coefficient(i, t.exp) == t.coeff * pow_int(0.5, t.exp.degree() - 1));

  CHECK_THROWS_AS(dilate(f, 0.0), Error);
  CHECK_THROWS_AS(dilate(f, 1.5), Error);
  CHECK_THROWS_AS(dilate(shear2(1.0) - PolyMap::identity(2), 0.5), Error);
}

TEST_CASE("homogeneous parts: analytic norms and exact reconstruction") {
  SUBCASE("single quadratic bump has ||A_2|| = |c| attained at e_1") {
    const cdouble c{0.35, 0.2};
    const HomogeneousExpansion ex = homogeneous_parts(bump2(c));
    REQUIRE(ex.degrees == std::vector<int>{2});
    CHECK(ex.norm_estimates[0].value == doctest::Approx(std::abs(c)).epsilon(1e-12));
  }
  SUBCASE("identity has no parts") {
    const HomogeneousExpansion ex = homogeneous_parts(PolyMap::identity(3));
    CHECK(ex.degrees.empty());
  }
  SUBCASE("shear has ||A_2|| = |a| attained at e_2") {
    const HomogeneousExpansion ex = homogeneous_parts(shear2(0.8));
    REQUIRE(ex.degrees == std::vector<int>{2});
    CHECK(ex.norm_estimates[0].value == doctest::Approx(0.8).epsilon(1e-12));
  }
  SUBCASE("id + sum of parts reconstructs the map exactly") {
    TestRng rng(109);
    const PolyMap f = random_normalized(rng, 2, 6, 0.3);
    const HomogeneousExpansion ex = homogeneous_parts(f);
    PolyMap acc = PolyMap::identity(2);
    for (const PolyMap& part : ex.parts) acc = acc + part;
    CHECK(acc == f);
  }
}

TEST_CASE("sup norm estimate is monotone in the sample budget") {
  TestRng rng(113);
  const PolyMap f = random_normalized(rng, 3, 4, 0.5);
  const HomogeneousExpansion full = homogeneous_parts(f);
  REQUIRE(!full.parts.empty());
  const PolyMap& part = full.parts[0];
  double prev = 0.0;
  for (int samples : {500, 2000, 8000, 32000}) {
    SupNormBudget b;
    b.samples = samples;
    b.restarts = 0;  // pure sampling stage
    const SupNormEstimate est = sup_norm_on_sphere(part, 1.0, b);
    CHECK(est.sampled >= prev);
    prev = est.sampled;
  }
  SupNormBudget with_ascent;
  with_ascent.samples = 2000;
  const SupNormEstimate refined = sup_norm_on_sphere(part, 1.0, with_ascent);
  CHECK(refined.value >= refined.sampled);
  CHECK(refined.refinement_gap == refined.value - refined.sampled);
}

TEST_CASE("coefficient functionals") {
  auto [sk_id, sk2_id] = coefficient_functionals(PolyMap::identity(2));
  CHECK(sk_id == 0.0);
  CHECK(sk2_id == 0.0);

  auto [sk, sk2] = coefficient_functionals(bump2(0.4));
  CHECK(sk == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(sk2 == doctest::Approx(1.6).epsilon(1e-12));

  auto [skb, skb2] = coefficient_functionals(bump2(0.25));
  (void)skb;
  CHECK(skb2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalization flag and snapping") {
  CHECK(PolyMap::identity(4).is_normalized());
  CHECK(shear2(0.3).is_normalized());

  std::vector<std::vector<Term>> coords(2);
  coords[0].push_back(make_term({1, 0}, cdouble{1.0 + 1e-13, 0.0}));
  coords[0].push_back(make_term({0, 0}, cdouble{1e-13, 0.0}));
  coords[0].push_back(make_term({0, 2}, cdouble{0.5, 0.0}));
  coords[1].push_back(make_term({0, 1}, 1.0));
  const PolyMap crooked(2, std::move(coords));
  CHECK_FALSE(crooked.is_normalized());
  CHECK(crooked.snapped_normalization().is_normalized());
}
