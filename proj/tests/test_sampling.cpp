#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ballchain/sampling.hpp"

using namespace ballchain;

TEST_CASE("make_sample: counts, radii, determinism") {
  const BallSample s = make_sample(2, {0.5}, 100, 0, 7);
  CHECK(s.points.size() == 100);
  for (const CVector& z : s.points) CHECK(std::abs(norm(z) - 0.5) < 1e-14);

  const BallSample t = make_sample(2, {0.5}, 100, 0, 7);
  for (std::size_t i = 0; i < s.points.size(); ++i)
    CHECK(s.points[i] == t.points[i]);

  const BallSample u = make_sample(2, {0.5}, 100, 0, 8);
  CHECK(s.points[0] != u.points[0]);
}

TEST_CASE("tangent pairs satisfy the real-orthogonality quantifier") {
  const BallSample s = make_sample(3, {0.3, 0.9}, 8, 50, 42);
  CHECK(s.tangent_pairs.size() == 100);
  for (const TangentPair& p : s.tangent_pairs) {
    CHECK(std::abs(inner(p.z, p.v).real()) <= 1e-14);
    CHECK(std::abs(norm(p.v) - 1.0) <= 1e-14);
    CHECK(norm(p.z) < 1.0);
  }
}

TEST_CASE("direction stream has the prefix property") {
  DirectionStream a(2, 99);
  DirectionStream b(2, 99);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("scale_sample shrinks points and keeps tangency") {
  const BallSample s = make_sample(2, {0.4, 0.8}, 16, 16, 5);
  const BallSample half = scale_sample(s, 0.5);
  CHECK(half.radii == std::vector<double>{0.2, 0.4});
  for (std::size_t i = 0; i < s.points.size(); ++i)
    CHECK(std::abs(norm(half.points[i]) - 0.5 * norm(s.points[i])) < 1e-15);
  for (const TangentPair& p : half.tangent_pairs) {
    CHECK(std::abs(inner(p.z, p.v).real()) <= 1e-14);
    CHECK(std::abs(norm(p.v) - 1.0) <= 1e-14);
  }
}

TEST_CASE("invalid sample parameters are rejected") {
  CHECK_THROWS_AS(make_sample(2, {0.5}, 0, 0, 1), Error);
  CHECK_THROWS_AS(make_sample(2, {1.0}, 10, 0, 1), Error);
  CHECK_THROWS_AS(make_sample(2, {0.0}, 10, 0, 1), Error);
}
