#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// The OpenMP kernels must reproduce the serial reference bit for bit:
// per-point work writes disjoint slots and the reductions happen serially
// with index tie-breaking.

#include "ballchain/builtin.hpp"
#include "ballchain/criteria.hpp"
#include "ballchain/loewner.hpp"
#include "ballchain/parallel.hpp"

using namespace ballchain;

TEST_CASE("jobs configuration") {
  CHECK(effective_jobs() >= 1);
  set_jobs(3);
  CHECK(effective_jobs() == 3);
  set_jobs(0);
  CHECK(effective_jobs() >= 1);
}

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<int> hits(10001, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("min/max reductions break ties to the lowest index") {
  const std::vector<double> v{3.0, 1.0, 1.0, 5.0};
  auto [mn, mi] = min_with_index(v);
  CHECK(mn == 1.0);
  CHECK(mi == 1);
  auto [mx, xi] = max_with_index(v);
  CHECK(mx == 5.0);
  CHECK(xi == 3);
}

TEST_CASE("criterion margin kernels: serial and parallel agree bitwise") {
  const PolyMap f = builtin::get_map("shear-0.5");
  const PolyCalculus calc(f);
  const CMatrix id = CMatrix::identity(2);
  const BallSample s = make_sample(2, default_radii(), 2000, 2000, 7);

  CHECK(spirallike_margins(calc, id, s.points, Exec::serial) ==
        spirallike_margins(calc, id, s.points, Exec::parallel));
  CHECK(g_starlike_margins(calc, GRegion::half_plane(), s.points, Exec::serial) ==
        g_starlike_margins(calc, GRegion::half_plane(), s.points, Exec::parallel));
  CHECK(convexity_margins(calc, s.tangent_pairs, Exec::serial) ==
        convexity_margins(calc, s.tangent_pairs, Exec::parallel));
  CHECK(q_class_margins(calc, s.points, Exec::serial) ==
        q_class_margins(calc, s.points, Exec::parallel));
}

TEST_CASE("reports are independent of the worker count") {
  const PolyMap f = builtin::get_map("shear-0.4");
  const BallSample s = make_sample(2, default_radii(), 500, 500, 11);
  set_jobs(1);
  const CriterionReport one = convexity_test(f, s);
  set_jobs(0);
  const CriterionReport all = convexity_test(f, s);
  CHECK(one.min_margin == all.min_margin);
  CHECK(one.witness == all.witness);
  CHECK(one.verdict == all.verdict);
}

TEST_CASE("sup-norm estimates are independent of the worker count") {
  const PolyMap f = builtin::get_map("two-term-ktilde");
  set_jobs(1);
  const auto one = coefficient_functionals(f);
  set_jobs(0);
  const auto all = coefficient_functionals(f);
  CHECK(one.first == all.first);
  CHECK(one.second == all.second);
}
