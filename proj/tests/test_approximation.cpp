#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ballchain/approximation.hpp"
#include "ballchain/builtin.hpp"
#include "ballchain/oracles.hpp"
#include "support/poly_builders.hpp"

using namespace ballchain;
using namespace ballchain::testing;

namespace {

AutomorphismWord shear_word(cdouble a, int axis = 0) {
  AutomorphismWord w;
  w.dim = 2;
  std::vector<int> exps{0, 0};
  exps[1 - axis] = 2;
  w.factors.push_back(ShearFactor::shear(2, axis, {make_term(exps, a)}));
  w.normalized = true;
  return w;
}

AutomorphismWord bump_word(cdouble c) {
  // z + c (z2^2, 0) is shear_word; z + c (z1^2, 0) needs axis 1 source:
  // use overshear-free form via shear on axis 0 by z2^2? bump is axis 0 poly z1^2
  // which depends on the axis; instead: shear axis 1 by c z1^2 gives (z1, z2 + c z1^2).
  AutomorphismWord w;
  w.dim = 2;
  w.factors.push_back(ShearFactor::shear(2, 1, {make_term({2, 0}, c)}));
  w.normalized = true;
  return w;
}

std::vector<AutomorphismWord> repeat(const AutomorphismWord& w, int count) {
  return std::vector<AutomorphismWord>(count, w);
}

}  // namespace

TEST_CASE("dilation schedule defaults") {
  const DilationSchedule s = DilationSchedule::defaults();
  REQUIRE(s.radii.size() == 10);
  CHECK(s.radii.front() == doctest::Approx(0.5));
  CHECK(s.radii.back() == doctest::Approx(1.0 - std::pow(2.0, -10)));
  s.validate();
}

TEST_CASE("series closed forms match partial sums") {
  for (double x : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    // converged partial sums hit the closed form to double precision
    CHECK(std::abs(series_sum_k_xk(x) - oracle::partial_series_k(x, 2000)) <= 1e-12);
    CHECK(std::abs(series_sum_k2_xk(x) - oracle::partial_series_k2(x, 4000)) <= 1e-12);
    // truncations approach it from below, within the analytic tail bound
    const double p200 = oracle::partial_series_k(x, 200);
    const double slack = 1e-13 * (1.0 + series_sum_k_xk(x));
    CHECK(p200 <= series_sum_k_xk(x) + slack);
    const double tail =
        pow_int(x, 201) * (201.0 / (1.0 - x) + x / ((1.0 - x) * (1.0 - x)));
    CHECK(series_sum_k_xk(x) - p200 <= tail + slack);
  }
  // worked example: r = 1/3 -> x = 1/2, sum = 3/2, eps = 2/27
  CHECK(series_sum_k_xk(0.5) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(qtilde_distance_budget(1.0 / 3.0) == doctest::Approx(2.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("select_spirallike") {
  const PolyMap f = shear2(0.5);
  const BallSample sample = make_sample(2, default_radii(), 300, 0, 7);
  SUBCASE("the target itself is admissible at every schedule radius") {
    const auto cands = repeat(shear_word(0.5), 3);
    for (double r : {0.5, 0.9, 0.99})
      CHECK(select_spirallike(f, cands, Operator::identity(2), r, sample) == 0);
  }
  SUBCASE("failing candidates exhaust") {
    const auto cands = repeat(shear_word(3.0), 3);
    CHECK(!select_spirallike(f, cands, Operator::identity(2), 0.9, sample).has_value());
  }
  SUBCASE("min_index is honored") {
    const auto cands = repeat(shear_word(0.5), 4);
    CHECK(select_spirallike(f, cands, Operator::identity(2), 0.5, sample, 2) == 2);
  }
  SUBCASE("perturbed candidates are admitted") {
    std::vector<AutomorphismWord> cands;
    for (int i = 0; i < 5; ++i)
      cands.push_back(shear_word(0.5 + 1e-3 * (i - 2)));
    for (double r : {0.5, 0.75, 0.99}) {
      const auto k = select_spirallike(f, cands, Operator::identity(2), r, sample);
      REQUIRE(k.has_value());
    }
  }
}

TEST_CASE("select_convex") {
  const BallSample sample = make_sample(2, default_radii(), 200, 400, 11);
  SUBCASE("identity target admits near-identity candidates (delta = 0)") {
    const auto cands = repeat(shear_word(0.05), 2);
    CHECK(select_convex(PolyMap::identity(2), cands, 0.5, sample) == 0);
  }
  SUBCASE("shear 0.4 at r = 0.9: delta ~ 0.72, the target itself is admitted") {
    const PolyMap f = shear2(0.4);
    const double delta = compute_delta(f, 0.9).value;
    CHECK(delta == doctest::Approx(0.72).epsilon(1e-4));
    const auto cands = repeat(shear_word(0.4), 2);
    CHECK(select_convex(f, cands, 0.9, sample) == 0);
  }
  SUBCASE("candidate with discrepancy above 1 - delta is rejected") {
    const PolyMap f = shear2(0.4);
    // discrepancy between shear a and shear b is 2|a-b| max(|z1|, ...) ~ 2|a-b| r
    const auto cands = repeat(shear_word(-0.4), 1);  // discrepancy ~ 1.6 r > 0.28
    CHECK(!select_convex(f, cands, 0.9, sample).has_value());
  }
}

TEST_CASE("select_q") {
  const BallSample sample = make_sample(2, default_radii(), 300, 0, 13);
  const PolyMap f = to_polymap(bump_word(0.4));
  SUBCASE("candidate = target admitted at any r") {
    for (double r : {0.5, 0.9}) {
      CHECK(select_q(f, repeat(bump_word(0.4), 2), r, sample) == 0);
    }
  }
  SUBCASE("perturbed coefficient 0.45 admitted at r = 0.9 (bound 0.81 <= 0.95)") {
    CHECK(select_q(f, repeat(bump_word(0.45), 2), 0.9, sample) == 0);
  }
  SUBCASE("overlarge candidate rejected") {
    // ||D psi(0.9 z) - I|| reaches 2 * 0.6 * 0.9 = 1.08 > 0.95
    CHECK(!select_q(f, repeat(bump_word(0.6), 1), 0.9, sample).has_value());
  }
}

TEST_CASE("select_qtilde") {
  const PolyMap f = to_polymap(bump_word(0.25));
  SUBCASE("candidate = target: distance 0, admitted, dilation re-verified") {
    for (double r : {1.0 / 3.0, 0.5, 0.9}) {
      const auto k = select_qtilde(f, repeat(bump_word(0.25), 2), r);
      REQUIRE(k.has_value());
      const CriterionReport rep = qtilde_test(dilate(f, r));
      CHECK(rep.min_margin >= (1.0 - r) / 2.0 - 1e-9);
    }
  }
  SUBCASE("distant candidate rejected") {
    // sup distance |0.25 - 0.05| max |z1|^2 on the probe sphere exceeds eps(r)
    const auto k = select_qtilde(f, repeat(bump_word(0.05), 1), 0.5);
    CHECK(!k.has_value());
  }
}

TEST_CASE("run_approximation: exact distance law for the repeated shear") {
  const double a = 0.5;
  const PolyMap f = shear2(a);
  const DilationSchedule schedule = DilationSchedule::defaults();
  const std::vector<double> test_radii{0.25, 0.5, 0.75, 0.9};
  const ApproximationRun run = run_approximation(
      f, repeat(shear_word(a), 12), ApproxCriterion::starlike(), schedule, test_radii);

  REQUIRE(run.selections.size() == 10);
  int prev = -1;
  for (std::size_t mi = 0; mi < run.selections.size(); ++mi) {
    const Selection& sel = run.selections[mi];
    REQUIRE(sel.index.has_value());
    CHECK(*sel.index > prev);  // strictly increasing index chain
    prev = *sel.index;
    CHECK(sel.margin > 0.0);
    const double r = schedule.radii[mi];
    for (std::size_t ti = 0; ti < test_radii.size(); ++ti) {
      const double rho = test_radii[ti];
      const double expected = a * (1.0 - r) * rho * rho;
      CHECK(std::abs(run.distances[mi][ti] - expected) <= 1e-10);
    }
  }
  // convergence: distance at rho = 0.5 decreases below 1e-3 by m = 10
  CHECK(run.distances[9][1] < 1e-3);
  CHECK(run.distances[0][1] == doctest::Approx(0.0625).epsilon(1e-10));
}

TEST_CASE("run_approximation: empty candidates record no-admissible-index") {
  const ApproximationRun run =
      run_approximation(shear2(0.3), {}, ApproxCriterion::starlike(),
                        DilationSchedule::defaults(3), {0.5});
  for (const Selection& sel : run.selections) {
    CHECK(!sel.index.has_value());
    CHECK(sel.note == "no-admissible-index");
  }
}

TEST_CASE("run_approximation: sector criterion with margin bookkeeping") {
  const ApproximationRun run = run_approximation(
      shear2(0.5), repeat(shear_word(0.5), 6),
      ApproxCriterion::gstar(GRegion::sector_of_order(0.5)), DilationSchedule::defaults(4),
      {0.5});
  for (const Selection& sel : run.selections) {
    REQUIRE(sel.index.has_value());
    CHECK(sel.margin > 0.0);
  }
}

TEST_CASE("run_approximation: target must pass the criterion") {
  CHECK_THROWS_AS(run_approximation(shear2(3.0), repeat(shear_word(0.5), 2),
                                    ApproxCriterion::starlike(),
                                    DilationSchedule::defaults(2), {0.5}),
                  Error);
}

TEST_CASE("dilation stability across the schedule for passing examples") {
  const DilationSchedule schedule = DilationSchedule::defaults(8);
  const BallSample sample = make_sample(2, default_radii(), 150, 300, 17);
  const PolyMap star = shear2(0.5);
  const PolyMap conv = shear2(0.4);
  const PolyMap qmem = to_polymap(bump_word(0.4));
  REQUIRE(starlike_test(star, sample).passed());
  REQUIRE(convexity_test(conv, sample).passed());
  REQUIRE(q_class_test(qmem, sample).passed());
  for (double r : schedule.radii) {
    CHECK(starlike_test(dilate(star, r), sample).passed());
    CHECK(convexity_test(dilate(conv, r), sample).passed());
    CHECK(q_class_test(dilate(qmem, r), sample).passed());
    CHECK(qtilde_test(dilate(qmem, r)).passed());
  }
}

TEST_CASE("builtin candidate generators") {
  const AutomorphismWord two_term = [] {
    AutomorphismWord w;
    w.dim = 2;
    w.factors.push_back(
        ShearFactor::shear(2, 0, {make_term({0, 2}, 0.1), make_term({0, 3}, 0.05)}));
    w.normalized = true;
    return w;
  }();

  SUBCASE("truncations re-close into shear words of growing degree") {
    const auto cands = ballchain::builtin::truncated_candidates(two_term, 3);
    REQUIRE(cands.size() == 3);
    CHECK(to_polymap(cands[0]).max_degree() == 2);
    CHECK(to_polymap(cands[1]) == to_polymap(two_term));
    CHECK(to_polymap(cands[2]) == to_polymap(two_term));
  }
  SUBCASE("perturbations stay normalized and close to the source") {
    const auto cands = ballchain::builtin::perturbed_candidates(two_term, 1e-3, 4, 99);
    REQUIRE(cands.size() == 4);
    for (const auto& c : cands) {
      CHECK(c.normalized);
      const PolyMap diff = to_polymap(c) - to_polymap(two_term);
      CHECK(sup_norm_on_sphere(diff, 0.9).value < 5e-3);
    }
  }
  SUBCASE("truncations plus perturbations feed a selection run") {
    const PolyMap f = to_polymap(two_term);
    auto cands = ballchain::builtin::truncated_candidates(two_term, 2);
    const auto extra = ballchain::builtin::perturbed_candidates(two_term, 1e-5, 4, 7);
    cands.insert(cands.end(), extra.begin(), extra.end());
    const ApproximationRun run =
        run_approximation(f, cands, ApproxCriterion::qtilde(),
                          DilationSchedule::defaults(3), {0.5});
    for (const Selection& sel : run.selections) CHECK(sel.index.has_value());
  }
}
