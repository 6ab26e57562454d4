#include "ballchain/suite.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "ballchain/approximation.hpp"
#include "ballchain/builtin.hpp"
#include "ballchain/criteria.hpp"
#include "ballchain/loewner.hpp"
#include "ballchain/operator_analysis.hpp"
#include "ballchain/oracles.hpp"
#include "ballchain/parallel.hpp"

namespace ballchain {

namespace {

struct Check {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SuiteRng {
  std::uint64_t state;
  double uniform() {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  CMatrix matrix(int n, double scale) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(i, j) = cdouble{uniform(-scale, scale), uniform(-scale, scale)};
    return m;
  }
  CVector unit_vector(int n) {
    CVector z(n);
    double nz = 0.0;
    do {
      for (int i = 0; i < n; ++i) {
        double u1 = std::max(uniform(), 1e-300);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        z[i] = cdouble{r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
      }
      nz = norm(z);
    } while (nz < 1e-12);
    for (auto& c : z) c /= nz;
    return z;
  }
};

// ---------------------------------------------------------------- checks --

// Golden-ratio operator reproduction: m = (1+sqrt5)/4, k+ = (1+sqrt5)/2,
// k+ = 2m, nonresonant.
Check check_golden_profile() {
  Check c;
  const Operator a = builtin::golden_operator();
  const OperatorProfile p = operator_profile(a);
  const double m_expect = (1.0 + std::sqrt(5.0)) / 4.0;
  const double kplus_expect = (1.0 + std::sqrt(5.0)) / 2.0;
  c.require(std::abs(p.m - m_expect) <= 1e-9, "m off: " + fmt(p.m));
  c.require(std::abs(p.kplus - kplus_expect) <= 1e-9, "k+ off: " + fmt(p.kplus));
  c.require(std::abs(p.kplus - 2.0 * p.m) <= 1e-9, "k+ != 2m");
  const ResonanceVerdict v = detect_resonance(p.eigenvalues);
  c.require(v.kind == ResonanceKind::nonresonant, "expected nonresonant");
  c.note("m=" + fmt(p.m) + " k+=" + fmt(p.kplus) + " " + resonance_kind_name(v.kind));
  return c;
}

// diag(1, q): nonresonant for q in {2.5, 3.5, e}; resonant with witness
// lambda_2 = q lambda_1 for q in {2, 3} (exact rational mode).
Check check_resonance_family() {
  Check c;
  for (double q : {2.5, 3.5, std::exp(1.0)}) {
    const ResonanceVerdict v = detect_resonance({1.0, q});
    c.require(v.kind == ResonanceKind::nonresonant,
              "q=" + fmt(q) + " misclassified as resonant");
  }
  for (int q : {2, 3}) {
    const ResonanceVerdict exact = detect_resonance_exact(
        {{Rational(1), Rational(0)}, {Rational(q), Rational(0)}});
    c.require(exact.kind == ResonanceKind::resonant, "exact mode not resonant");
    c.require(exact.witness && exact.witness->s == 2 &&
                  exact.witness->exponents == std::vector<int>{q, 0},
              "wrong exact witness for q=" + std::to_string(q));
    const ResonanceVerdict fl = detect_resonance({1.0, static_cast<double>(q)});
    c.require(fl.kind == ResonanceKind::resonant_within_tolerance,
              "float mode missed q=" + std::to_string(q));
    c.require(fl.witness && fl.witness->s == 2 &&
                  fl.witness->exponents == std::vector<int>{q, 0},
              "wrong float witness for q=" + std::to_string(q));
  }
  c.note("q in {2.5, 3.5, e} nonresonant; q in {2, 3} resonant with witness (q, 0)");
  return c;
}

// 1000 random 2x2/3x3 matrices: the m <= k+ <= |V| <= ||A|| <= 2|V| chain
// within 1e-7 and agreement of (m, k) with the sphere-optimization oracle
// within 1e-4.
Check check_inequality_chain() {
  Check c;
  const int trials = 1000;
  std::vector<int> bad_chain(trials, 0);
  std::vector<double> oracle_gap(trials, 0.0);
  parallel_for(trials, [&](std::size_t i) {
    SuiteRng rng{splitmix64(0xC0FFEE + i)};
    const int n = i % 2 == 0 ? 2 : 3;
    const Operator a{rng.matrix(n, 1.5)};
    OperatorProfile p;
    try {
      p = operator_profile(a);
    } catch (const Error&) {
      bad_chain[i] = 1;
      return;
    }
    const double tau = 1e-7;
    if (!(p.m <= p.kplus + tau && p.kplus <= p.vr + tau && p.vr <= p.opnorm + tau &&
          p.opnorm <= 2.0 * p.vr + tau && p.m <= p.kminus + tau &&
          p.kminus <= p.kplus + tau))
      bad_chain[i] = 1;
    auto [om, ok] = oracle::sphere_range_extrema(a.entries, 100000, 300, 555 + i);
    oracle_gap[i] = std::max(std::abs(p.m - om), std::abs(p.k - ok));
  });
  int bad = 0;
  double worst_gap = 0.0;
  for (int i = 0; i < trials; ++i) {
    bad += bad_chain[i];
    worst_gap = std::max(worst_gap, oracle_gap[i]);
  }
  c.require(bad == 0, std::to_string(bad) + " matrices broke the chain");
  c.require(worst_gap <= 1e-4, "sphere oracle gap " + fmt(worst_gap));
  c.note("1000 matrices, worst oracle gap " + fmt(worst_gap));
  return c;
}

// 50 random operators with m(A) > 0: e^{m t} <= ||e^{tA} u|| <= e^{k t}
// with relative slack 1e-9.
Check check_growth_exp() {
  Check c;
  SuiteRng rng{splitmix64(0xBEEF)};
  double worst_rel = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 2;
    CMatrix base = rng.matrix(n, 1.0);
    Operator a{base};
    auto [m0, k0] = numerical_range_extrema(a);
    (void)k0;
    if (m0 <= 0.05) {
      for (int i = 0; i < n; ++i) base(i, i) += (0.1 - m0);
      a = Operator{base};
    }
    auto [m, k] = numerical_range_extrema(a);
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const CMatrix e = matrix_exp(a, t);
      const double lo = std::exp(m * t), hi = std::exp(k * t);
      for (int i = 0; i < 100; ++i) {
        const double g = norm(e * rng.unit_vector(n));
        worst_rel = std::max(worst_rel, (lo - g) / lo);
        worst_rel = std::max(worst_rel, (g - hi) / hi);
      }
    }
  }
  c.require(worst_rel <= 1e-9, "growth bound violated by " + fmt(worst_rel));
  c.note("worst relative slack " + fmt(worst_rel));
  return c;
}

// Linear-field flow vs the closed form e^{-tA} z: max error <= 1e-8 over
// 100 points, t <= 5.
Check check_linear_flow() {
  Check c;
  double worst = 0.0;
  for (const char* name : {"linear-identity", "linear-golden"}) {
    const Operator a = builtin::get_field(name).a();
    const HerglotzField field(a, {FieldPiece{5.0, LinearGenerator{}}});
    SuiteRng rng{splitmix64(0x11CE)};
    std::vector<CVector> pts;
    for (int i = 0; i < 50; ++i) {
      CVector z = rng.unit_vector(2);
      const double r = 0.9 * std::sqrt(rng.uniform());
      for (auto& w : z) w *= r;
      pts.push_back(std::move(z));
    }
    for (double t : {1.0, 2.5, 5.0}) {
      const CMatrix decay = matrix_exp(a, -t);
      const auto outcomes = flow_batch(field, pts, 0.0, t);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!outcomes[i].result) {
          c.require(false, std::string("flow failed: ") + outcomes[i].error);
          continue;
        }
        worst = std::max(worst, distance(outcomes[i].result->value, decay * pts[i]));
      }
    }
  }
  c.require(worst <= 1e-8, "linear flow error " + fmt(worst));
  c.note("max |flow - e^{-tA}z| = " + fmt(worst));
  return c;
}

// Spirallike conjugation identity and the parametric limit for the
// shear f = (z1 + 0.3 z2^2, z2), A = I.
Check check_spirallike_flow() {
  Check c;
  const PolyMap f = builtin::get_map("shear-0.3");
  const Operator id2 = Operator::identity(2);
  const CVector probe{cdouble{0.28, 0.1}, cdouble{-0.2, 0.31}};
  double worst_sub = 0.0;
  for (double t : {0.5, 1.0, 2.0})
    worst_sub = std::max(worst_sub, subordination_check(f, id2, probe, t));
  c.require(worst_sub <= 1e-8, "subordination residual " + fmt(worst_sub));

  const HerglotzField field(id2, {FieldPiece{20.0, SpirallikeGenerator{f}}});
  SuiteRng rng{splitmix64(0x50B0)};
  double worst_par = 0.0;
  for (int i = 0; i < 20; ++i) {
    CVector z = rng.unit_vector(2);
    const double r = 0.5 * std::sqrt(rng.uniform());
    for (auto& w : z) w *= r;
    const ParametricLimit pl = parametric_limit(field, z, 20.0, 1e-6);
    worst_par = std::max(worst_par, distance(pl.value, eval(f, z)));
    // cross-check against the conjugation closed form at the probe horizon
    const CVector closed = std::exp(8.0) * oracle::shear_flow_closed_form(0.3, z, 8.0);
    const FlowResult fr = flow(field, z, 0.0, 8.0);
    worst_par = std::max(worst_par, distance(std::exp(8.0) * fr.value, closed));
  }
  c.require(worst_par <= 1e-4, "parametric limit error " + fmt(worst_par));
  c.note("subordination " + fmt(worst_sub) + ", parametric " + fmt(worst_par));
  return c;
}

// Semigroup residual <= 1e-7 and monotone norms on every builtin field.
Check check_semigroup_schwarz() {
  Check c;
  double worst_semi = 0.0;
  for (const std::string& name : builtin::field_names()) {
    const HerglotzField field = builtin::get_field(name);
    SuiteRng rng{splitmix64(0x5E51)};
    for (int i = 0; i < 10; ++i) {
      CVector z = rng.unit_vector(field.dim());
      const double r = 0.85 * std::sqrt(rng.uniform());
      for (auto& w : z) w *= r;
      const double T = field.total_time();
      worst_semi = std::max(worst_semi,
                            semigroup_check(field, z, 0.0, 0.4 * T, T));
      worst_semi = std::max(worst_semi,
                            semigroup_check(field, z, 0.1 * T, 0.5 * T, 0.9 * T));
      double prev = norm(z);
      for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        const double cur = norm(flow(field, z, 0.0, frac * T).value);
        if (cur > prev + 1e-9) c.require(false, "norm increased along " + name);
        prev = cur;
      }
    }
  }
  c.require(worst_semi <= 1e-7, "semigroup residual " + fmt(worst_semi));
  c.note("worst semigroup residual " + fmt(worst_semi));
  return c;
}

// ||f(z)|| <= e^{T(k-m)} ||z|| / (1-||z||)^2 for every builtin reachable
// element.
Check check_reachable_growth() {
  Check c;
  for (const std::string& name : builtin::field_names()) {
    const HerglotzField field = builtin::get_field(name);
    auto [m, k] = numerical_range_extrema(field.a());
    const double factor = std::exp(field.total_time() * (k - m));
    SuiteRng rng{splitmix64(0x6EAC)};
    for (int i = 0; i < 25; ++i) {
      CVector z = rng.unit_vector(field.dim());
      const double r = 0.9 * std::sqrt(rng.uniform());
      for (auto& w : z) w *= r;
      const double bound = factor * norm(z) / ((1.0 - norm(z)) * (1.0 - norm(z)));
      const double got = norm(reachable_eval(field, z));
      if (got > bound + 1e-9)
        c.require(false, name + ": " + fmt(got) + " > " + fmt(bound));
    }
  }
  c.note("bound held on all builtin fields");
  return c;
}

// Closed-form margins: the starlike margin of the 0.5-shear on the
// 0.99-sphere against the extremal-configuration oracle
// r^2 - 2 a r^3/(3 sqrt 3), and the convexity floor of the 0.4-shear.
Check check_closed_form_margins() {
  Check c;
  {
    const BallSample s = make_sample(2, {0.99}, 20000, 0, 7);
    const CriterionReport r = starlike_test(builtin::get_map("shear-0.5"), s);
    const double oracle_value =
        0.99 * 0.99 - 2.0 * 0.5 * std::pow(0.99, 3) / (3.0 * std::sqrt(3.0));
    c.require(r.passed(), "starlike verdict " + std::string(verdict_name(r.verdict)));
    c.require(r.min_margin >= oracle_value - 1e-12,
              "margin below the analytic minimum");
    c.require(std::abs(r.min_margin - oracle_value) <= 5e-3,
              "margin " + fmt(r.min_margin) + " vs oracle " + fmt(oracle_value));
    c.note("starlike margin " + fmt(r.min_margin) + " (oracle " + fmt(oracle_value) + ")");
  }
  {
    const PolyMap f = builtin::get_map("shear-0.4");
    const BallSample all = make_sample(2, default_radii(), 64, 2000, 7);
    const CriterionReport r = convexity_test(f, all);
    c.require(r.passed() && r.min_margin >= 0.2 - 1e-12,
              "convexity margin " + fmt(r.min_margin) + " below 0.2");
    const BallSample edge = make_sample(2, {0.99}, 16, 20000, 7);
    const CriterionReport re = convexity_test(f, edge);
    c.require(re.min_margin >= 0.2 - 1e-12, "edge margin below 0.2");
    c.require(re.min_margin <= 0.25,
              "edge margin " + fmt(re.min_margin) + " does not approach 0.2");
    c.note("convexity margin at 0.99: " + fmt(re.min_margin));
  }
  return c;
}

// Class chain: ktilde members pass qtilde with margin >= 1/2 and pass the
// q class; qtilde members pass the q class.
Check check_class_chain() {
  Check c;
  const BallSample s2 = make_sample(2, default_radii(), 300, 0, 31);
  const BallSample s3 = make_sample(3, default_radii(), 300, 0, 31);
  for (const char* name : {"shear-0.15", "two-term-ktilde", "shear3d-0.2"}) {
    const PolyMap f = builtin::get_map(name);
    const CriterionReport kt = ktilde_test(f);
    c.require(kt.passed(), std::string(name) + " failed ktilde");
    const CriterionReport qt = qtilde_test(f);
    c.require(qt.min_margin >= 0.5 - 1e-12,
              std::string(name) + " qtilde margin " + fmt(qt.min_margin) + " < 1/2");
    const CriterionReport q = q_class_test(f, f.dim() == 2 ? s2 : s3);
    c.require(q.passed(), std::string(name) + " failed the q class");
  }
  for (const char* name : {"shear-0.4", "bumpword-0.4", "shear3d-0.2"}) {
    const PolyMap f = builtin::get_map(name);
    const CriterionReport qt = qtilde_test(f);
    c.require(qt.verdict != Verdict::fail, std::string(name) + " failed qtilde");
    const CriterionReport q = q_class_test(f, f.dim() == 2 ? s2 : s3);
    c.require(q.passed(), std::string(name) + " failed the q class");
  }
  c.note("chain held on the builtin example suite");
  return c;
}

// Dilation stability: each criterion's builtin example keeps passing under
// every schedule dilation, with margin no worse than the parent's margin on
// the shrunk radii.
Check check_dilation_stability() {
  Check c;
  const DilationSchedule schedule = DilationSchedule::defaults();
  const BallSample s = make_sample(2, default_radii(), 200, 400, 7);

  struct Case {
    std::string name;
    PolyMap map;
    std::function<CriterionReport(const PolyMap&, const BallSample&)> test;
  };
  const Operator golden = builtin::golden_operator();
  std::vector<Case> cases;
  cases.push_back({"starlike/shear-0.5", builtin::get_map("shear-0.5"),
                   [](const PolyMap& f, const BallSample& ss) { return starlike_test(f, ss); }});
  cases.push_back({"spirallike(golden)/identity", PolyMap::identity(2),
                   [golden](const PolyMap& f, const BallSample& ss) {
                     return spirallike_test(f, golden, ss);
                   }});
  cases.push_back({"gstar-disk(0.5)/shear-0.4", builtin::get_map("shear-0.4"),
                   [](const PolyMap& f, const BallSample& ss) {
                     return g_starlike_test(f, GRegion::disk_of_order(0.5), ss);
                   }});
  cases.push_back({"gstar-sector(0.5)/shear-0.5", builtin::get_map("shear-0.5"),
                   [](const PolyMap& f, const BallSample& ss) {
                     return g_starlike_test(f, GRegion::sector_of_order(0.5), ss);
                   }});
  cases.push_back({"convex/shear-0.4", builtin::get_map("shear-0.4"),
                   [](const PolyMap& f, const BallSample& ss) { return convexity_test(f, ss); }});
  cases.push_back({"q/bumpword-0.4", builtin::get_map("bumpword-0.4"),
                   [](const PolyMap& f, const BallSample& ss) { return q_class_test(f, ss); }});

  for (const Case& cs : cases) {
    const CriterionReport parent = cs.test(cs.map, s);
    c.require(parent.passed(), cs.name + ": parent fails");
    for (double r : schedule.radii) {
      const CriterionReport shrunk = cs.test(cs.map, scale_sample(s, r));
      const CriterionReport dilated = cs.test(dilate(cs.map, r), s);
      c.require(dilated.passed(), cs.name + ": dilation r=" + fmt(r) + " fails");
      c.require(dilated.min_margin >= shrunk.min_margin - 1e-9,
                cs.name + ": margin degraded at r=" + fmt(r));
    }
  }
  // series criteria: margins only improve under dilation
  for (const char* name : {"shear-0.4", "shear-0.15"}) {
    const PolyMap f = builtin::get_map(name);
    const double parent_q = qtilde_test(f).min_margin;
    const double parent_k = ktilde_test(f).min_margin;
    for (double r : schedule.radii) {
      c.require(qtilde_test(dilate(f, r)).min_margin >= parent_q - 1e-12,
                std::string(name) + ": qtilde margin degraded");
      c.require(ktilde_test(dilate(f, r)).min_margin >= parent_k - 1e-12,
                std::string(name) + ": ktilde margin degraded");
    }
  }
  c.note("all schedule dilations pass with no margin loss");
  return c;
}

// Approximation convergence: with candidates = {f} the sup distance at rho
// follows |a| (1 - r_m) rho^2 exactly and decays below 1e-3 by m = 10.
Check check_approximation_convergence() {
  Check c;
  const double a = 0.5;
  const PolyMap f = builtin::get_map("shear-0.5");
  const DilationSchedule schedule = DilationSchedule::defaults();
  const ApproximationRun run = run_approximation(
      f, builtin::repeat_candidates(builtin::shear_word(a), 12),
      ApproxCriterion::starlike(), schedule, {0.25, 0.5, 0.75, 0.9});
  int prev = -1;
  for (std::size_t mi = 0; mi < run.selections.size(); ++mi) {
    const Selection& sel = run.selections[mi];
    if (!sel.index) {
      c.require(false, "no admissible index at m=" + std::to_string(sel.m));
      continue;
    }
    c.require(*sel.index > prev, "index chain not increasing");
    prev = *sel.index;
    const double r = schedule.radii[mi];
    for (std::size_t ti = 0; ti < run.test_radii.size(); ++ti) {
      const double rho = run.test_radii[ti];
      const double expect = a * (1.0 - r) * rho * rho;
      if (std::abs(run.distances[mi][ti] - expect) > 1e-10)
        c.require(false, "distance law broken at m=" + std::to_string(sel.m) +
                             " rho=" + fmt(rho));
    }
  }
  c.require(run.distances[9][1] < 1e-3,
            "final distance " + fmt(run.distances[9][1]) + " not below 1e-3");
  for (std::size_t mi = 1; mi < run.distances.size(); ++mi)
    c.require(run.distances[mi][1] < run.distances[mi - 1][1],
              "distances not decreasing");
  c.note("sup distance at rho=0.5: " + fmt(run.distances[0][1]) + " -> " +
         fmt(run.distances[9][1]));
  return c;
}

// Series budget: closed form of sum k x^k against converged partial sums
// (the 200-term truncation is checked against its analytic tail), and
// select_qtilde admissions whose dilations pass qtilde_test directly.
Check check_qtilde_budget() {
  Check c;
  for (double x : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    const double closed = series_sum_k_xk(x);
    c.require(std::abs(closed - oracle::partial_series_k(x, 2000)) <= 1e-12,
              "closed form off at x=" + fmt(x));
    const double p200 = oracle::partial_series_k(x, 200);
    const double tail =
        pow_int(x, 201) * (201.0 / (1.0 - x) + x / ((1.0 - x) * (1.0 - x)));
    const double slack = 1e-13 * (1.0 + closed);
    c.require(p200 <= closed + slack && closed - p200 <= tail + slack,
              "truncation outside the tail bound at x=" + fmt(x));
  }
  c.require(std::abs(qtilde_distance_budget(1.0 / 3.0) - 2.0 / 27.0) <= 1e-12,
            "eps(1/3) != 2/27");

  const AutomorphismWord w = builtin::get_word("shear-0.25");
  const PolyMap f = to_polymap(w);
  for (double r : {1.0 / 3.0, 0.5, 0.75, 0.9}) {
    const auto k = select_qtilde(f, builtin::repeat_candidates(w, 2), r);
    c.require(k.has_value(), "no admissible candidate at r=" + fmt(r));
    const CriterionReport rep = qtilde_test(dilate(f, r));
    c.require(rep.verdict != Verdict::fail, "dilation failed qtilde at r=" + fmt(r));
    c.require(rep.min_margin >= (1.0 - r) / 2.0 - 1e-9,
              "dilated margin below (1-r)/2 at r=" + fmt(r));
  }
  c.note("closed form, tail bounds and admissions all verified");
  return c;
}

using CheckFn = std::function<Check()>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"01-golden-operator-profile", check_golden_profile},
      {"02-diagonal-resonance-family", check_resonance_family},
      {"03-inequality-chain-random", check_inequality_chain},
      {"04-growth-exp-sweep", check_growth_exp},
      {"05-loewner-linear-exactness", check_linear_flow},
      {"06-spirallike-flow-and-parametric-limit", check_spirallike_flow},
      {"07-semigroup-and-schwarz", check_semigroup_schwarz},
      {"08-reachable-growth-bound", check_reachable_growth},
      {"09-criteria-closed-form-margins", check_closed_form_margins},
      {"10-class-chain", check_class_chain},
      {"11-dilation-stability", check_dilation_stability},
      {"12-approximation-convergence", check_approximation_convergence},
      {"13-qtilde-series-budget", check_qtilde_budget},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

CheckResult run_suite_check(const std::string& name) {
  for (const auto& [check_name, fn] : registry()) {
    if (check_name != name) continue;
    CheckResult result;
    result.name = check_name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Check c = fn();
      result.pass = c.pass;
      result.detail = c.detail;
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    return result;
  }
  throw Error(Errc::usage_error, "unknown suite check: " + name);
}

std::vector<CheckResult> run_suite(const std::string& filter) {
  std::vector<CheckResult> results;
  for (const std::string& name : suite_check_names()) {
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    results.push_back(run_suite_check(name));
  }
  return results;
}

}  // namespace ballchain
