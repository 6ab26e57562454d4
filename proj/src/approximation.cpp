#include "ballchain/approximation.hpp"

#include <cmath>
#include <limits>

namespace ballchain {

DilationSchedule DilationSchedule::defaults(int count) {
  DilationSchedule s;
  for (int m = 1; m <= count; ++m) s.radii.push_back(1.0 - std::pow(2.0, -m));
  return s;
}

void DilationSchedule::validate() const {
  if (radii.empty()) throw Error(Errc::invalid_input, "empty dilation schedule");
  double prev = 0.0;
  for (double r : radii) {
    if (!(r > prev && r < 1.0))
      throw Error(Errc::invalid_input,
                  "dilation schedule must be strictly increasing inside (0,1)");
    prev = r;
  }
}

ApproxCriterion ApproxCriterion::spirallike(Operator a) {
  ApproxCriterion c;
  c.kind = ApproxKind::spirallike;
  c.a = std::move(a);
  return c;
}
ApproxCriterion ApproxCriterion::starlike() { return ApproxCriterion{ApproxKind::starlike, {}, {}}; }
ApproxCriterion ApproxCriterion::gstar(GRegion region) {
  ApproxCriterion c;
  c.kind = ApproxKind::gstar;
  c.region = region;
  return c;
}
ApproxCriterion ApproxCriterion::convex() { return ApproxCriterion{ApproxKind::convex, {}, {}}; }
ApproxCriterion ApproxCriterion::q() { return ApproxCriterion{ApproxKind::q, {}, {}}; }
ApproxCriterion ApproxCriterion::qtilde() { return ApproxCriterion{ApproxKind::qtilde, {}, {}}; }
ApproxCriterion ApproxCriterion::ktilde() { return ApproxCriterion{ApproxKind::ktilde, {}, {}}; }

std::string ApproxCriterion::name() const {
  switch (kind) {
    case ApproxKind::spirallike: return "spirallike";
    case ApproxKind::starlike: return "starlike";
    case ApproxKind::gstar: return region ? region->name() : "gstar";
    case ApproxKind::convex: return "convex";
    case ApproxKind::q: return "q";
    case ApproxKind::qtilde: return "qtilde";
    case ApproxKind::ktilde: return "ktilde";
  }
  return "unknown";
}

namespace {

void require_normalized_candidates(const std::vector<AutomorphismWord>& candidates) {
  for (const AutomorphismWord& w : candidates)
    if (!w.normalized)
      throw Error(Errc::precondition_violated, "candidates must be normalized words");
}

std::optional<PolyMap> candidate_polymap(const AutomorphismWord& w) {
  try {
    return to_polymap(w);
  } catch (const Error&) {
    return std::nullopt;  // degree blow-up: candidate is not usable
  }
}

}  // namespace

std::optional<int> select_spirallike(const PolyMap& f,
                                     const std::vector<AutomorphismWord>& candidates,
                                     const Operator& a, double r, const BallSample& sample,
                                     int min_index) {
  require_normalized_candidates(candidates);
  if (!spirallike_test(f, a, sample).passed())
    throw Error(Errc::precondition_violated, "target fails the spirallike test");
  for (int k = std::max(min_index, 0); k < static_cast<int>(candidates.size()); ++k) {
    const auto pm = candidate_polymap(candidates[k]);
    if (!pm) continue;
    if (spirallike_test(dilate(*pm, r), a, sample).passed()) return k;
  }
  return std::nullopt;
}

std::optional<int> select_convex(const PolyMap& f,
                                 const std::vector<AutomorphismWord>& candidates, double r,
                                 const BallSample& sample, int min_index,
                                 const PairSupBudget& pair_budget) {
  require_normalized_candidates(candidates);
  if (!convexity_test(f, sample).passed())
    throw Error(Errc::precondition_violated, "target fails the convexity test");
  const double delta = compute_delta(f, r, pair_budget).value;
  if (delta >= 1.0)
    throw Error(Errc::precondition_violated,
                "target convexity margin vanishes at this radius (delta >= 1)");
  for (int k = std::max(min_index, 0); k < static_cast<int>(candidates.size()); ++k) {
    const auto pm = candidate_polymap(candidates[k]);
    if (!pm) continue;
    const double eps = second_derivative_discrepancy(*pm, f, r, pair_budget).value;
    if (!(eps < 1.0 - delta)) continue;
    if (convexity_test(dilate(*pm, r), sample).passed()) return k;
  }
  return std::nullopt;
}

std::optional<int> select_q(const PolyMap& f,
                            const std::vector<AutomorphismWord>& candidates, double r,
                            const BallSample& sample, int min_index) {
  require_normalized_candidates(candidates);
  if (!q_class_test(f, sample).passed())
    throw Error(Errc::precondition_violated, "target fails the q-class test");
  {
    // Schwarz consequence for members: ||Df(r z) - I|| <= r on the ball.
    const PolyCalculus cf(dilate(f, r));
    const auto margins = q_class_margins(cf, sample.points);
    for (double m : margins)
      if (m < 1.0 - r - 1e-9)
        throw Error(Errc::precondition_violated,
                    "target violates the Schwarz derivative bound at this radius");
  }
  const double threshold = (1.0 + r) / 2.0;
  for (int k = std::max(min_index, 0); k < static_cast<int>(candidates.size()); ++k) {
    const auto pm = candidate_polymap(candidates[k]);
    if (!pm) continue;
    const PolyMap dilated = dilate(*pm, r);
    const PolyCalculus calc(dilated);
    const auto margins = q_class_margins(calc, sample.points);
    auto [mn, idx] = min_with_index(margins);
    (void)idx;
    if (mn >= 1.0 - threshold && q_class_test(dilated, sample).passed()) return k;
  }
  return std::nullopt;
}

double series_sum_k_xk(double x) {
  if (!(std::abs(x) < 1.0)) throw Error(Errc::range_error, "series requires |x| < 1");
  return x * x * (2.0 - x) / ((1.0 - x) * (1.0 - x));
}

double series_sum_k2_xk(double x) {
  if (!(std::abs(x) < 1.0)) throw Error(Errc::range_error, "series requires |x| < 1");
  return x * x * (4.0 - 3.0 * x + x * x) / ((1.0 - x) * (1.0 - x) * (1.0 - x));
}

double qtilde_distance_budget(double r) {
  if (!(r > 0.0 && r < 1.0))
    throw Error(Errc::invalid_input, "distance budget requires r in (0,1)");
  const double x = 2.0 * r / (1.0 + r);
  return r * (1.0 - r) / (2.0 * series_sum_k_xk(x));
}

std::optional<int> select_qtilde(const PolyMap& f,
                                 const std::vector<AutomorphismWord>& candidates, double r,
                                 int min_index, const SupNormBudget& budget) {
  require_normalized_candidates(candidates);
  if (!(r > 0.0 && r < 1.0)) throw Error(Errc::invalid_input, "r must lie in (0,1)");
  if (qtilde_test(f, budget).verdict == Verdict::fail)
    throw Error(Errc::precondition_violated, "target fails the qtilde test");
  const double eps = qtilde_distance_budget(r);
  const double probe_radius = (1.0 + r) / 2.0;
  for (int k = std::max(min_index, 0); k < static_cast<int>(candidates.size()); ++k) {
    const auto pm = candidate_polymap(candidates[k]);
    if (!pm || pm->dim() != f.dim()) continue;
    const double dist = sup_norm_on_sphere(*pm - f, probe_radius, budget).value;
    if (!(dist <= eps)) continue;
    if (qtilde_test(dilate(*pm, r), budget).verdict != Verdict::fail) return k;
  }
  return std::nullopt;
}

namespace {

CriterionReport verify_criterion(const PolyMap& map, const ApproxCriterion& criterion,
                                 const BallSample& sample, const ApproxOptions& options) {
  switch (criterion.kind) {
    case ApproxKind::spirallike:
      return spirallike_test(map, *criterion.a, sample);
    case ApproxKind::starlike:
      return starlike_test(map, sample);
    case ApproxKind::gstar:
      return g_starlike_test(map, *criterion.region, sample);
    case ApproxKind::convex:
      return convexity_test(map, sample);
    case ApproxKind::q:
      return q_class_test(map, sample);
    case ApproxKind::qtilde:
      return qtilde_test(map, options.sup);
    case ApproxKind::ktilde:
      return ktilde_test(map, options.sup);
  }
  throw Error(Errc::internal_inconsistency, "unknown criterion kind");
}

std::optional<int> select_for(const PolyMap& f,
                              const std::vector<AutomorphismWord>& candidates,
                              const ApproxCriterion& criterion, double r,
                              const BallSample& sample, int min_index,
                              const ApproxOptions& options) {
  switch (criterion.kind) {
    case ApproxKind::spirallike:
      return select_spirallike(f, candidates, *criterion.a, r, sample, min_index);
    case ApproxKind::starlike:
      return select_spirallike(f, candidates, Operator::identity(f.dim()), r, sample,
                               min_index);
    case ApproxKind::convex:
      return select_convex(f, candidates, r, sample, min_index, options.pair);
    case ApproxKind::q:
      return select_q(f, candidates, r, sample, min_index);
    case ApproxKind::qtilde:
      return select_qtilde(f, candidates, r, min_index, options.sup);
    case ApproxKind::gstar:
    case ApproxKind::ktilde: {
      // Margin-bookkeeping selector: admit the first dilation that passes
      // the criterion itself.
      if (verify_criterion(f, criterion, sample, options).verdict == Verdict::fail)
        throw Error(Errc::precondition_violated, "target fails the criterion");
      for (int k = std::max(min_index, 0); k < static_cast<int>(candidates.size()); ++k) {
        const auto pm = candidate_polymap(candidates[k]);
        if (!pm) continue;
        if (verify_criterion(dilate(*pm, r), criterion, sample, options).passed()) return k;
      }
      return std::nullopt;
    }
  }
  throw Error(Errc::internal_inconsistency, "unknown criterion kind");
}

}  // namespace

ApproximationRun run_approximation(const PolyMap& f,
                                   const std::vector<AutomorphismWord>& candidates,
                                   const ApproxCriterion& criterion,
                                   const DilationSchedule& schedule,
                                   const std::vector<double>& test_radii,
                                   const ApproxOptions& options) {
  schedule.validate();
  for (const AutomorphismWord& w : candidates)
    if (w.dim != f.dim()) throw Error(Errc::invalid_input, "candidate dimension mismatch");

  const bool needs_tangents = criterion.kind == ApproxKind::convex;
  const BallSample sample = make_sample(f.dim(), options.radii, options.per_sphere,
                                        needs_tangents ? options.per_sphere : 0,
                                        options.seed);
  std::vector<AutomorphismWord> normalized;
  normalized.reserve(candidates.size());
  for (const AutomorphismWord& w : candidates)
    normalized.push_back(w.normalized ? w : normalize(w));

  if (CriterionReport target = verify_criterion(f, criterion, sample, options);
      target.verdict == Verdict::fail)
    throw CriterionFailure(std::move(target), "target fails the requested criterion");

  ApproximationRun run;
  run.criterion = criterion.name();
  run.schedule = schedule.radii;
  run.test_radii = test_radii;

  int prev = -1;
  for (std::size_t mi = 0; mi < schedule.radii.size(); ++mi) {
    const double r = schedule.radii[mi];
    Selection sel;
    sel.m = static_cast<int>(mi) + 1;
    sel.r = r;
    std::vector<double> dist(test_radii.size(), std::numeric_limits<double>::quiet_NaN());
    std::optional<int> pick;
    try {
      pick = select_for(f, normalized, criterion, r, sample, prev + 1, options);
    } catch (const Error& e) {
      sel.note = e.what();
    }
    if (pick) {
      sel.index = *pick;
      prev = *pick;
      const PolyMap phi = dilate(to_polymap(normalized[*pick]), r);
      const CriterionReport report = verify_criterion(phi, criterion, sample, options);
      sel.margin = report.min_margin;
      if (!report.passed()) sel.note = "re-verification did not pass";
      const PolyMap diff = phi - f;
      for (std::size_t ti = 0; ti < test_radii.size(); ++ti)
        dist[ti] = sup_norm_on_sphere(diff, test_radii[ti], options.sup).value;
    } else if (sel.note.empty()) {
      sel.note = "no-admissible-index";
    }
    run.selections.push_back(std::move(sel));
    run.distances.push_back(std::move(dist));
  }
  return run;
}

}  // namespace ballchain
