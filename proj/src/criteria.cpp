#include "ballchain/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ballchain {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string format_alpha(double alpha) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

}  // namespace

GRegion GRegion::half_plane() { return GRegion{Kind::half_plane, 0.0}; }

GRegion GRegion::disk_of_order(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(Errc::invalid_input, "disk order requires alpha in (0,1)");
  return GRegion{Kind::disk_of_order, alpha};
}

GRegion GRegion::sector_of_order(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(Errc::invalid_input, "sector order requires alpha in (0,1]");
  return GRegion{Kind::sector_of_order, alpha};
}

double GRegion::margin(cdouble q) const {
  switch (kind) {
    case Kind::half_plane:
      return q.real();
    case Kind::disk_of_order: {
      const double c = 1.0 / (2.0 * alpha);
      return c - std::abs(q - c);
    }
    case Kind::sector_of_order:
      return alpha * kPi / 2.0 - std::abs(std::arg(q));
  }
  return kNegInf;
}

std::string GRegion::name() const {
  switch (kind) {
    case Kind::half_plane: return "gstar-halfplane";
    case Kind::disk_of_order: return "gstar-disk(alpha=" + format_alpha(alpha) + ")";
    case Kind::sector_of_order: return "gstar-sector(alpha=" + format_alpha(alpha) + ")";
  }
  return "gstar";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::boundary: return "boundary";
  }
  return "unknown";
}

std::vector<double> caratheodory_margins(const PolyCalculus& h,
                                         const std::vector<CVector>& points, Exec mode) {
  std::vector<double> out(points.size());
  run_indexed(mode, points.size(), [&](std::size_t i) {
    out[i] = inner(h.value(points[i]), points[i]).real();
  });
  return out;
}

std::vector<double> growth_margins(const PolyCalculus& h, double m, double k, double vr,
                                   const std::vector<CVector>& points, Exec mode) {
  std::vector<double> out(points.size());
  run_indexed(mode, points.size(), [&](std::size_t i) {
    const CVector& z = points[i];
    const double r = norm(z);
    const CVector hz = h.value(z);
    const double re = inner(hz, z).real();
    const double lower = m * r * r * (1.0 - r) / (1.0 + r);
    const double upper = k * r * r * (1.0 + r) / (1.0 - r);
    const double bound = 4.0 * r / ((1.0 - r) * (1.0 - r)) * vr;
    out[i] = std::min({re - lower, upper - re, bound - norm(hz)});
  });
  return out;
}

std::vector<double> spirallike_margins(const PolyCalculus& f, const CMatrix& a,
                                       const std::vector<CVector>& points, Exec mode) {
  std::vector<double> out(points.size());
  run_indexed(mode, points.size(), [&](std::size_t i) {
    const CVector& z = points[i];
    try {
      const CVector h = solve(f.jacobian_at(z), a * f.value(z));
      out[i] = inner(h, z).real();
    } catch (const Error&) {
      out[i] = kNegInf;
    }
  });
  return out;
}

std::vector<double> g_starlike_margins(const PolyCalculus& f, const GRegion& region,
                                       const std::vector<CVector>& points, Exec mode) {
  std::vector<double> out(points.size());
  run_indexed(mode, points.size(), [&](std::size_t i) {
    const CVector& z = points[i];
    try {
      const CVector u = solve(f.jacobian_at(z), f.value(z));
      out[i] = region.margin(inner(u, z) / norm_sq(z));
    } catch (const Error&) {
      out[i] = kNegInf;
    }
  });
  return out;
}

std::vector<double> convexity_margins(const PolyCalculus& f,
                                      const std::vector<TangentPair>& pairs, Exec mode) {
  std::vector<double> out(pairs.size());
  run_indexed(mode, pairs.size(), [&](std::size_t i) {
    const TangentPair& p = pairs[i];
    try {
      const CVector u = solve(f.jacobian_at(p.z), f.second_directional(p.z, p.v));
      out[i] = 1.0 - inner(u, p.z).real();
    } catch (const Error&) {
      out[i] = kNegInf;
    }
  });
  return out;
}

std::vector<double> q_class_margins(const PolyCalculus& f,
                                    const std::vector<CVector>& points, Exec mode) {
  std::vector<double> out(points.size());
  const int n = f.map().dim();
  run_indexed(mode, points.size(), [&](std::size_t i) {
    const CMatrix d = f.jacobian_at(points[i]) - CMatrix::identity(n);
    out[i] = 1.0 - operator_norm(d);
  });
  return out;
}

namespace {

CriterionReport structural_fail(std::string name, std::string reason) {
  CriterionReport r;
  r.criterion = std::move(name);
  r.verdict = Verdict::fail;
  r.min_margin = std::numeric_limits<double>::quiet_NaN();
  r.reason = std::move(reason);
  return r;
}

Verdict classify(double min_margin) {
  if (std::abs(min_margin) <= kCritTol) return Verdict::boundary;
  return min_margin < 0.0 ? Verdict::fail : Verdict::pass;
}

CriterionReport point_report(std::string name, const std::vector<double>& margins,
                             const BallSample& s) {
  CriterionReport r;
  r.criterion = std::move(name);
  r.sample_count = static_cast<int>(margins.size());
  r.radii = s.radii;
  auto [mn, idx] = min_with_index(margins);
  r.min_margin = mn;
  r.witness = s.points[idx];
  if (mn == kNegInf) {
    r.verdict = Verdict::fail;
    r.reason = "singular-jacobian";
    return r;
  }
  r.verdict = classify(mn);
  return r;
}

CriterionReport pair_report(std::string name, const std::vector<double>& margins,
                            const BallSample& s) {
  CriterionReport r;
  r.criterion = std::move(name);
  r.sample_count = static_cast<int>(margins.size());
  r.radii = s.radii;
  auto [mn, idx] = min_with_index(margins);
  r.min_margin = mn;
  r.witness = s.tangent_pairs[idx].z;
  r.witness_tangent = s.tangent_pairs[idx].v;
  if (mn == kNegInf) {
    r.verdict = Verdict::fail;
    r.reason = "singular-jacobian";
    return r;
  }
  r.verdict = classify(mn);
  return r;
}

// h(0) = 0 and Dh(0) = A, checked exactly on stored coefficients.
std::string check_linear_part(const PolyMap& h, const CMatrix& a) {
  const int n = h.dim();
  for (int i = 0; i < n; ++i) {
    for (const Term& t : h.coord(i))
      if (t.exp.degree() == 0) return "normalization: h(0) != 0";
    for (int j = 0; j < n; ++j) {
      MultiIndex ej;
      ej.exponents.assign(n, 0);
      ej.exponents[j] = 1;
      if (h.coefficient(i, ej) != a(i, j)) return "normalization: Dh(0) != A";
    }
  }
  return {};
}

void require_dims(const PolyMap& f, const BallSample& s) {
  if (f.dim() != s.dim)
    throw Error(Errc::invalid_input, "map and sample dimensions differ");
  if (s.points.empty())
    throw Error(Errc::invalid_input, "criterion sample has no points");
}

void require_normalized(const PolyMap& f) {
  if (!f.is_normalized())
    throw Error(Errc::precondition_violated, "criterion requires a normalized map");
}

}  // namespace

CriterionReport caratheodory_test(const PolyMap& h, const Operator& a,
                                  const BallSample& s) {
  require_dims(h, s);
  if (a.dim() != h.dim())
    throw Error(Errc::invalid_input, "operator and map dimensions differ");
  if (std::string why = check_linear_part(h, a.entries); !why.empty())
    return structural_fail("caratheodory", std::move(why));
  const PolyCalculus calc(h);
  return point_report("caratheodory", caratheodory_margins(calc, s.points), s);
}

CriterionReport verify_growth_bounds(const PolyMap& h, const Operator& a,
                                     const BallSample& s) {
  require_dims(h, s);
  if (std::string why = check_linear_part(h, a.entries); !why.empty())
    return structural_fail("growth-bounds", std::move(why));
  auto [m, k] = numerical_range_extrema(a);
  const double vr = numerical_radius(a);
  const PolyCalculus calc(h);
  return point_report("growth-bounds", growth_margins(calc, m, k, vr, s.points), s);
}

CriterionReport spirallike_test(const PolyMap& f, const Operator& a,
                                const BallSample& s) {
  require_dims(f, s);
  require_normalized(f);  // Df(0) = I forces Dh(0) = A for h = Df^{-1}Af
  auto [m, k] = numerical_range_extrema(a);
  (void)k;
  if (!(m > 0.0))
    throw Error(Errc::precondition_violated, "spirallike test requires m(A) > 0");
  const PolyCalculus calc(f);
  return point_report("spirallike", spirallike_margins(calc, a.entries, s.points), s);
}

CriterionReport starlike_test(const PolyMap& f, const BallSample& s) {
  CriterionReport r = spirallike_test(f, Operator::identity(f.dim()), s);
  r.criterion = "starlike";
  return r;
}

CriterionReport g_starlike_test(const PolyMap& f, const GRegion& region,
                                const BallSample& s) {
  require_dims(f, s);
  require_normalized(f);
  const PolyCalculus calc(f);
  return point_report(region.name(), g_starlike_margins(calc, region, s.points), s);
}

CriterionReport convexity_test(const PolyMap& f, const BallSample& s) {
  require_dims(f, s);
  require_normalized(f);
  if (s.tangent_pairs.empty())
    throw Error(Errc::invalid_input, "convexity test needs tangent pairs in the sample");
  const PolyCalculus calc(f);
  return pair_report("convex", convexity_margins(calc, s.tangent_pairs), s);
}

CriterionReport q_class_test(const PolyMap& f, const BallSample& s) {
  require_dims(f, s);
  require_normalized(f);
  const PolyCalculus calc(f);
  return point_report("q", q_class_margins(calc, s.points), s);
}

namespace {

CriterionReport series_report(const char* name, const PolyMap& f,
                              const SupNormBudget& budget, bool squared_weights) {
  require_normalized(f);
  const HomogeneousExpansion ex = homogeneous_parts(f, budget);
  double sum = 0.0, dominant = -1.0;
  std::size_t dominant_idx = 0;
  for (std::size_t i = 0; i < ex.degrees.size(); ++i) {
    const double k = ex.degrees[i];
    const double w = squared_weights ? k * k : k;
    const double c = w * ex.norm_estimates[i].value;
    sum += c;
    if (c > dominant) {
      dominant = c;
      dominant_idx = i;
    }
  }
  CriterionReport r;
  r.criterion = name;
  r.min_margin = 1.0 - sum;
  r.sample_count = budget.samples;
  r.verdict = classify(r.min_margin);
  if (!ex.degrees.empty())
    r.witness = ex.norm_estimates[dominant_idx].witness;
  return r;
}

}  // namespace

CriterionReport qtilde_test(const PolyMap& f, const SupNormBudget& budget) {
  return series_report("qtilde", f, budget, false);
}

CriterionReport ktilde_test(const PolyMap& f, const SupNormBudget& budget) {
  CriterionReport r = series_report("ktilde", f, budget, true);
  if (r.verdict != Verdict::fail) {
    // (cv1) forces sum k||A_k|| <= 1/2; both sums use the same estimates.
    const CriterionReport q = series_report("qtilde", f, budget, false);
    if (q.min_margin < 0.5 - kCritTol)
      throw Error(Errc::internal_inconsistency,
                  "ktilde member with sum k||A_k|| above 1/2");
  }
  return r;
}

namespace {

using PairObjective = std::function<double(const CVector&, const CVector&)>;

struct PairState {
  CVector z;
  CVector v;
};

void project_pair(PairState& p, double r, bool tangent) {
  const double nz = norm(p.z);
  if (nz > r) {
    const double f = r / nz;
    for (auto& c : p.z) c *= f;
  }
  if (tangent && norm_sq(p.z) > 1e-30) {
    const double proj = inner(p.v, p.z).real() / norm_sq(p.z);
    for (std::size_t j = 0; j < p.v.size(); ++j) p.v[j] -= proj * p.z[j];
  }
  const double nv = norm(p.v);
  if (nv > 1e-300)
    for (auto& c : p.v) c /= nv;
}

DeltaEstimate pair_sup(int dim, double r, bool tangent, const PairObjective& objective,
                       const PairSupBudget& budget) {
  std::vector<PairState> candidates;

  // Structured seeds: axis points with phase-rotated axis tangents.
  const cdouble phases[4] = {{1.0, 0.0},
                             {std::sqrt(0.5), std::sqrt(0.5)},
                             {0.0, 1.0},
                             {-std::sqrt(0.5), std::sqrt(0.5)}};
  for (int j = 0; j < dim; ++j) {
    CVector z(dim, cdouble{0.0, 0.0});
    z[j] = r;
    for (int k = 0; k < dim; ++k) {
      if (tangent && k == j) continue;
      for (const cdouble& ph : phases) {
        CVector v(dim, cdouble{0.0, 0.0});
        v[k] = ph;
        candidates.push_back(PairState{z, v});
      }
    }
    if (tangent) {
      CVector v(dim, cdouble{0.0, 0.0});
      v[j] = cdouble{0.0, 1.0};  // Re<z, i e_j> = 0
      candidates.push_back(PairState{z, v});
    }
  }

  DirectionStream zs(dim, budget.seed);
  DirectionStream vs(dim, budget.seed ^ 0xF00DULL);
  const double factors[4] = {1.0, 1.0, 0.75, 0.5};
  for (int i = 0; i < budget.samples; ++i) {
    PairState p;
    p.z = zs.next();
    const double f = r * factors[i % 4];
    for (auto& c : p.z) c *= f;
    p.v = vs.next();
    project_pair(p, r, tangent);
    if (norm(p.v) < 0.5) continue;  // degenerate tangent projection
    candidates.push_back(std::move(p));
  }

  std::vector<double> values(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) {
    values[i] = objective(candidates[i].z, candidates[i].v);
  });

  DeltaEstimate est;
  auto [best, best_idx] = max_with_index(values);
  est.sampled = best;
  est.value = best;

  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t starts =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(budget.restarts, 0)),
                            order.size());
  std::partial_sort(order.begin(), order.begin() + starts, order.end(),
                    [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  const double h = 1e-6;
  for (std::size_t s = 0; s < starts; ++s) {
    PairState p = candidates[order[s]];
    double fp = objective(p.z, p.v);
    if (fp == kNegInf) continue;
    double step = 0.25 * r;
    for (int it = 0; it < budget.iters && step > 1e-12; ++it) {
      // Central finite-difference gradient over all real coordinates.
      PairState g;
      g.z.assign(dim, cdouble{0.0, 0.0});
      g.v.assign(dim, cdouble{0.0, 0.0});
      bool bad = false;
      auto probe = [&](PairState& q, int idx, bool imag, bool of_v) -> double {
        PairState t = p;
        CVector& target = of_v ? t.v : t.z;
        target[idx] += imag ? cdouble{0.0, h} : cdouble{h, 0.0};
        const double plus = objective(t.z, t.v);
        target[idx] -= imag ? cdouble{0.0, 2 * h} : cdouble{2 * h, 0.0};
        const double minus = objective(t.z, t.v);
        (void)q;
        if (plus == kNegInf || minus == kNegInf) bad = true;
        return (plus - minus) / (2.0 * h);
      };
      for (int j = 0; j < dim && !bad; ++j) {
        g.z[j] = cdouble{probe(p, j, false, false), probe(p, j, true, false)};
        g.v[j] = cdouble{probe(p, j, false, true), probe(p, j, true, true)};
      }
      if (bad) break;
      const double gn = std::sqrt(norm_sq(g.z) + norm_sq(g.v));
      if (gn < 1e-14) break;
      bool improved = false;
      while (step > 1e-12) {
        PairState q = p;
        for (int j = 0; j < dim; ++j) {
          q.z[j] += step * g.z[j] / gn;
          q.v[j] += step * g.v[j] / gn;
        }
        project_pair(q, r, tangent);
        const double fq = norm(q.v) > 0.5 ? objective(q.z, q.v) : kNegInf;
        if (fq > fp) {
          p = std::move(q);
          fp = fq;
          improved = true;
          step = std::min(0.25 * r, step * 1.3);
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    est.value = std::max(est.value, fp);
  }
  est.refinement_gap = est.value - est.sampled;
  return est;
}

}  // namespace

DeltaEstimate compute_delta(const PolyMap& f, double r, const PairSupBudget& budget) {
  if (!(r > 0.0 && r < 1.0))
    throw Error(Errc::invalid_input, "compute_delta requires r in (0,1)");
  require_normalized(f);
  const PolyCalculus calc(f);
  auto objective = [&](const CVector& z, const CVector& v) -> double {
    try {
      const CVector u = solve(calc.jacobian_at(z), calc.second_directional(z, v));
      return inner(u, z).real();
    } catch (const Error&) {
      return kNegInf;
    }
  };
  DeltaEstimate est = pair_sup(f.dim(), r, true, objective, budget);
  // The expression vanishes at v fixed, z = 0, so the sup is never negative.
  est.value = std::max(est.value, 0.0);
  est.sampled = std::max(est.sampled, 0.0);
  est.refinement_gap = est.value - est.sampled;
  return est;
}

DeltaEstimate second_derivative_discrepancy(const PolyMap& g, const PolyMap& f, double r,
                                            const PairSupBudget& budget) {
  if (g.dim() != f.dim()) throw Error(Errc::invalid_input, "dimension mismatch");
  const PolyCalculus cg(g);
  const PolyCalculus cf(f);
  auto objective = [&](const CVector& z, const CVector& v) -> double {
    try {
      const CVector ug = solve(cg.jacobian_at(z), cg.second_directional(z, v));
      const CVector uf = solve(cf.jacobian_at(z), cf.second_directional(z, v));
      return distance(ug, uf);
    } catch (const Error&) {
      return kNegInf;
    }
  };
  DeltaEstimate est = pair_sup(f.dim(), r, false, objective, budget);
  est.value = std::max(est.value, 0.0);
  est.sampled = std::max(est.sampled, 0.0);
  est.refinement_gap = est.value - est.sampled;
  return est;
}

}  // namespace ballchain
