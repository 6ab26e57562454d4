#include "ballchain/loewner.hpp"

#include <cmath>

#include "ballchain/parallel.hpp"

namespace ballchain {

namespace {

constexpr long kMaxSteps = 1'000'000;

}  // namespace

HerglotzField::HerglotzField(Operator a, std::vector<FieldPiece> pieces,
                             const FieldOptions& options)
    : a_(std::move(a)), pieces_(std::move(pieces)) {
  a_.validate();
  auto [m, k] = numerical_range_extrema(a_);
  (void)k;
  if (!(m > 0.0))
    throw Error(Errc::precondition_violated, "Herglotz field requires m(A) > 0");
  if (pieces_.empty())
    throw Error(Errc::invalid_input, "Herglotz field needs at least one piece");

  const BallSample budget =
      make_sample(dim(), options.radii, options.per_sphere, 0, options.seed);
  double t = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const FieldPiece& p = pieces_[i];
    if (!(p.duration > 0.0))
      throw Error(Errc::invalid_input, "piece durations must be positive");
    t += p.duration;
    ends_.push_back(t);
    if (const auto* sg = std::get_if<SpirallikeGenerator>(&p.generator)) {
      if (sg->f.dim() != dim())
        throw Error(Errc::invalid_input, "piece dimension does not match the operator");
      CriterionReport report = spirallike_test(sg->f, a_, budget);
      if (!report.passed())
        throw CriterionFailure(std::move(report),
                               "piece " + std::to_string(i) +
                                   " failed the spirallike membership test");
      calc_.push_back(std::make_shared<PolyCalculus>(sg->f));
    } else {
      calc_.push_back(nullptr);
    }
  }
  total_time_ = t;
}

namespace {

CVector generator_value(const Operator& a, const PolyCalculus* calc, const CVector& z) {
  if (calc == nullptr) return a.entries * z;
  return solve(calc->jacobian_at(z), a.entries * calc->value(z));
}

}  // namespace

CVector HerglotzField::value(const CVector& z, double t) const {
  if (t < 0.0) throw Error(Errc::invalid_input, "negative time");
  std::size_t idx = pieces_.size();  // linear extension by default
  for (std::size_t i = 0; i < ends_.size(); ++i)
    if (t < ends_[i]) {
      idx = i;
      break;
    }
  const PolyCalculus* calc = idx < calc_.size() ? calc_[idx].get() : nullptr;
  return generator_value(a_, calc, z);
}

namespace {

struct Segment {
  double begin;
  double end;
  const PolyCalculus* calc;  // null => linear generator
};

std::vector<Segment> segments_between(const HerglotzField& field,
                                      const std::vector<double>& ends,
                                      const std::vector<std::shared_ptr<const PolyCalculus>>& calc,
                                      double s, double t) {
  std::vector<Segment> segs;
  double cur = s;
  for (std::size_t i = 0; i < ends.size() && cur < t; ++i) {
    const double piece_begin = i == 0 ? 0.0 : ends[i - 1];
    const double piece_end = ends[i];
    if (piece_end <= cur) continue;
    const double a = std::max(cur, piece_begin);
    const double b = std::min(t, piece_end);
    if (b > a) {
      segs.push_back(Segment{a, b, calc[i].get()});
      cur = b;
    }
  }
  if (cur < t) segs.push_back(Segment{cur, t, nullptr});  // linear extension
  (void)field;
  return segs;
}

}  // namespace

struct FlowEngine {
  static FlowResult run(const HerglotzField& field, const CVector& z, double s, double t,
                        double tol) {
    if (static_cast<int>(z.size()) != field.dim())
      throw Error(Errc::invalid_input, "dimension mismatch in flow");
    if (!(norm(z) < 1.0))
      throw Error(Errc::invalid_input, "flow initial point must lie in the open ball");
    if (!(tol > 0.0)) throw Error(Errc::invalid_input, "tolerance must be positive");
    if (!(s >= 0.0) || !(t >= s))
      throw Error(Errc::invalid_input, "flow requires 0 <= s <= t");

    FlowResult out;
    out.value = z;
    if (t == s) return out;

    auto deriv = [&](const PolyCalculus* calc, const CVector& y) {
      CVector h = generator_value(field.a_, calc, y);
      for (auto& c : h) c = -c;
      return h;
    };
    auto rk4 = [&](const PolyCalculus* calc, const CVector& y, double h) {
      const CVector k1 = deriv(calc, y);
      CVector tmp(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
      const CVector k2 = deriv(calc, tmp);
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
      const CVector k3 = deriv(calc, tmp);
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + h * k3[i];
      const CVector k4 = deriv(calc, tmp);
      CVector next(y.size());
      for (std::size_t i = 0; i < y.size(); ++i)
        next[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      return next;
    };

    const auto segs = segments_between(field, field.ends_, field.calc_, s, t);
    for (const Segment& seg : segs) {
      const double span = seg.end - seg.begin;
      double remaining = span;
      double h = span / 64.0;
      while (remaining > 0.0) {
        if (out.steps >= kMaxSteps)
          throw Error(Errc::tolerance_unreachable, "flow exceeded the step budget");
        h = std::min(h, remaining);
        try {
          const CVector coarse = rk4(seg.calc, out.value, h);
          CVector fine = rk4(seg.calc, out.value, 0.5 * h);
          fine = rk4(seg.calc, fine, 0.5 * h);
          const double err = distance(coarse, fine) / 15.0;
          // Relative control: the flow decays and downstream evaluations
          // multiply by e^{tA}, so the error must track the state magnitude.
          const double prev_norm = norm(out.value);
          const double scale = std::max(prev_norm, 1e-300);
          if (err <= tol * scale) {
            // local Richardson extrapolation of the step-doubling pair
            for (std::size_t i = 0; i < fine.size(); ++i)
              fine[i] += (fine[i] - coarse[i]) / 15.0;
            if (norm(fine) > prev_norm + 10.0 * tol)
              throw Error(Errc::integration_failure,
                          "norm decay violated at t = " +
                              std::to_string(seg.end - remaining + h));
            out.value = std::move(fine);
            out.max_local_error = std::max(out.max_local_error, err);
            ++out.steps;
            remaining -= h;
            if (err < tol * scale / 32.0) h *= 2.0;
          } else {
            h *= 0.5;
            if (h < span * 1e-14)
              throw Error(Errc::tolerance_unreachable,
                          "flow step underflow inside a piece");
          }
        } catch (const Error& e) {
          if (e.code() == Errc::singular_jacobian)
            throw Error(Errc::integration_failure,
                        std::string("singular Jacobian during integration near t = ") +
                            std::to_string(seg.end - remaining) + ": " + e.what());
          throw;
        }
      }
    }
    if (norm(out.value) > norm(z) + 10.0 * tol)
      throw Error(Errc::integration_failure, "flow violated the Schwarz bound");
    return out;
  }
};

FlowResult flow(const HerglotzField& field, const CVector& z, double s, double t,
                double tol) {
  return FlowEngine::run(field, z, s, t, tol);
}

std::vector<FlowOutcome> flow_batch(const HerglotzField& field,
                                    const std::vector<CVector>& points, double s,
                                    double t, double tol, Exec mode) {
  std::vector<FlowOutcome> out(points.size());
  run_indexed(mode, points.size(), [&](std::size_t i) {
    try {
      out[i].result = flow(field, points[i], s, t, tol);
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

CVector reachable_eval(const HerglotzField& field, const CVector& z, double tol) {
  const FlowResult fr = flow(field, z, 0.0, field.total_time(), tol);
  return matrix_exp(field.a(), field.total_time()) * fr.value;
}

ParametricLimit parametric_limit(const HerglotzField& field, const CVector& z,
                                 double t_max, double tol, double flow_tol) {
  if (!(t_max > 0.0)) throw Error(Errc::invalid_input, "t_max must be positive");
  ParametricLimit out;
  CVector state = z;
  double t_prev = 0.0;
  std::optional<CVector> prev_value;
  double t = 1.0;
  while (true) {
    if (t > t_max) t = t_max;
    const FlowResult fr = flow(field, state, t_prev, t, flow_tol);
    state = fr.value;
    CVector val = matrix_exp(field.a(), t) * state;
    out.t_reached = t;
    if (prev_value && distance(val, *prev_value) < tol) {
      out.converged = true;
      out.value = std::move(val);
      return out;
    }
    prev_value = val;
    out.value = std::move(val);
    if (t >= t_max) return out;  // converged stays false
    t_prev = t;
    t *= 2.0;
  }
}

double semigroup_check(const HerglotzField& field, const CVector& z, double s, double t,
                       double u, double tol) {
  if (!(s <= t && t <= u))
    throw Error(Errc::invalid_input, "semigroup check requires s <= t <= u");
  const CVector direct = flow(field, z, s, u, tol).value;
  const CVector mid = flow(field, z, s, t, tol).value;
  const CVector chained = flow(field, mid, t, u, tol).value;
  return distance(direct, chained);
}

double subordination_check(const PolyMap& f, const Operator& a, const CVector& z,
                           double t, double tol, const FieldOptions& options) {
  std::vector<FieldPiece> pieces;
  pieces.push_back(FieldPiece{std::max(t, 1.0), SpirallikeGenerator{f}});
  // Construction runs the spirallike membership test and refuses on failure.
  const HerglotzField field(a, std::move(pieces), options);
  const CVector v = flow(field, z, 0.0, t, tol).value;
  const CVector lhs = eval(f, v);
  const CVector rhs = matrix_exp(a, -t) * eval(f, z);
  return distance(lhs, rhs);
}

HerglotzField field_from_automorphisms(
    const std::vector<std::pair<double, AutomorphismWord>>& pieces, const Operator& a,
    const FieldOptions& options) {
  std::vector<FieldPiece> out;
  out.reserve(pieces.size());
  for (const auto& [duration, word] : pieces) {
    const AutomorphismWord nw = word.normalized ? word : normalize(word);
    out.push_back(FieldPiece{duration, SpirallikeGenerator{to_polymap(nw)}});
  }
  return HerglotzField(a, std::move(out), options);
}

}  // namespace ballchain
