#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ballchain/automorphism.hpp"
#include "ballchain/criteria.hpp"
#include "ballchain/operator_analysis.hpp"
#include "ballchain/polymap.hpp"

namespace ballchain {

/// Thrown when a map fails the membership test guarding a construction;
/// carries the failing criterion report.
class CriterionFailure : public Error {
 public:
  CriterionFailure(CriterionReport report, const std::string& what)
      : Error(Errc::precondition_violated, what), report_(std::move(report)) {}
  const CriterionReport& report() const { return report_; }

 private:
  CriterionReport report_;
};

struct LinearGenerator {};

/// h(z) = Df(z)^{-1} A f(z) for a spirallike f.
struct SpirallikeGenerator {
  PolyMap f;
};

struct FieldPiece {
  double duration = 0.0;
  std::variant<LinearGenerator, SpirallikeGenerator> generator;
};

/// Budget for the membership test run on every spirallike piece at field
/// construction time.
struct FieldOptions {
  std::vector<double> radii = default_radii();
  int per_sphere = 128;
  std::uint64_t seed = 911;
};

/// Piecewise-constant Herglotz vector field: each piece is either h = Az or
/// the spirallike conjugation field of a map that passed the membership test
/// with respect to A.  Beyond the schedule the field extends linearly (h = Az).
class HerglotzField {
 public:
  HerglotzField(Operator a, std::vector<FieldPiece> pieces,
                const FieldOptions& options = {});

  const Operator& a() const { return a_; }
  int dim() const { return a_.dim(); }
  double total_time() const { return total_time_; }
  const std::vector<FieldPiece>& pieces() const { return pieces_; }

  /// h(z, t); pieces are right-open in t, with the linear extension past T.
  CVector value(const CVector& z, double t) const;

 private:
  friend struct FlowEngine;
  Operator a_;
  std::vector<FieldPiece> pieces_;
  std::vector<double> ends_;  // cumulative piece end times
  std::vector<std::shared_ptr<const PolyCalculus>> calc_;  // per piece, null for linear
  double total_time_ = 0.0;
};

struct FlowResult {
  CVector value;
  long steps = 0;
  double max_local_error = 0.0;
};

/// Transition map v(z, s, t): classic RK4 with adaptive step halving on the
/// step-doubling error estimate; piece boundaries are exact step endpoints.
FlowResult flow(const HerglotzField& field, const CVector& z, double s, double t,
                double tol = 1e-10);

struct FlowOutcome {
  std::optional<FlowResult> result;
  std::string error;  // empty on success
};

/// Flows for many initial points; independent points run on the OpenMP pool.
std::vector<FlowOutcome> flow_batch(const HerglotzField& field,
                                    const std::vector<CVector>& points, double s,
                                    double t, double tol = 1e-10,
                                    Exec mode = Exec::parallel);

/// Time-T reachable element e^{TA} v(., T) evaluated at z.
CVector reachable_eval(const HerglotzField& field, const CVector& z, double tol = 1e-10);

struct ParametricLimit {
  CVector value;
  bool converged = false;
  double t_reached = 0.0;
};

/// e^{tA} v(z, 0, t) probed on the doubling schedule t in {1, 2, 4, ...}
/// until two successive values differ by less than tol or t reaches t_max.
ParametricLimit parametric_limit(const HerglotzField& field, const CVector& z,
                                 double t_max = 64.0, double tol = 1e-6,
                                 double flow_tol = 1e-10);

/// || v(z,s,u) - v(v(z,s,t),t,u) ||
double semigroup_check(const HerglotzField& field, const CVector& z, double s, double t,
                       double u, double tol = 1e-10);

/// || f(v(z,0,t)) - e^{-tA} f(z) || for the conjugation field of f.  Runs the
/// spirallike membership test first and refuses on failure.
double subordination_check(const PolyMap& f, const Operator& a, const CVector& z,
                           double t, double tol = 1e-10,
                           const FieldOptions& options = {});

/// Builds the field whose pieces are the conjugation generators of the
/// normalized words; rejects with the failing word's criterion report.
HerglotzField field_from_automorphisms(
    const std::vector<std::pair<double, AutomorphismWord>>& pieces, const Operator& a,
    const FieldOptions& options = {});

}  // namespace ballchain
