#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ballchain/operator_analysis.hpp"
#include "ballchain/parallel.hpp"
#include "ballchain/polymap.hpp"
#include "ballchain/sampling.hpp"

namespace ballchain {

inline constexpr double kCritTol = 1e-10;  // tau_crit: fail/boundary band

/// Target region g(U) for the g-starlike criterion.  Only the three
/// analytically described regions are supported.
struct GRegion {
  enum class Kind { half_plane, disk_of_order, sector_of_order };

  Kind kind = Kind::half_plane;
  double alpha = 0.0;

  static GRegion half_plane();
  static GRegion disk_of_order(double alpha);    // alpha in (0,1)
  static GRegion sector_of_order(double alpha);  // alpha in (0,1]

  /// Signed membership margin of q: positive inside the region.
  double margin(cdouble q) const;
  std::string name() const;
};

enum class Verdict { pass, fail, boundary };
const char* verdict_name(Verdict v);

/// Outcome of a sampled criterion: sampling proves "fail" (the witness is a
/// counterexample); "pass" is evidence at the recorded budget.
struct CriterionReport {
  std::string criterion;
  Verdict verdict = Verdict::fail;
  double min_margin = 0.0;
  std::optional<CVector> witness;
  std::optional<CVector> witness_tangent;
  int sample_count = 0;
  std::vector<double> radii;
  std::string reason;  // set on structural failures (normalization, singular Jacobian)

  bool passed() const { return verdict == Verdict::pass; }
};

// Pointwise margin kernels.  Singular Jacobians map to -infinity entries so
// the kernels never throw inside the parallel loops.
std::vector<double> caratheodory_margins(const PolyCalculus& h,
                                         const std::vector<CVector>& points,
                                         Exec mode = Exec::parallel);
std::vector<double> growth_margins(const PolyCalculus& h, double m, double k, double vr,
                                   const std::vector<CVector>& points,
                                   Exec mode = Exec::parallel);
std::vector<double> spirallike_margins(const PolyCalculus& f, const CMatrix& a,
                                       const std::vector<CVector>& points,
                                       Exec mode = Exec::parallel);
std::vector<double> g_starlike_margins(const PolyCalculus& f, const GRegion& region,
                                       const std::vector<CVector>& points,
                                       Exec mode = Exec::parallel);
std::vector<double> convexity_margins(const PolyCalculus& f,
                                      const std::vector<TangentPair>& pairs,
                                      Exec mode = Exec::parallel);
std::vector<double> q_class_margins(const PolyCalculus& f,
                                    const std::vector<CVector>& points,
                                    Exec mode = Exec::parallel);

/// Carathéodory family membership: h(0) = 0, Dh(0) = A on exact
/// coefficients, min over the sample of Re<h(z),z>.
CriterionReport caratheodory_test(const PolyMap& h, const Operator& a, const BallSample& s);

/// Two-sided numerical-range growth bound on Re<h(z),z> plus the numerical
/// radius bound on ||h(z)||; the margin is the worst slack.
CriterionReport verify_growth_bounds(const PolyMap& h, const Operator& a,
                                     const BallSample& s);

/// Spirallikeness with respect to A via h(z) = Df(z)^{-1} A f(z):
/// min over the sample of Re<h(z),z>.  Requires f normalized, m(A) > 0.
CriterionReport spirallike_test(const PolyMap& f, const Operator& a, const BallSample& s);

/// Starlike = spirallike with A = I.
CriterionReport starlike_test(const PolyMap& f, const BallSample& s);

/// q(z) = <Df(z)^{-1} f(z), z>/||z||^2 must lie in the region.
CriterionReport g_starlike_test(const PolyMap& f, const GRegion& region,
                                const BallSample& s);

/// min over tangent pairs of 1 - Re<Df(z)^{-1} D^2 f(z)(v,v), z>.
CriterionReport convexity_test(const PolyMap& f, const BallSample& s);

/// min over the sample of 1 - ||Df(z) - I|| (spectral norm).
CriterionReport q_class_test(const PolyMap& f, const BallSample& s);

/// Coefficient-series criteria: margins 1 - sum k||A_k|| and
/// 1 - sum k^2 ||A_k||.
CriterionReport qtilde_test(const PolyMap& f, const SupNormBudget& budget = {});
CriterionReport ktilde_test(const PolyMap& f, const SupNormBudget& budget = {});

struct PairSupBudget {
  int samples = 4000;
  int restarts = 30;
  int iters = 120;
  std::uint64_t seed = 31337;
};

struct DeltaEstimate {
  double value = 0.0;
  double sampled = 0.0;
  double refinement_gap = 0.0;
};

/// delta(f, r) = max of Re<Df(z)^{-1} D^2 f(z)(v,v), z> over ||z|| <= r,
/// ||v|| = 1, Re<z,v> = 0, by seeded sampling plus projected ascent.
/// Lower-bound semantics, like the sup-norm estimator.
DeltaEstimate compute_delta(const PolyMap& f, double r, const PairSupBudget& budget = {});

/// max over ||z|| <= r, ||v|| = 1 (not tangent) of
/// ||Dg(z)^{-1} D^2 g(z)(v,v) - Df(z)^{-1} D^2 f(z)(v,v)||.
DeltaEstimate second_derivative_discrepancy(const PolyMap& g, const PolyMap& f, double r,
                                            const PairSupBudget& budget = {});

}  // namespace ballchain
