#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ballchain/automorphism.hpp"
#include "ballchain/criteria.hpp"
#include "ballchain/loewner.hpp"

namespace ballchain {

/// r_m = 1 - 2^{-m}, m = 1..10 by default; strictly increasing in (0,1).
struct DilationSchedule {
  std::vector<double> radii;

  static DilationSchedule defaults(int count = 10);
  void validate() const;
};

enum class ApproxKind { spirallike, starlike, gstar, convex, q, qtilde, ktilde };

/// Criterion a run approximates within: kind plus its parameters.
struct ApproxCriterion {
  ApproxKind kind = ApproxKind::starlike;
  std::optional<Operator> a;       // spirallike
  std::optional<GRegion> region;   // gstar

  static ApproxCriterion spirallike(Operator a);
  static ApproxCriterion starlike();
  static ApproxCriterion gstar(GRegion region);
  static ApproxCriterion convex();
  static ApproxCriterion q();
  static ApproxCriterion qtilde();
  static ApproxCriterion ktilde();

  std::string name() const;
};

struct ApproxOptions {
  std::vector<double> radii = default_radii();
  int per_sphere = 400;
  std::uint64_t seed = 7;
  SupNormBudget sup;
  PairSupBudget pair;
};

/// Per-m selection outcome; index is empty when no candidate was admissible.
struct Selection {
  int m = 0;
  double r = 0.0;
  std::optional<int> index;
  double margin = 0.0;
  std::string note;
};

struct ApproximationRun {
  std::string criterion;
  std::vector<double> schedule;
  std::vector<double> test_radii;
  std::vector<Selection> selections;
  /// distances[m][i] = sup over ||z|| <= test_radii[i] of ||phi_m(z) - f(z)||;
  /// NaN rows where no candidate was admitted.
  std::vector<std::vector<double>> distances;
};

/// Smallest k >= min_index whose dilation (1/r) psi_k(r z) passes the
/// spirallike test on the sample.  Empty when the candidates are exhausted.
std::optional<int> select_spirallike(const PolyMap& f,
                                     const std::vector<AutomorphismWord>& candidates,
                                     const Operator& a, double r, const BallSample& sample,
                                     int min_index = 0);

/// Admits k when the second-derivative discrepancy against f on ||z|| <= r
/// stays below 1 - delta(f, r), then re-verifies the dilated candidate.
std::optional<int> select_convex(const PolyMap& f,
                                 const std::vector<AutomorphismWord>& candidates, double r,
                                 const BallSample& sample, int min_index = 0,
                                 const PairSupBudget& pair_budget = {});

/// Admits k when max ||D psi_k(r z) - I|| <= (1+r)/2 over the sample.
std::optional<int> select_q(const PolyMap& f,
                            const std::vector<AutomorphismWord>& candidates, double r,
                            const BallSample& sample, int min_index = 0);

/// Admits k when sup of ||psi_k - f|| over ||z|| <= (1+r)/2 is at most the
/// distance budget eps(r), then re-verifies the dilation directly.
std::optional<int> select_qtilde(const PolyMap& f,
                                 const std::vector<AutomorphismWord>& candidates, double r,
                                 int min_index = 0, const SupNormBudget& budget = {});

/// sum_{k>=2} k x^k = x^2 (2 - x) / (1 - x)^2 for |x| < 1.
double series_sum_k_xk(double x);
/// sum_{k>=2} k^2 x^k = x^2 (4 - 3x + x^2) / (1 - x)^3 for |x| < 1.
double series_sum_k2_xk(double x);

/// eps(r) solving (eps/r) sum_{k>=2} k (2r/(1+r))^k = (1-r)/2.
double qtilde_distance_budget(double r);

/// Runs the matching selector along the dilation schedule with strictly
/// increasing candidate indices; records margins and sup distances on the
/// test radii.  Selector failures are recorded and the run continues.
ApproximationRun run_approximation(const PolyMap& f,
                                   const std::vector<AutomorphismWord>& candidates,
                                   const ApproxCriterion& criterion,
                                   const DilationSchedule& schedule,
                                   const std::vector<double>& test_radii,
                                   const ApproxOptions& options = {});

}  // namespace ballchain
