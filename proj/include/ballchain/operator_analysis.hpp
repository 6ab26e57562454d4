#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ballchain/linalg.hpp"
#include "ballchain/rational.hpp"
#include "ballchain/types.hpp"

namespace ballchain {

inline constexpr double kLinTol = 1e-9;  // absolute tolerance for operator scalars
inline constexpr double kResTol = 1e-9;  // relative resonance tolerance
inline constexpr int kDimCap = 8;        // spectral routines stop here

/// A linear operator on C^n.  Entries may carry an exact Gaussian-rational
/// shadow (input mode used for exact resonance certificates).
struct Operator {
  CMatrix entries;
  std::optional<std::vector<GaussianRational>> exact_entries;  // row major
  std::optional<std::vector<GaussianRational>> exact_eigenvalues;

  Operator() = default;
  explicit Operator(CMatrix m) : entries(std::move(m)) { validate(); }

  int dim() const { return entries.dim(); }
  void validate() const;

  static Operator identity(int n) { return Operator(CMatrix::identity(n)); }
  static Operator diagonal(const std::vector<cdouble>& diag);
};

/// Scalar profile of an operator: numerical-range extrema of the Hermitian
/// part, spectral abscissa bounds, numerical radius and operator norm.
struct OperatorProfile {
  double m = 0.0;
  double k = 0.0;
  double kminus = 0.0;
  double kplus = 0.0;
  double vr = 0.0;      // numerical radius |V(A)|
  double opnorm = 0.0;  // ||A||
  std::vector<cdouble> eigenvalues;
};

struct ResonanceWitness {
  int s = 0;                   // 1-based eigenvalue index lambda_s
  std::vector<int> exponents;  // m_1..m_n with sum >= 2
};

enum class ResonanceKind { nonresonant, resonant, resonant_within_tolerance };

const char* resonance_kind_name(ResonanceKind kind);

struct ResonanceVerdict {
  ResonanceKind kind = ResonanceKind::nonresonant;
  std::optional<ResonanceWitness> witness;
  bool real_resonant = false;
  std::optional<ResonanceWitness> real_witness;
  int search_bound = 0;  // certified enumeration cutoff on sum(m_j)
};

/// (m, k): extreme eigenvalues of the Hermitian part (A + A*)/2, which are
/// exactly the min/max of Re<Az,z> on the unit sphere.
std::pair<double, double> numerical_range_extrema(const Operator& a);

/// Numerical radius max_theta lambda_max(Re(e^{i theta} A)) on a theta grid
/// with golden-section refinement of every grid-local maximum.
double numerical_radius(const Operator& a, int angle_grid = 720, double tol = 1e-10);

struct SpectralResult {
  double kplus = 0.0;
  double kminus = 0.0;
  std::vector<cdouble> eigenvalues;
};

/// Eigenvalues plus spectral abscissa bounds; cross-checked against the
/// limit log||e^{tA}||/t -> k_+ at large t.
SpectralResult spectral_abscissa(const Operator& a);

/// e^{tA}; range-error when t*||A|| would overflow downstream.
CMatrix matrix_exp(const Operator& a, double t);

/// Resonance search over multi-indices m with 2 <= sum(m_j) <= bound where
/// bound = floor(k_+ / min_j Re lambda_j) + 1.  Requires Re lambda_j > 0.
ResonanceVerdict detect_resonance(const std::vector<cdouble>& eigenvalues,
                                  double tol = kResTol);

/// Exact-arithmetic variant for Gaussian-rational eigenvalue input; hits
/// report kind == resonant instead of resonant_within_tolerance.
ResonanceVerdict detect_resonance_exact(const std::vector<GaussianRational>& eigenvalues);

/// Full profile with the inequality-chain invariants asserted:
/// m <= k_+ <= |V| <= ||A|| <= 2|V| and m <= k_- <= k_+ within kLinTol.
OperatorProfile operator_profile(const Operator& a);

}  // namespace ballchain
