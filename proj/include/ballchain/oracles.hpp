#pragma once

// Reference oracles used by the verification suite and the test binaries.
// Each one reaches its answer by a route independent of the production
// implementation it cross-checks.

#include <cstdint>
#include <utility>
#include <vector>

#include "ballchain/linalg.hpp"
#include "ballchain/types.hpp"

namespace ballchain::oracle {

/// min/max of Re<Az,z> over the unit sphere by direct optimization:
/// seeded sampling followed by two-dimensional subspace relaxation on the
/// Rayleigh quotient of the Hermitian part.  Independent of the Jacobi
/// eigensolver route used in production.
std::pair<double, double> sphere_range_extrema(const CMatrix& a, int samples,
                                               int polish_iters, std::uint64_t seed);

/// Plain nested-loop resonance enumeration for n <= 3 eigenvalue lists.
bool brute_force_resonant(const std::vector<cdouble>& eigs, int bound, double tol);
bool brute_force_real_resonant(const std::vector<cdouble>& eigs, int bound, double tol);

/// Closed-form Loewner transition map for f = (z1 + a z2^2, z2) with A = I:
/// v(z, t) = f^{-1}(e^{-t} f(z)).
CVector shear_flow_closed_form(double a, const CVector& z, double t);

/// Partial sums of sum_{k>=2} k x^k and sum_{k>=2} k^2 x^k.
double partial_series_k(double x, int kmax);
double partial_series_k2(double x, int kmax);

}  // namespace ballchain::oracle
