#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ballchain/linalg.hpp"
#include "ballchain/sampling.hpp"
#include "ballchain/types.hpp"

namespace ballchain {

/// Monomial exponent vector; degree is the exponent sum.
struct MultiIndex {
  std::vector<int> exponents;

  int degree() const;
  bool operator==(const MultiIndex& o) const { return exponents == o.exponents; }
};

/// Lexicographic order on exponent vectors (first variable most significant);
/// the canonical term order, which keeps Horner-by-variable grouping contiguous.
bool multi_index_less(const MultiIndex& a, const MultiIndex& b);

struct Term {
  MultiIndex exp;
  cdouble coeff;
};

/// Canonicalizes terms in place: sorts by multi_index_less, merges duplicates,
/// drops exact-zero coefficients.
void canonicalize_terms(std::vector<Term>& terms);

std::vector<Term> multiply_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                                 int degree_cap);
cdouble eval_terms(const std::vector<Term>& terms, const CVector& z);

/// A polynomial map C^n -> C^n stored sparsely per output coordinate.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(int dim, std::vector<std::vector<Term>> coords);

  static PolyMap identity(int dim);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  const std::vector<Term>& coord(int i) const { return coords_[i]; }
  const std::vector<std::vector<Term>>& coords() const { return coords_; }

  /// Exact check: zero constant term and identity linear part.
  bool is_normalized() const;

  cdouble coefficient(int coord, const MultiIndex& idx) const;

  /// Rounds eps-level deviations of the constant and linear parts to the
  /// exact normalized form; throws if a deviation exceeds tol.  Needed for
  /// maps assembled from normalized automorphism words, whose composed
  /// coefficients carry floating-point residue.
  PolyMap snapped_normalization(double tol = 1e-10) const;

 private:
  int dim_ = 0;
  int max_degree_ = 0;
  std::vector<std::vector<Term>> coords_;
};

PolyMap operator+(const PolyMap& a, const PolyMap& b);
PolyMap operator-(const PolyMap& a, const PolyMap& b);
bool operator==(const PolyMap& a, const PolyMap& b);

inline constexpr int kComposeHardCap = 64;

CVector eval(const PolyMap& f, const CVector& z);
CMatrix jacobian(const PolyMap& f, const CVector& z);
CVector second_derivative(const PolyMap& f, const CVector& z, const CVector& v);

/// Solves Df(z) u = w; Errc::singular_jacobian when the smallest pivot of
/// the Jacobian factorization is below pivot_tol (f not locally
/// biholomorphic at z as far as the pivots can tell).
CVector jacobian_solve(const PolyMap& f, const CVector& z, const CVector& w,
                       double pivot_tol = 1e-12);

/// Exact coefficient-level composition f(g(z)), truncated at degree_cap when
/// given; otherwise errors out if the product degree exceeds kComposeHardCap.
PolyMap compose(const PolyMap& f, const PolyMap& g,
                std::optional<int> degree_cap = std::nullopt);

/// (1/r) f(r z): degree-k coefficients scale by r^{k-1}.  Requires f
/// normalized and 0 < r <= 1.
PolyMap dilate(const PolyMap& f, double r);

/// Precomputed first and second derivative polynomials of a map, for the
/// inner loops that evaluate them at many points.
class PolyCalculus {
 public:
  explicit PolyCalculus(PolyMap f);

  const PolyMap& map() const { return f_; }
  CVector value(const CVector& z) const;
  CMatrix jacobian_at(const CVector& z) const;
  /// D^2 f(z)(v, v)
  CVector second_directional(const CVector& z, const CVector& v) const;

 private:
  PolyMap f_;
  std::vector<std::vector<std::vector<Term>>> d1_;  // [coord][var]
  std::vector<std::vector<std::vector<Term>>> d2_;  // [coord][var1*n+var2]
};

struct SupNormBudget {
  int samples = 20000;
  int restarts = 50;
  int iters = 200;
  std::uint64_t seed = 424242;
};

/// Lower-bound estimate with its refinement gap; `sampled` is the pure
/// sampling stage (monotone in the sample budget), `value` adds tangential
/// gradient ascent from the best starts and the structured axis seeds.
struct SupNormEstimate {
  double value = 0.0;
  double sampled = 0.0;
  double refinement_gap = 0.0;
  CVector witness;
};

/// sup of ||P(z)|| over the sphere ||z|| = radius.  For holomorphic P this
/// equals the sup over the closed ball (the norm is plurisubharmonic).
SupNormEstimate sup_norm_on_sphere(const PolyMap& p, double radius,
                                   const SupNormBudget& budget = {});

struct HomogeneousExpansion {
  std::vector<int> degrees;           // ascending, from 2 to max_degree
  std::vector<PolyMap> parts;         // aligned with degrees
  std::vector<SupNormEstimate> norm_estimates;
};

/// Splits a normalized map as id + sum of homogeneous parts of degree >= 2
/// and estimates each part's sphere sup norm.
HomogeneousExpansion homogeneous_parts(const PolyMap& f, const SupNormBudget& budget = {});

/// (sum k ||A_k||, sum k^2 ||A_k||) over the homogeneous parts.
std::pair<double, double> coefficient_functionals(const PolyMap& f,
                                                  const SupNormBudget& budget = {});

}  // namespace ballchain
