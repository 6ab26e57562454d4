#pragma once

#include <vector>

#include "ballchain/polymap.hpp"

namespace ballchain {

/// One generator of a polynomial automorphism word:
///   shear:     z_j += p(z_hat_j)            (p independent of z_j)
///   overshear: z_j  = s z_j + p(z_hat_j),   s != 0
///   linear:    z    = M z,                  M invertible
struct ShearFactor {
  enum class Kind { shear, overshear, linear };

  Kind kind = Kind::shear;
  int axis = 0;
  std::vector<Term> poly;        // exponent[axis] == 0 in every term
  cdouble scale{1.0, 0.0};       // overshear only
  CMatrix matrix;                // linear only

  static ShearFactor shear(int dim, int axis, std::vector<Term> poly);
  static ShearFactor overshear(int dim, int axis, cdouble scale, std::vector<Term> poly);
  static ShearFactor linear(CMatrix m);

  void validate(int dim) const;
  ShearFactor inverted(int dim) const;
};

/// Composition of shear/overshear/linear factors, applied left to right:
/// word [F1, F2, ..., Fk] represents Fk ∘ ... ∘ F1.
struct AutomorphismWord {
  int dim = 0;
  std::vector<ShearFactor> factors;
  bool normalized = false;

  void validate() const;
};

CVector apply_factor(const ShearFactor& f, int dim, const CVector& z);
CMatrix factor_jacobian(const ShearFactor& f, int dim, const CVector& z);

/// Pointwise evaluation without composing the polynomial (no degree blow-up).
CVector word_eval(const AutomorphismWord& w, const CVector& z);
/// Chain-rule Jacobian along the factor orbit.
CMatrix word_jacobian(const AutomorphismWord& w, const CVector& z);

/// Exact composition of the factors as a PolyMap.  Words flagged normalized
/// snap the eps-level constant/linear residue to the exact normalized form.
PolyMap to_polymap(const AutomorphismWord& w);

/// Reversed list of factor inverses.
AutomorphismWord inverse(const AutomorphismWord& w);

/// Appends a translation (constant shears) and the linear factor DPhi(0)^{-1}
/// so the result fixes the origin with identity derivative.  Verified
/// numerically; factors are skipped when the word is already normalized.
AutomorphismWord normalize(const AutomorphismWord& w);

}  // namespace ballchain
