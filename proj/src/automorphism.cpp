#include "ballchain/automorphism.hpp"

#include <cmath>

namespace ballchain {

ShearFactor ShearFactor::shear(int dim, int axis, std::vector<Term> poly) {
  ShearFactor f;
  f.kind = Kind::shear;
  f.axis = axis;
  f.poly = std::move(poly);
  canonicalize_terms(f.poly);
  f.validate(dim);
  return f;
}

ShearFactor ShearFactor::overshear(int dim, int axis, cdouble scale,
                                   std::vector<Term> poly) {
  ShearFactor f;
  f.kind = Kind::overshear;
  f.axis = axis;
  f.scale = scale;
  f.poly = std::move(poly);
  canonicalize_terms(f.poly);
  f.validate(dim);
  return f;
}

ShearFactor ShearFactor::linear(CMatrix m) {
  ShearFactor f;
  f.kind = Kind::linear;
  f.matrix = std::move(m);
  f.validate(f.matrix.dim());
  return f;
}

void ShearFactor::validate(int dim) const {
  switch (kind) {
    case Kind::shear:
    case Kind::overshear:
      if (axis < 0 || axis >= dim)
        throw Error(Errc::invalid_input, "shear axis out of range");
      for (const Term& t : poly) {
        if (t.exp.exponents.size() != static_cast<std::size_t>(dim))
          throw Error(Errc::invalid_input, "shear polynomial has wrong arity");
        if (t.exp.exponents[axis] != 0)
          throw Error(Errc::invalid_input,
                      "shear polynomial must not depend on the shear axis");
      }
      if (kind == Kind::overshear && scale == cdouble{0.0, 0.0})
        throw Error(Errc::invalid_input, "overshear scale must be nonzero");
      break;
    case Kind::linear: {
      if (matrix.dim() != dim)
        throw Error(Errc::invalid_input, "linear factor dimension mismatch");
      const LuFactors f = lu_factor(matrix);
      if (f.min_pivot < 1e-12 * std::max(1.0, max_abs(matrix)))
        throw Error(Errc::invalid_input, "linear factor is not invertible");
      break;
    }
  }
}

ShearFactor ShearFactor::inverted(int dim) const {
  switch (kind) {
    case Kind::shear: {
      std::vector<Term> neg = poly;
      for (Term& t : neg) t.coeff = -t.coeff;
      return shear(dim, axis, std::move(neg));
    }
    case Kind::overshear: {
      // z = s w + p  =>  w = z/s - p(.)/s
      std::vector<Term> scaled = poly;
      for (Term& t : scaled) t.coeff = -t.coeff / scale;
      return overshear(dim, axis, cdouble{1.0, 0.0} / scale, std::move(scaled));
    }
    case Kind::linear:
      return linear(inverse(matrix));
  }
  throw Error(Errc::internal_inconsistency, "unknown factor kind");
}

void AutomorphismWord::validate() const {
  if (dim < 1) throw Error(Errc::invalid_input, "word dimension must be >= 1");
  for (const ShearFactor& f : factors) f.validate(dim);
}

CVector apply_factor(const ShearFactor& f, int dim, const CVector& z) {
  switch (f.kind) {
    case ShearFactor::Kind::shear: {
      CVector out = z;
      out[f.axis] += eval_terms(f.poly, z);
      return out;
    }
    case ShearFactor::Kind::overshear: {
      CVector out = z;
      out[f.axis] = f.scale * z[f.axis] + eval_terms(f.poly, z);
      return out;
    }
    case ShearFactor::Kind::linear:
      return f.matrix * z;
  }
  throw Error(Errc::internal_inconsistency, "unknown factor kind");
  (void)dim;
}

CMatrix factor_jacobian(const ShearFactor& f, int dim, const CVector& z) {
  switch (f.kind) {
    case ShearFactor::Kind::shear:
    case ShearFactor::Kind::overshear: {
      CMatrix j = CMatrix::identity(dim);
      if (f.kind == ShearFactor::Kind::overshear) j(f.axis, f.axis) = f.scale;
      for (int v = 0; v < dim; ++v) {
        if (v == f.axis) continue;
        std::vector<Term> dv;
        for (const Term& t : f.poly) {
          const int e = t.exp.exponents[v];
          if (e == 0) continue;
          Term d = t;
          d.exp.exponents[v] = e - 1;
          d.coeff *= static_cast<double>(e);
          dv.push_back(std::move(d));
        }
        canonicalize_terms(dv);
        if (!dv.empty()) j(f.axis, v) += eval_terms(dv, z);
      }
      return j;
    }
    case ShearFactor::Kind::linear:
      return f.matrix;
  }
  throw Error(Errc::internal_inconsistency, "unknown factor kind");
}

CVector word_eval(const AutomorphismWord& w, const CVector& z) {
  if (static_cast<int>(z.size()) != w.dim)
    throw Error(Errc::invalid_input, "dimension mismatch in word_eval");
  CVector cur = z;
  for (const ShearFactor& f : w.factors) cur = apply_factor(f, w.dim, cur);
  return cur;
}

CMatrix word_jacobian(const AutomorphismWord& w, const CVector& z) {
  CVector cur = z;
  CMatrix j = CMatrix::identity(w.dim);
  for (const ShearFactor& f : w.factors) {
    j = factor_jacobian(f, w.dim, cur) * j;
    cur = apply_factor(f, w.dim, cur);
  }
  return j;
}

namespace {

PolyMap factor_polymap(const ShearFactor& f, int dim) {
  switch (f.kind) {
    case ShearFactor::Kind::shear:
    case ShearFactor::Kind::overshear: {
      std::vector<std::vector<Term>> coords(dim);
      for (int i = 0; i < dim; ++i) {
        Term lin{MultiIndex{std::vector<int>(dim, 0)}, cdouble{1.0, 0.0}};
        lin.exp.exponents[i] = 1;
        if (i == f.axis && f.kind == ShearFactor::Kind::overshear) lin.coeff = f.scale;
        coords[i].push_back(std::move(lin));
      }
      for (const Term& t : f.poly) coords[f.axis].push_back(t);
      return PolyMap(dim, std::move(coords));
    }
    case ShearFactor::Kind::linear: {
      std::vector<std::vector<Term>> coords(dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          if (f.matrix(i, j) == cdouble{0.0, 0.0}) continue;
          Term t{MultiIndex{std::vector<int>(dim, 0)}, f.matrix(i, j)};
          t.exp.exponents[j] = 1;
          coords[i].push_back(std::move(t));
        }
      return PolyMap(dim, std::move(coords));
    }
  }
  throw Error(Errc::internal_inconsistency, "unknown factor kind");
}

}  // namespace

PolyMap to_polymap(const AutomorphismWord& w) {
  w.validate();
  PolyMap acc = PolyMap::identity(w.dim);
  for (const ShearFactor& f : w.factors) {
    const PolyMap fp = factor_polymap(f, w.dim);
    const long long blowup = static_cast<long long>(std::max(fp.max_degree(), 1)) *
                             std::max(acc.max_degree(), 1);
    if (blowup > kComposeHardCap)
      throw Error(Errc::resource_error, "word composition exceeds the degree cap");
    acc = compose(fp, acc);
  }
  if (w.normalized) return acc.snapped_normalization();
  return acc;
}

AutomorphismWord inverse(const AutomorphismWord& w) {
  w.validate();
  AutomorphismWord out;
  out.dim = w.dim;
  out.factors.reserve(w.factors.size());
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it)
    out.factors.push_back(it->inverted(w.dim));
  return out;
}

AutomorphismWord normalize(const AutomorphismWord& w) {
  w.validate();
  const int n = w.dim;
  const CVector zero(n, cdouble{0.0, 0.0});
  const CVector c = word_eval(w, zero);
  const CMatrix d0 = word_jacobian(w, zero);

  AutomorphismWord out = w;
  bool already_centered = norm(c) == 0.0;
  if (!already_centered) {
    // Translation by -Phi(0), one constant shear per coordinate.
    for (int i = 0; i < n; ++i) {
      if (c[i] == cdouble{0.0, 0.0}) continue;
      std::vector<Term> constant{Term{MultiIndex{std::vector<int>(n, 0)}, -c[i]}};
      out.factors.push_back(ShearFactor::shear(n, i, std::move(constant)));
    }
  }
  if (max_abs(d0 - CMatrix::identity(n)) != 0.0)
    out.factors.push_back(ShearFactor::linear(inverse(d0)));

  const CVector c2 = word_eval(out, zero);
  const CMatrix d2 = word_jacobian(out, zero);
  if (norm(c2) > 1e-10 || max_abs(d2 - CMatrix::identity(n)) > 1e-10)
    throw Error(Errc::internal_inconsistency, "word normalization failed numerically");
  out.normalized = true;
  return out;
}

}  // namespace ballchain
