#include "ballchain/polymap.hpp"

#include <algorithm>
#include <cmath>

#include "ballchain/parallel.hpp"

namespace ballchain {

int MultiIndex::degree() const {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

bool multi_index_less(const MultiIndex& a, const MultiIndex& b) {
  return a.exponents < b.exponents;
}

void canonicalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return multi_index_less(x.exp, y.exp); });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().exp == t.exp)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) { return t.coeff == cdouble{0.0, 0.0}; }),
               merged.end());
  terms = std::move(merged);
}

std::vector<Term> multiply_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                                 int degree_cap) {
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const Term& ta : a) {
    const int da = ta.exp.degree();
    for (const Term& tb : b) {
      if (da + tb.exp.degree() > degree_cap) continue;
      Term t;
      t.exp.exponents.resize(ta.exp.exponents.size());
      for (std::size_t j = 0; j < t.exp.exponents.size(); ++j)
        t.exp.exponents[j] = ta.exp.exponents[j] + tb.exp.exponents[j];
      t.coeff = ta.coeff * tb.coeff;
      out.push_back(std::move(t));
    }
  }
  canonicalize_terms(out);
  return out;
}

namespace {

// Horner-by-variable on a lex-sorted span: walk the exponent groups of `var`
// (contiguous under lex order) from the highest down, recursing on the
// remaining variables.  Allocation-free; this sits in every inner loop.
cdouble eval_span(const Term* first, const Term* last, int var, const CVector& z) {
  const int n = static_cast<int>(z.size());
  if (first == last) return cdouble{0.0, 0.0};
  if (var == n) return first->coeff;

  cdouble acc{0.0, 0.0};
  int prev_e = -1;
  const Term* hi = last;
  while (hi != first) {
    const int e = (hi - 1)->exp.exponents[var];
    const Term* lo = hi;
    while (lo != first && (lo - 1)->exp.exponents[var] == e) --lo;
    if (prev_e >= 0) acc *= pow_int(z[var], prev_e - e);
    acc += eval_span(lo, hi, var + 1, z);
    prev_e = e;
    hi = lo;
  }
  if (prev_e > 0) acc *= pow_int(z[var], prev_e);
  return acc;
}

std::vector<Term> differentiate(const std::vector<Term>& terms, int var) {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const Term& t : terms) {
    const int e = t.exp.exponents[var];
    if (e == 0) continue;
    Term d = t;
    d.exp.exponents[var] = e - 1;
    d.coeff *= static_cast<double>(e);
    out.push_back(std::move(d));
  }
  canonicalize_terms(out);
  return out;
}

}  // namespace

cdouble eval_terms(const std::vector<Term>& terms, const CVector& z) {
  return eval_span(terms.data(), terms.data() + terms.size(), 0, z);
}

PolyMap::PolyMap(int dim, std::vector<std::vector<Term>> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1) throw Error(Errc::invalid_input, "polymap dimension must be >= 1");
  if (coords_.size() != static_cast<std::size_t>(dim_))
    throw Error(Errc::invalid_input, "polymap coordinate count does not match dimension");
  for (auto& c : coords_) {
    for (const Term& t : c) {
      if (t.exp.exponents.size() != static_cast<std::size_t>(dim_))
        throw Error(Errc::invalid_input, "multi-index length does not match dimension");
      for (int e : t.exp.exponents)
        if (e < 0) throw Error(Errc::invalid_input, "negative exponent");
      if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
        throw Error(Errc::invalid_input, "non-finite coefficient");
    }
    canonicalize_terms(c);
    for (const Term& t : c) max_degree_ = std::max(max_degree_, t.exp.degree());
  }
}

PolyMap PolyMap::identity(int dim) {
  std::vector<std::vector<Term>> coords(dim);
  for (int i = 0; i < dim; ++i) {
    Term t;
    t.exp.exponents.assign(dim, 0);
    t.exp.exponents[i] = 1;
    t.coeff = 1.0;
    coords[i].push_back(std::move(t));
  }
  return PolyMap(dim, std::move(coords));
}

bool PolyMap::is_normalized() const {
  for (int i = 0; i < dim_; ++i) {
    for (const Term& t : coords_[i]) {
      const int d = t.exp.degree();
      if (d == 0) return false;  // canonical form keeps only nonzero terms
      if (d == 1) {
        int var = 0;
        for (int j = 0; j < dim_; ++j)
          if (t.exp.exponents[j] == 1) var = j;
        const cdouble expect = var == i ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
        if (t.coeff != expect) return false;
      }
    }
    MultiIndex ei;
    ei.exponents.assign(dim_, 0);
    ei.exponents[i] = 1;
    if (coefficient(i, ei) != cdouble{1.0, 0.0}) return false;
  }
  return true;
}

cdouble PolyMap::coefficient(int coord, const MultiIndex& idx) const {
  const auto& terms = coords_[coord];
  auto it = std::lower_bound(
      terms.begin(), terms.end(), idx,
      [](const Term& t, const MultiIndex& m) { return multi_index_less(t.exp, m); });
  if (it != terms.end() && it->exp == idx) return it->coeff;
  return cdouble{0.0, 0.0};
}

PolyMap PolyMap::snapped_normalization(double tol) const {
  std::vector<std::vector<Term>> coords(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (const Term& t : coords_[i]) {
      const int d = t.exp.degree();
      if (d == 0) {
        if (std::abs(t.coeff) > tol)
          throw Error(Errc::internal_inconsistency,
                      "constant term too large to snap to a normalized map");
        continue;
      }
      if (d == 1) {
        int var = 0;
        for (int j = 0; j < dim_; ++j)
          if (t.exp.exponents[j] == 1) var = j;
        const cdouble expect = var == i ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
        if (std::abs(t.coeff - expect) > tol)
          throw Error(Errc::internal_inconsistency,
                      "linear part too far from the identity to snap");
        if (expect != cdouble{0.0, 0.0}) {
          Term s = t;
          s.coeff = expect;
          coords[i].push_back(std::move(s));
        }
        continue;
      }
      coords[i].push_back(t);
    }
    // Ensure the identity linear term is present even if it was dropped.
    MultiIndex ei;
    ei.exponents.assign(dim_, 0);
    ei.exponents[i] = 1;
    bool has_linear = false;
    for (const Term& t : coords[i])
      if (t.exp == ei) has_linear = true;
    if (!has_linear) {
      if (std::abs(coefficient(i, ei) - cdouble{1.0, 0.0}) > tol)
        throw Error(Errc::internal_inconsistency,
                    "identity linear term missing beyond snap tolerance");
      coords[i].push_back(Term{ei, cdouble{1.0, 0.0}});
    }
  }
  PolyMap out(dim_, std::move(coords));
  if (!out.is_normalized())
    throw Error(Errc::internal_inconsistency, "snap failed to normalize the map");
  return out;
}

PolyMap operator+(const PolyMap& a, const PolyMap& b) {
  if (a.dim() != b.dim()) throw Error(Errc::invalid_input, "dimension mismatch");
  std::vector<std::vector<Term>> coords(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    coords[i] = a.coord(i);
    coords[i].insert(coords[i].end(), b.coord(i).begin(), b.coord(i).end());
  }
  return PolyMap(a.dim(), std::move(coords));
}

PolyMap operator-(const PolyMap& a, const PolyMap& b) {
  if (a.dim() != b.dim()) throw Error(Errc::invalid_input, "dimension mismatch");
  std::vector<std::vector<Term>> coords(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    coords[i] = a.coord(i);
    for (Term t : b.coord(i)) {
      t.coeff = -t.coeff;
      coords[i].push_back(std::move(t));
    }
  }
  return PolyMap(a.dim(), std::move(coords));
}

bool operator==(const PolyMap& a, const PolyMap& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i) {
    const auto& ta = a.coord(i);
    const auto& tb = b.coord(i);
    if (ta.size() != tb.size()) return false;
    for (std::size_t j = 0; j < ta.size(); ++j)
      if (!(ta[j].exp == tb[j].exp) || ta[j].coeff != tb[j].coeff) return false;
  }
  return true;
}

CVector eval(const PolyMap& f, const CVector& z) {
  if (static_cast<int>(z.size()) != f.dim())
    throw Error(Errc::invalid_input, "dimension mismatch in eval");
  CVector out(f.dim());
  for (int i = 0; i < f.dim(); ++i) out[i] = eval_terms(f.coord(i), z);
  return out;
}

CMatrix jacobian(const PolyMap& f, const CVector& z) {
  if (static_cast<int>(z.size()) != f.dim())
    throw Error(Errc::invalid_input, "dimension mismatch in jacobian");
  const int n = f.dim();
  CMatrix j(n);
  for (int i = 0; i < n; ++i)
    for (int v = 0; v < n; ++v) j(i, v) = eval_terms(differentiate(f.coord(i), v), z);
  return j;
}

CVector second_derivative(const PolyMap& f, const CVector& z, const CVector& v) {
  if (static_cast<int>(z.size()) != f.dim() || v.size() != z.size())
    throw Error(Errc::invalid_input, "dimension mismatch in second_derivative");
  const int n = f.dim();
  CVector out(n, cdouble{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < n; ++a) {
      const std::vector<Term> da = differentiate(f.coord(i), a);
      for (int b = 0; b < n; ++b) {
        const std::vector<Term> dab = differentiate(da, b);
        if (dab.empty()) continue;
        out[i] += eval_terms(dab, z) * v[a] * v[b];
      }
    }
  }
  return out;
}

CVector jacobian_solve(const PolyMap& f, const CVector& z, const CVector& w,
                       double pivot_tol) {
  if (w.size() != z.size())
    throw Error(Errc::invalid_input, "dimension mismatch in jacobian_solve");
  return solve(jacobian(f, z), w, pivot_tol);
}

PolyMap compose(const PolyMap& f, const PolyMap& g, std::optional<int> degree_cap) {
  if (f.dim() != g.dim()) throw Error(Errc::invalid_input, "dimension mismatch in compose");
  const int n = f.dim();
  int cap;
  if (degree_cap) {
    cap = *degree_cap;
  } else {
    const long long blowup =
        static_cast<long long>(std::max(f.max_degree(), 1)) * std::max(g.max_degree(), 1);
    if (blowup > kComposeHardCap)
      throw Error(Errc::resource_error,
                  "composition degree exceeds the hard cap; pass an explicit degree_cap");
    cap = static_cast<int>(blowup);
  }

  // Memoized powers of each coordinate of g, truncated at the cap.
  std::vector<std::vector<std::vector<Term>>> powers(n);
  std::vector<Term> one{Term{MultiIndex{std::vector<int>(n, 0)}, cdouble{1.0, 0.0}}};
  for (int j = 0; j < n; ++j) powers[j].push_back(one);
  auto power = [&](int j, int e) -> const std::vector<Term>& {
    while (static_cast<int>(powers[j].size()) <= e) {
      const auto& prev = powers[j].back();
      powers[j].push_back(multiply_terms(prev, g.coord(j), cap));
    }
    return powers[j][e];
  };

  std::vector<std::vector<Term>> coords(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Term> acc;
    for (const Term& t : f.coord(i)) {
      std::vector<Term> prod = one;
      for (int j = 0; j < n; ++j) {
        const int e = t.exp.exponents[j];
        if (e == 0) continue;
        prod = multiply_terms(prod, power(j, e), cap);
      }
      for (Term p : prod) {
        p.coeff *= t.coeff;
        acc.push_back(std::move(p));
      }
    }
    canonicalize_terms(acc);
    coords[i] = std::move(acc);
  }
  return PolyMap(n, std::move(coords));
}

PolyMap dilate(const PolyMap& f, double r) {
  if (!(r > 0.0 && r <= 1.0))
    throw Error(Errc::range_error, "dilation radius must lie in (0,1]");
  if (!f.is_normalized())
    throw Error(Errc::precondition_violated, "dilate requires a normalized map");
  std::vector<std::vector<Term>> coords(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    coords[i] = f.coord(i);
    for (Term& t : coords[i]) t.coeff *= pow_int(r, t.exp.degree() - 1);
  }
  return PolyMap(f.dim(), std::move(coords));
}

PolyCalculus::PolyCalculus(PolyMap f) : f_(std::move(f)) {
  const int n = f_.dim();
  d1_.resize(n);
  d2_.resize(n);
  for (int i = 0; i < n; ++i) {
    d1_[i].resize(n);
    d2_[i].resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      d1_[i][a] = differentiate(f_.coord(i), a);
      for (int b = 0; b < n; ++b) d2_[i][a * n + b] = differentiate(d1_[i][a], b);
    }
  }
}

CVector PolyCalculus::value(const CVector& z) const { return eval(f_, z); }

CMatrix PolyCalculus::jacobian_at(const CVector& z) const {
  const int n = f_.dim();
  CMatrix j(n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) j(i, a) = eval_terms(d1_[i][a], z);
  return j;
}

CVector PolyCalculus::second_directional(const CVector& z, const CVector& v) const {
  const int n = f_.dim();
  CVector out(n, cdouble{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    cdouble acc{0.0, 0.0};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const auto& terms = d2_[i][a * n + b];
        if (terms.empty()) continue;
        acc += eval_terms(terms, z) * v[a] * v[b];
      }
    out[i] = acc;
  }
  return out;
}

namespace {

std::vector<CVector> structured_sphere_seeds(int n, double radius) {
  std::vector<CVector> seeds;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    CVector e(n, cdouble{0.0, 0.0});
    e[j] = radius;
    seeds.push_back(e);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (const cdouble phase : {cdouble{1.0, 0.0}, cdouble{-1.0, 0.0},
                                  cdouble{0.0, 1.0}, cdouble{0.0, -1.0}}) {
        CVector e(n, cdouble{0.0, 0.0});
        e[j] = radius * inv_sqrt2;
        e[k] = radius * inv_sqrt2 * phase;
        seeds.push_back(e);
      }
  return seeds;
}

}  // namespace

SupNormEstimate sup_norm_on_sphere(const PolyMap& p, double radius,
                                   const SupNormBudget& budget) {
  const int n = p.dim();
  SupNormEstimate est;
  bool empty = true;
  for (int i = 0; i < n && empty; ++i)
    if (!p.coord(i).empty()) empty = false;
  if (empty) {
    est.witness.assign(n, cdouble{0.0, 0.0});
    return est;
  }

  const PolyCalculus calc(p);
  std::vector<CVector> candidates = structured_sphere_seeds(n, radius);
  DirectionStream stream(n, budget.seed);
  for (int i = 0; i < budget.samples; ++i) {
    CVector z = stream.next();
    for (auto& c : z) c *= radius;
    candidates.push_back(std::move(z));
  }

  std::vector<double> values(candidates.size());
  parallel_for(candidates.size(),
               [&](std::size_t i) { values[i] = norm(calc.value(candidates[i])); });
  auto [best_sampled, best_idx] = max_with_index(values);
  est.sampled = best_sampled;
  est.value = best_sampled;
  est.witness = candidates[best_idx];

  // Ascend from the strongest starts.
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t starts =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(budget.restarts, 0)), order.size());
  std::partial_sort(order.begin(), order.begin() + starts, order.end(),
                    [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  const double r2 = radius * radius;
  for (std::size_t s = 0; s < starts; ++s) {
    CVector z = candidates[order[s]];
    double fz = norm_sq(calc.value(z));
    double step = 0.5;
    for (int it = 0; it < budget.iters && step > 1e-14; ++it) {
      const CVector pz = calc.value(z);
      const CMatrix j = calc.jacobian_at(z);
      // Real gradient of ||P||^2 as a complex vector: 2 J(z)^H P(z).
      CVector g(n, cdouble{0.0, 0.0});
      for (int col = 0; col < n; ++col) {
        cdouble acc{0.0, 0.0};
        for (int row = 0; row < n; ++row) acc += std::conj(j(row, col)) * pz[row];
        g[col] = 2.0 * acc;
      }
      const double radial = inner(g, z).real() / r2;
      for (int col = 0; col < n; ++col) g[col] -= radial * z[col];
      const double gn = norm(g);
      if (gn < 1e-300) break;
      bool improved = false;
      while (step > 1e-14) {
        CVector zn(n);
        for (int col = 0; col < n; ++col) zn[col] = z[col] + step * radius * g[col] / gn;
        const double nz = norm(zn);
        for (auto& c : zn) c *= radius / nz;
        const double fn = norm_sq(calc.value(zn));
        if (fn > fz) {
          z = std::move(zn);
          fz = fn;
          improved = true;
          step = std::min(0.5, step * 1.3);
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    const double fv = std::sqrt(fz);
    if (fv > est.value) {
      est.value = fv;
      est.witness = z;
    }
  }
  est.refinement_gap = est.value - est.sampled;
  return est;
}

HomogeneousExpansion homogeneous_parts(const PolyMap& f, const SupNormBudget& budget) {
  if (!f.is_normalized())
    throw Error(Errc::precondition_violated, "homogeneous_parts requires a normalized map");
  HomogeneousExpansion ex;
  for (int d = 2; d <= f.max_degree(); ++d) {
    std::vector<std::vector<Term>> coords(f.dim());
    bool any = false;
    for (int i = 0; i < f.dim(); ++i)
      for (const Term& t : f.coord(i))
        if (t.exp.degree() == d) {
          coords[i].push_back(t);
          any = true;
        }
    (void)any;
    ex.degrees.push_back(d);
    ex.parts.emplace_back(f.dim(), std::move(coords));
    ex.norm_estimates.push_back(sup_norm_on_sphere(ex.parts.back(), 1.0, budget));
  }
  return ex;
}

std::pair<double, double> coefficient_functionals(const PolyMap& f,
                                                  const SupNormBudget& budget) {
  const HomogeneousExpansion ex = homogeneous_parts(f, budget);
  double sum_k = 0.0, sum_k2 = 0.0;
  for (std::size_t i = 0; i < ex.degrees.size(); ++i) {
    const double k = ex.degrees[i];
    sum_k += k * ex.norm_estimates[i].value;
    sum_k2 += k * k * ex.norm_estimates[i].value;
  }
  return {sum_k, sum_k2};
}

}  // namespace ballchain
