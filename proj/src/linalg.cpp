#include "ballchain/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ballchain {

CMatrix::CMatrix(int n) : n_(n) {
  if (n < 0 || n > kMaxDim)
    throw Error(Errc::unsupported, "matrix dimension above the small-n cap");
}

CMatrix::CMatrix(int n, const std::vector<cdouble>& entries) : CMatrix(n) {
  if (entries.size() != static_cast<std::size_t>(n) * n)
    throw Error(Errc::invalid_input, "matrix entry count does not match dimension");
  std::copy(entries.begin(), entries.end(), a_.begin());
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  const int n = a.dim();
  CMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cdouble aik = a(i, k);
      if (aik == cdouble{0.0, 0.0}) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CMatrix operator*(cdouble s, const CMatrix& a) {
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = s * a(i, j);
  return r;
}

CVector operator*(const CMatrix& a, const CVector& x) {
  const int n = a.dim();
  CVector r(n, cdouble{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    cdouble acc = 0.0;
    for (int j = 0; j < n; ++j) acc += a(i, j) * x[j];
    r[i] = acc;
  }
  return r;
}

bool operator==(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

CMatrix hermitian_part(const CMatrix& a) {
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return r;
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const cdouble& c : a) m = std::max(m, std::abs(c));
  return m;
}

double frobenius_norm(const CMatrix& a) {
  double acc = 0.0;
  for (const cdouble& c : a) acc += std::norm(c);
  return std::sqrt(acc);
}

bool is_finite(const CMatrix& a) {
  for (const cdouble& c : a)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  const int n = h.dim();
  CMatrix a = hermitian_part(h);
  if (n == 1) return {a(0, 0).real()};

  const double scale = std::max(frobenius_norm(a), 1e-300);
  const double stop = 1e-15 * scale;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) <= stop) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= 1e-2 * stop / n) continue;
        const cdouble phase = a(p, q) / g;  // a_pq = g * e^{i phi}
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (alpha - beta) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary G = [[c, -s*phase],[s*conj(phase), c]] on columns (p,q).
        for (int k = 0; k < n; ++k) {
          const cdouble akp = a(k, p);
          const cdouble akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(phase) * akq;
          a(k, q) = -s * phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cdouble apk = a(p, k);
          const cdouble aqk = a(q, k);
          a(p, k) = c * apk + s * phase * aqk;
          a(q, k) = -s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cdouble{a(p, p).real(), 0.0};
        a(q, q) = cdouble{a(q, q).real(), 0.0};
      }
    }
  }
  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = a(i, i).real();
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

namespace {

// Householder reduction to upper Hessenberg form, eigenvalues preserved.
void hessenberg(CMatrix& a) {
  const int n = a.dim();
  for (int k = 0; k + 2 < n; ++k) {
    double colnorm = 0.0;
    for (int i = k + 1; i < n; ++i) colnorm += std::norm(a(i, k));
    colnorm = std::sqrt(colnorm);
    if (colnorm <= 1e-300) continue;
    cdouble x0 = a(k + 1, k);
    cdouble phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cdouble{1.0, 0.0};
    cdouble alpha = -phase * colnorm;
    // v = x - alpha e1, normalized.
    std::vector<cdouble> v(n, cdouble{0.0, 0.0});
    for (int i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    double vn = 0.0;
    for (int i = k + 1; i < n; ++i) vn += std::norm(v[i]);
    vn = std::sqrt(vn);
    if (vn <= 1e-300) continue;
    for (int i = k + 1; i < n; ++i) v[i] /= vn;
    // A <- (I - 2 v v^H) A
    for (int j = 0; j < n; ++j) {
      cdouble dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= 2.0;
      for (int i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
    }
    // A <- A (I - 2 v v^H)
    for (int i = 0; i < n; ++i) {
      cdouble dot = 0.0;
      for (int j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
      dot *= 2.0;
      for (int j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
    }
  }
}

void eig2x2(cdouble a, cdouble b, cdouble c, cdouble d, cdouble& l1, cdouble& l2) {
  const cdouble tr = a + d;
  const cdouble det = a * d - b * c;
  const cdouble disc = std::sqrt(0.25 * tr * tr - det);
  l1 = 0.5 * tr + disc;
  l2 = 0.5 * tr - disc;
}

cdouble wilkinson_shift(const CMatrix& h, int hi) {
  const cdouble a = h(hi - 1, hi - 1);
  const cdouble b = h(hi - 1, hi);
  const cdouble c = h(hi, hi - 1);
  const cdouble d = h(hi, hi);
  cdouble l1, l2;
  eig2x2(a, b, c, d, l1, l2);
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

// One explicit shifted QR step on the Hessenberg window [lo, hi].
void qr_step(CMatrix& h, int lo, int hi, cdouble mu) {
  const int m = hi - lo + 1;
  if (m < 2) return;
  std::vector<double> cs(m - 1);
  std::vector<cdouble> sn(m - 1);
  for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
  for (int i = lo; i < hi; ++i) {
    const cdouble x = h(i, i);
    const cdouble y = h(i + 1, i);
    const double rho = std::sqrt(std::norm(x) + std::norm(y));
    double c;
    cdouble s;
    if (rho <= 1e-300 || std::abs(x) <= 1e-300) {
      c = 0.0;
      s = cdouble{1.0, 0.0};
    } else {
      c = std::abs(x) / rho;
      s = (x / std::abs(x)) * std::conj(y) / rho;
    }
    cs[i - lo] = c;
    sn[i - lo] = s;
    // Rows i, i+1 of the window: G = [[c, s],[-conj(s), c]].
    for (int j = i; j <= hi; ++j) {
      const cdouble hij = h(i, j);
      const cdouble hij1 = h(i + 1, j);
      h(i, j) = c * hij + s * hij1;
      h(i + 1, j) = -std::conj(s) * hij + c * hij1;
    }
  }
  // Right multiplication by G_i^H on columns (i, i+1).
  for (int i = lo; i < hi; ++i) {
    const double c = cs[i - lo];
    const cdouble s = sn[i - lo];
    const int top = std::min(i + 2, hi);
    for (int k = lo; k <= top; ++k) {
      const cdouble hki = h(k, i);
      const cdouble hki1 = h(k, i + 1);
      h(k, i) = c * hki + std::conj(s) * hki1;
      h(k, i + 1) = -s * hki + c * hki1;
    }
  }
  for (int i = lo; i <= hi; ++i) h(i, i) += mu;
}

}  // namespace

std::vector<cdouble> eigenvalues(const CMatrix& a) {
  const int n = a.dim();
  if (!is_finite(a)) throw Error(Errc::invalid_input, "non-finite matrix entries");
  if (n == 0) return {};
  if (n == 1) return {a(0, 0)};
  if (n == 2) {
    cdouble l1, l2;
    eig2x2(a(0, 0), a(0, 1), a(1, 0), a(1, 1), l1, l2);
    return {l1, l2};
  }

  CMatrix h = a;
  hessenberg(h);
  const double scale = std::max(max_abs(h), 1e-300);
  std::vector<cdouble> eigs;
  eigs.reserve(n);
  int hi = n - 1;
  int iter = 0;
  int guard = 0;
  while (hi >= 0) {
    if (++guard > 400 * n)
      throw Error(Errc::internal_inconsistency, "QR iteration failed to converge");
    if (hi == 0) {
      eigs.push_back(h(0, 0));
      --hi;
      continue;
    }
    // Deflate negligible subdiagonals from the bottom.
    int lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double ref = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (sub <= 1e-15 * ref + 1e-300 * scale) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eigs.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (hi - lo == 1) {
      cdouble l1, l2;
      eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), l1, l2);
      eigs.push_back(l1);
      eigs.push_back(l2);
      hi = lo - 1;
      iter = 0;
      continue;
    }
    cdouble mu = wilkinson_shift(h, hi);
    ++iter;
    if (iter > 0 && iter % 24 == 0) {
      // Exceptional shift to escape rare stagnation, deterministic.
      mu = h(hi, hi) + cdouble{1.0, 0.5} * std::abs(h(hi, hi - 1));
    }
    qr_step(h, lo, hi, mu);
  }
  return eigs;
}

double operator_norm(const CMatrix& a) {
  if (a.dim() == 0) return 0.0;
  const CMatrix gram = adjoint(a) * a;
  const std::vector<double> eigs = hermitian_eigenvalues(gram);
  return std::sqrt(std::max(0.0, eigs.back()));
}

LuFactors lu_factor(const CMatrix& a) {
  const int n = a.dim();
  LuFactors f;
  f.lu = a;
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  f.min_pivot = std::numeric_limits<double>::infinity();
  CMatrix& m = f.lu;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(m(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    f.min_pivot = std::min(f.min_pivot, std::abs(m(k, k)));
    if (std::abs(m(k, k)) <= 0.0) continue;
    for (int i = k + 1; i < n; ++i) {
      const cdouble l = m(i, k) / m(k, k);
      m(i, k) = l;
      for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  if (n == 0) f.min_pivot = 0.0;
  return f;
}

CVector lu_solve(const LuFactors& f, const CVector& b) {
  const int n = f.lu.dim();
  CVector x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

CVector solve(const CMatrix& a, const CVector& b, double pivot_tol) {
  if (a.dim() != static_cast<int>(b.size()))
    throw Error(Errc::invalid_input, "dimension mismatch in solve");
  const LuFactors f = lu_factor(a);
  if (f.min_pivot < pivot_tol)
    throw Error(Errc::singular_jacobian, "singular matrix: pivot below threshold");
  CVector x = lu_solve(f, b);
  // One step of iterative refinement.
  CVector r = b - a * x;
  CVector dx = lu_solve(f, r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

CMatrix inverse(const CMatrix& a, double pivot_tol) {
  const int n = a.dim();
  const LuFactors f = lu_factor(a);
  if (f.min_pivot < pivot_tol)
    throw Error(Errc::singular_jacobian, "singular matrix: pivot below threshold");
  CMatrix inv(n);
  for (int j = 0; j < n; ++j) {
    CVector e(n, cdouble{0.0, 0.0});
    e[j] = 1.0;
    CVector col = lu_solve(f, e);
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

CMatrix matrix_exponential(const CMatrix& a) {
  const int n = a.dim();
  if (!is_finite(a)) throw Error(Errc::invalid_input, "non-finite matrix entries");
  double nrm = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(a(i, j));
    nrm = std::max(nrm, row);
  }
  if (nrm > 600.0)
    throw Error(Errc::range_error, "matrix exponential argument too large");
  int s = 0;
  double scaled = nrm;
  while (scaled > 0.25) {
    scaled *= 0.5;
    ++s;
  }
  CMatrix c = (cdouble{1.0, 0.0} / std::pow(2.0, s)) * a;
  CMatrix result = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 120; ++k) {
    term = (cdouble{1.0 / k, 0.0}) * (term * c);
    result = result + term;
    if (max_abs(term) <= 1e-17 * std::max(1.0, max_abs(result))) break;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

}  // namespace ballchain
