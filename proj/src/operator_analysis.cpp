#include "ballchain/operator_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ballchain {

void Operator::validate() const {
  if (dim() < 1) throw Error(Errc::invalid_input, "operator dimension must be >= 1");
  if (!is_finite(entries)) throw Error(Errc::invalid_input, "non-finite operator entries");
  if (exact_entries && exact_entries->size() != static_cast<std::size_t>(dim()) * dim())
    throw Error(Errc::invalid_input, "exact entry count does not match dimension");
}

Operator Operator::diagonal(const std::vector<cdouble>& diag) {
  CMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = diag[i];
  return Operator(m);
}

const char* resonance_kind_name(ResonanceKind kind) {
  switch (kind) {
    case ResonanceKind::nonresonant: return "nonresonant";
    case ResonanceKind::resonant: return "resonant";
    case ResonanceKind::resonant_within_tolerance: return "resonant-within-tolerance";
  }
  return "unknown";
}

std::pair<double, double> numerical_range_extrema(const Operator& a) {
  a.validate();
  const std::vector<double> eigs = hermitian_eigenvalues(hermitian_part(a.entries));
  return {eigs.front(), eigs.back()};
}

namespace {

double rotated_lambda_max(const CMatrix& a, double theta) {
  const cdouble phase{std::cos(theta), std::sin(theta)};
  return hermitian_eigenvalues(hermitian_part(phase * a)).back();
}

}  // namespace

double numerical_radius(const Operator& a, int angle_grid, double tol) {
  a.validate();
  if (angle_grid < 8) throw Error(Errc::invalid_input, "angle_grid must be >= 8");
  if (!(tol > 0.0)) throw Error(Errc::invalid_input, "tol must be positive");
  const CMatrix& m = a.entries;
  const int n = angle_grid;
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = rotated_lambda_max(m, 2.0 * kPi * i / n);

  double best = -1e308;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < n; ++i) {
    const double prev = vals[(i + n - 1) % n];
    const double next = vals[(i + 1) % n];
    if (vals[i] < prev || vals[i] < next) continue;  // refine grid-local maxima only
    double lo = 2.0 * kPi * (i - 1) / n;
    double hi = 2.0 * kPi * (i + 1) / n;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = rotated_lambda_max(m, x1);
    double f2 = rotated_lambda_max(m, x2);
    for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = rotated_lambda_max(m, x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = rotated_lambda_max(m, x1);
      }
    }
    best = std::max({best, vals[i], f1, f2});
  }
  return best;
}

SpectralResult spectral_abscissa(const Operator& a) {
  a.validate();
  const int n = a.dim();
  if (n > kDimCap)
    throw Error(Errc::unsupported, "operator dimension above the small-n cap");

  SpectralResult out;
  bool triangular = true;
  for (int i = 0; i < n && triangular; ++i)
    for (int j = 0; j < i; ++j)
      if (a.entries(i, j) != cdouble{0.0, 0.0}) {
        triangular = false;
        break;
      }
  if (triangular) {
    out.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) out.eigenvalues[i] = a.entries(i, i);
  } else {
    out.eigenvalues = eigenvalues(a.entries);
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
              [](const cdouble& x, const cdouble& y) {
                if (x.real() != y.real()) return x.real() > y.real();
                return x.imag() > y.imag();
              });
  }
  out.kplus = -1e308;
  out.kminus = 1e308;
  for (const cdouble& l : out.eigenvalues) {
    out.kplus = std::max(out.kplus, l.real());
    out.kminus = std::min(out.kminus, l.real());
  }

  // Consistency against k_+ = lim log||e^{tA}||/t, evaluated at t = 2^14 by
  // repeated squaring with norm tracking.  The (n-1) log(t)/t allowance
  // covers polynomial growth from Jordan blocks.
  const int kSquarings = 14;
  const double t = std::pow(2.0, kSquarings);
  CMatrix b = matrix_exponential(a.entries);
  double log_norm = 0.0;
  for (int j = 0; j < kSquarings; ++j) {
    const double nb = operator_norm(b);
    if (!(nb > 0.0))
      throw Error(Errc::internal_inconsistency, "vanishing norm in abscissa check");
    log_norm = 2.0 * (log_norm + std::log(nb));
    b = (cdouble{1.0 / nb, 0.0} * b);
    b = b * b;
  }
  log_norm += std::log(operator_norm(b));
  const double estimate = log_norm / t;
  const double slack = 1e-3 + (n - 1) * std::log(t) / t;
  if (std::abs(estimate - out.kplus) > slack)
    throw Error(Errc::internal_inconsistency,
                "spectral abscissa disagrees with the exponential-growth limit");
  return out;
}

CMatrix matrix_exp(const Operator& a, double t) {
  a.validate();
  if (!std::isfinite(t)) throw Error(Errc::invalid_input, "non-finite time");
  return matrix_exponential(cdouble{t, 0.0} * a.entries);
}

namespace {

struct ResonanceSearch {
  const std::vector<cdouble>& eigs;
  double tol;
  double kplus;
  int bound;
  long long nodes = 0;
  std::optional<ResonanceWitness> complex_hit;
  std::optional<ResonanceWitness> real_hit;

  void scan(std::vector<int>& m, int pos, int total, double re_sum, cdouble sum) {
    if (++nodes > 50'000'000)
      throw Error(Errc::resource_error, "resonance enumeration too large");
    const int n = static_cast<int>(eigs.size());
    if (pos == n) {
      if (total < 2) return;
      for (int s = 0; s < n && (!complex_hit || !real_hit); ++s) {
        if (!complex_hit &&
            std::abs(eigs[s] - sum) <= tol * (1.0 + std::abs(eigs[s])))
          complex_hit = ResonanceWitness{s + 1, m};
        if (!real_hit &&
            std::abs(eigs[s].real() - re_sum) <= tol * (1.0 + std::abs(eigs[s].real())))
          real_hit = ResonanceWitness{s + 1, m};
      }
      return;
    }
    for (int c = 0; total + c <= bound; ++c) {
      const double re_next = re_sum + c * eigs[pos].real();
      // Any resonance needs sum(m_j Re lambda_j) <= k_+ up to tolerance.
      if (re_next > kplus + tol * (1.0 + kplus) + 1e-12) break;
      m[pos] = c;
      scan(m, pos + 1, total + c, re_next, sum + static_cast<double>(c) * eigs[pos]);
      if (complex_hit && real_hit) break;
    }
    m[pos] = 0;
  }
};

}  // namespace

ResonanceVerdict detect_resonance(const std::vector<cdouble>& eigs, double tol) {
  if (eigs.empty()) throw Error(Errc::invalid_input, "empty eigenvalue list");
  double kplus = -1e308, min_re = 1e308;
  for (const cdouble& l : eigs) {
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
      throw Error(Errc::invalid_input, "non-finite eigenvalue");
    kplus = std::max(kplus, l.real());
    min_re = std::min(min_re, l.real());
  }
  if (!(min_re > 0.0))
    throw Error(Errc::precondition_violated,
                "resonance search requires Re(lambda_j) > 0 for every eigenvalue");

  ResonanceVerdict v;
  v.search_bound = static_cast<int>(std::floor(kplus / min_re)) + 1;
  ResonanceSearch search{eigs, tol, kplus, v.search_bound, 0, {}, {}};
  std::vector<int> m(eigs.size(), 0);
  search.scan(m, 0, 0, 0.0, cdouble{0.0, 0.0});
  if (search.complex_hit) {
    v.kind = ResonanceKind::resonant_within_tolerance;
    v.witness = search.complex_hit;
  }
  v.real_resonant = search.real_hit.has_value();
  v.real_witness = search.real_hit;
  return v;
}

ResonanceVerdict detect_resonance_exact(const std::vector<GaussianRational>& eigs) {
  if (eigs.empty()) throw Error(Errc::invalid_input, "empty eigenvalue list");
  const int n = static_cast<int>(eigs.size());
  Rational kplus = eigs[0].re, min_re = eigs[0].re;
  for (const auto& l : eigs) {
    if (kplus < l.re) kplus = l.re;
    if (l.re < min_re) min_re = l.re;
  }
  if (!(Rational(0) < min_re))
    throw Error(Errc::precondition_violated,
                "resonance search requires Re(lambda_j) > 0 for every eigenvalue");

  // floor(kplus / min_re) + 1 in exact arithmetic
  __int128 num = static_cast<__int128>(kplus.num) * min_re.den;
  __int128 den = static_cast<__int128>(kplus.den) * min_re.num;
  const int bound = static_cast<int>(num / den) + 1;

  ResonanceVerdict v;
  v.search_bound = bound;
  std::vector<int> m(n, 0);
  long long nodes = 0;
  std::function<void(int, int, Rational, GaussianRational)> scan =
      [&](int pos, int total, Rational re_sum, GaussianRational sum) {
        if (++nodes > 50'000'000)
          throw Error(Errc::resource_error, "resonance enumeration too large");
        if (pos == n) {
          if (total < 2) return;
          for (int s = 0; s < n && (!v.witness || !v.real_witness); ++s) {
            if (!v.witness && eigs[s] == sum) v.witness = ResonanceWitness{s + 1, m};
            if (!v.real_witness && eigs[s].re == re_sum)
              v.real_witness = ResonanceWitness{s + 1, m};
          }
          return;
        }
        for (int c = 0; total + c <= bound; ++c) {
          const Rational re_next = re_sum + Rational(c) * eigs[pos].re;
          if (kplus < re_next) break;
          m[pos] = c;
          scan(pos + 1, total + c, re_next, sum + c * eigs[pos]);
          if (v.witness && v.real_witness) break;
        }
        m[pos] = 0;
      };
  scan(0, 0, Rational(0), GaussianRational{});
  if (v.witness) v.kind = ResonanceKind::resonant;
  v.real_resonant = v.real_witness.has_value();
  return v;
}

OperatorProfile operator_profile(const Operator& a) {
  a.validate();
  if (a.dim() > kDimCap)
    throw Error(Errc::unsupported, "operator dimension above the small-n cap");

  OperatorProfile p;
  std::tie(p.m, p.k) = numerical_range_extrema(a);
  const SpectralResult sr = spectral_abscissa(a);
  p.kplus = sr.kplus;
  p.kminus = sr.kminus;
  p.eigenvalues = sr.eigenvalues;
  p.vr = numerical_radius(a);
  p.opnorm = operator_norm(a.entries);

  const double tau = kLinTol;
  const bool chain_ok = p.m <= p.kplus + tau && p.kplus <= p.vr + tau &&
                        p.vr <= p.opnorm + tau && p.opnorm <= 2.0 * p.vr + tau &&
                        p.m <= p.kminus + tau && p.kminus <= p.kplus + tau;
  if (!chain_ok)
    throw Error(Errc::internal_inconsistency,
                "operator profile violates the inequality chain");
  return p;
}

}  // namespace ballchain
