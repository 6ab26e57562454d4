#include "ballchain/types.hpp"

#include <cmath>

namespace ballchain {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_input: return "invalid-input";
    case Errc::unsupported: return "unsupported";
    case Errc::range_error: return "range-error";
    case Errc::resource_error: return "resource-error";
    case Errc::singular_jacobian: return "singular-jacobian";
    case Errc::precondition_violated: return "precondition-violated";
    case Errc::tolerance_unreachable: return "tolerance-unreachable";
    case Errc::integration_failure: return "integration-failure";
    case Errc::internal_inconsistency: return "internal-inconsistency";
    case Errc::io_error: return "io-error";
    case Errc::usage_error: return "usage-error";
  }
  return "unknown";
}

cdouble inner(const CVector& z, const CVector& w) {
  cdouble acc = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) acc += z[j] * std::conj(w[j]);
  return acc;
}

double norm_sq(const CVector& z) {
  double acc = 0.0;
  for (const cdouble& c : z) acc += std::norm(c);
  return acc;
}

double norm(const CVector& z) { return std::sqrt(norm_sq(z)); }

double distance(const CVector& a, const CVector& b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::norm(a[j] - b[j]);
  return std::sqrt(acc);
}

CVector operator+(const CVector& a, const CVector& b) {
  CVector r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

CVector operator-(const CVector& a, const CVector& b) {
  CVector r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
  return r;
}

CVector operator*(cdouble s, const CVector& a) {
  CVector r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = s * a[j];
  return r;
}

bool is_finite(const CVector& z) {
  for (const cdouble& c : z)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

double pow_int(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

cdouble pow_int(cdouble x, int k) {
  cdouble r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace ballchain
