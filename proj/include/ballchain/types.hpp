#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballchain {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

inline constexpr double kPi = 3.14159265358979323846;

/// Error categories surfaced by the library.  CLI maps them to exit codes.
enum class Errc {
  invalid_input,
  unsupported,
  range_error,
  resource_error,
  singular_jacobian,
  precondition_violated,
  tolerance_unreachable,
  integration_failure,
  internal_inconsistency,
  io_error,
  usage_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Hermitian inner product <z,w> = sum_j z_j * conj(w_j).
cdouble inner(const CVector& z, const CVector& w);
double norm_sq(const CVector& z);
double norm(const CVector& z);
double distance(const CVector& a, const CVector& b);

CVector operator+(const CVector& a, const CVector& b);
CVector operator-(const CVector& a, const CVector& b);
CVector operator*(cdouble s, const CVector& a);

bool is_finite(const CVector& z);

/// z^k for integer k >= 0 by repeated multiplication (deterministic).
double pow_int(double x, int k);
cdouble pow_int(cdouble x, int k);

}  // namespace ballchain
