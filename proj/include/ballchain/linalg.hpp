#pragma once

#include <array>
#include <vector>

#include "ballchain/types.hpp"

namespace ballchain {

/// Dense square complex matrix, row major.  Everything in this project is
/// desk scale (n <= 8), so storage is inline (no heap traffic in the margin
/// and flow kernels) and the solvers below are plain textbook algorithms.
class CMatrix {
 public:
  static constexpr int kMaxDim = 8;

  CMatrix() = default;
  explicit CMatrix(int n);
  CMatrix(int n, const std::vector<cdouble>& entries);

  static CMatrix identity(int n);

  int dim() const { return n_; }
  cdouble& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const cdouble& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }
  const cdouble* begin() const { return a_.data(); }
  const cdouble* end() const { return a_.data() + static_cast<std::size_t>(n_) * n_; }

 private:
  int n_ = 0;
  std::array<cdouble, kMaxDim * kMaxDim> a_{};
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cdouble s, const CMatrix& a);
CVector operator*(const CMatrix& a, const CVector& x);
bool operator==(const CMatrix& a, const CMatrix& b);

CMatrix adjoint(const CMatrix& a);
CMatrix hermitian_part(const CMatrix& a);  // (A + A*)/2
double max_abs(const CMatrix& a);
double frobenius_norm(const CMatrix& a);
bool is_finite(const CMatrix& a);

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic complex Jacobi
/// rotations.  The input is symmetrized before iterating.
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

/// Eigenvalues of a general complex matrix: closed form for n <= 2,
/// Householder Hessenberg reduction plus Wilkinson-shifted QR otherwise.
/// Order is unspecified.
std::vector<cdouble> eigenvalues(const CMatrix& a);

/// Spectral norm, sqrt of the largest eigenvalue of A*A.
double operator_norm(const CMatrix& a);

struct LuFactors {
  CMatrix lu;
  std::array<int, CMatrix::kMaxDim> perm{};
  double min_pivot = 0.0;
};

LuFactors lu_factor(const CMatrix& a);
CVector lu_solve(const LuFactors& f, const CVector& b);

/// Solves A x = b with partial pivoting and one step of iterative
/// refinement.  Throws Errc::singular_jacobian when the smallest pivot is
/// below pivot_tol.
CVector solve(const CMatrix& a, const CVector& b, double pivot_tol = 1e-12);

/// Matrix inverse via LU; throws on pivots below pivot_tol.
CMatrix inverse(const CMatrix& a, double pivot_tol = 1e-12);

/// exp(A) by scaling and squaring with a truncated Taylor series.
CMatrix matrix_exponential(const CMatrix& a);

}  // namespace ballchain
