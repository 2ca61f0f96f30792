#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spinscat {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Dense square complex matrix, row-major. Sized for the small systems this
/// library solves (12x12 scattering systems, 4x4 density matrices).
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}
  ComplexMatrix(std::size_t n, std::initializer_list<cplx> row_major);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> d);

  std::size_t size() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  cplx trace() const;
  double norm_inf() const;
  /// max_ij |a_ij - conj(a_ji)|
  double hermiticity_defect() const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> x);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a);

private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

double norm_inf(std::span<const cplx> v);

/// LU factorization with row equilibration (each row scaled by its infinity
/// norm) followed by partial pivoting.
class LuFactorization {
public:
  /// Throws SingularMatrix when a pivot falls below 1e-300 after
  /// equilibration.
  explicit LuFactorization(const ComplexMatrix& a);

  ComplexVector solve(std::span<const cplx> b) const;
  /// ||A^{-1}||_inf of the original (unequilibrated) matrix, by solving for
  /// every column of the inverse.
  double inverse_norm_inf() const;
  std::size_t size() const { return lu_.size(); }

private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  std::vector<double> row_scale_;
};

ComplexVector lu_solve(const ComplexMatrix& a, std::span<const cplx> b);

/// kappa_inf(A) = ||A||_inf ||A^{-1}||_inf. Exact up to rounding for the
/// sizes used here.
double condition_estimate(const ComplexMatrix& a);

struct HermitianEigen {
  std::vector<double> values; // descending
  ComplexMatrix vectors;      // column k pairs with values[k]
};

/// Cyclic Jacobi on a Hermitian matrix (symmetrized internally). Entries
/// that are exactly zero are never rotated into, so block-structured input
/// keeps its structure.
HermitianEigen hermitian_eigen(const ComplexMatrix& h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-8, 0) are treated as rounding noise and clamped to zero; anything
/// more negative throws NotPositiveSemidefinite.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

} // namespace spinscat
