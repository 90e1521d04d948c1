#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace entmono {

using Complex = std::complex<double>;
using Dims = std::vector<std::size_t>;

/// Largest row or column count a ComplexMatrix may have.
inline constexpr std::size_t kMaxSide = 1024;

/// Dense row-major complex matrix.
///
/// Entries are always finite; constructors reject NaN and Inf. The kernel is
/// sized for the small systems this library handles (sides of at most 32 in
/// practice, 1024 as a hard limit).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix column(std::span<const Complex> v);
  /// Rank-one projector |v><v|.
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  std::vector<Complex> col(std::size_t c) const;
  void set_col(std::size_t c, std::span<const Complex> v);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v);

/// Kronecker product a (x) b. Throws SizeError past kMaxSide.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);

/// Reduced matrix on the subsystems listed in `keep` (0-based, any order;
/// the result keeps the original subsystem order). Trace is preserved.
ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims,
                            std::vector<std::size_t> keep);

std::size_t product(const Dims& dims);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);
double frobenius_norm(const ComplexMatrix& m);
/// max_ij |h_ij - conj(h_ji)|
double hermiticity_defect(const ComplexMatrix& h);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);
/// <v|m|v>
Complex expectation(const ComplexMatrix& m, std::span<const Complex> v);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]
};

inline constexpr double kHermitianGate = 1e-10;
inline constexpr double kJacobiTolerance = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Inputs whose Hermiticity defect is at most kHermitianGate are symmetrized
/// first; larger defects raise ArgumentError. Deterministic: fixed sweep
/// order, no pivoting. Raises NumericError after kJacobiMaxSweeps sweeps.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

/// Function of a Hermitian matrix via its spectrum, e.g. the PSD square root.
ComplexMatrix hermitian_apply(const ComplexMatrix& h, double (*fn)(double));

/// QR retraction: orthonormal columns spanning the same flag as the input
/// (Gram-Schmidt with re-orthogonalization, R has a positive diagonal).
/// Throws NumericError if the columns are numerically dependent.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

}  // namespace entmono
