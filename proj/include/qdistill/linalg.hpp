#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qdistill {

using Complex = std::complex<double>;

// Tolerances shared across the library. All inputs are exact rationals or
// radicals, so deviations beyond these are implementation bugs, not physics.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEqualityTol = 1e-12;

/// Dense complex matrix, row-major, value semantics. Sized for this
/// artifact's needs (nothing here exceeds 18x18 or 81x81 transients).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;

  /// Max entrywise |m - m†|; 0 for non-square input is never asked for.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_defect() <= tol; }

  bool approx_equal(const ComplexMatrix& other, double tol = kEqualityTol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Ordered subsystem dimensions with distinct names. Fixes the tensor
/// convention once: basis index n decodes big-endian, first label slowest.
/// The canonical signature for this artifact is (A:3, B:3, C:2), so
/// n = iA*(dB*dC) + iB*dC + iC.
struct DimSignature {
  std::vector<std::string> labels;
  std::vector<std::size_t> dims;

  DimSignature() = default;
  DimSignature(std::vector<std::string> labels, std::vector<std::size_t> dims);

  std::size_t size() const { return labels.size(); }
  std::size_t total_dim() const;
  std::size_t index_of(const std::string& label) const;  // throws on unknown label
  std::size_t dim_of(const std::string& label) const;
  bool has(const std::string& label) const;

  std::vector<std::size_t> decode(std::size_t n) const;
  std::size_t encode(const std::vector<std::size_t>& indices) const;

  /// Signature over a label subset, in this signature's order.
  DimSignature subset(const std::vector<std::string>& keep) const;
  /// Signature with the given labels removed.
  DimSignature without(const std::vector<std::string>& drop) const;
};

/// Kronecker product, m1 slower-varying.
ComplexMatrix tensor(const ComplexMatrix& m1, const ComplexMatrix& m2);

/// Lift an operator acting on `target_labels` (in that order) to the full
/// space described by `sig`, identity on the rest. Targets need not be
/// contiguous: acting on (A,C) inside (A,B,C) permutes across B.
ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<std::string>& target_labels,
                             const DimSignature& sig);

/// Trace out `traced_labels`; remaining subsystems keep their order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const DimSignature& sig,
                            const std::vector<std::string>& traced_labels);

/// Transpose the listed subsystems only (element rule on that side).
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const DimSignature& sig,
                                const std::vector<std::string>& transposed_labels);
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const DimSignature& sig,
                                const std::string& transposed_label);

/// Full real spectrum of a Hermitian matrix, ascending. Cyclic Jacobi with
/// complex rotations; off-diagonal Frobenius threshold 1e-13, at most 100
/// sweeps. Rejects input whose hermiticity defect exceeds 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Trace norm of a Hermitian matrix (sum of |eigenvalues|).
double trace_norm(const ComplexMatrix& m);

}  // namespace qdistill
