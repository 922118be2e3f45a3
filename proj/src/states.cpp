#include "qdistill/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qdistill {

namespace {

constexpr double kNormTol = 1e-12;

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

// |i>|j> on the 3x3 pair, amplitudes given per qutrit.
Ket product_ket(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b) {
  std::vector<Complex> amp(9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) amp[3 * i + j] = a[i] * b[j];
  return Ket(std::move(amp), sig_ab());
}

}  // namespace

DimSignature sig_ab() { return DimSignature({kLabelA, kLabelB}, {3, 3}); }
DimSignature sig_c() { return DimSignature({kLabelC}, {2}); }
DimSignature sig_abc() { return DimSignature({kLabelA, kLabelB, kLabelC}, {3, 3, 2}); }

Ket::Ket(std::vector<Complex> amplitudes_in, DimSignature sig_in)
    : amplitudes(std::move(amplitudes_in)), sig(std::move(sig_in)) {
  require(amplitudes.size() == sig.total_dim(), "Ket: dimension does not match signature");
  double n2 = 0.0;
  for (const Complex& z : amplitudes) n2 += std::norm(z);
  require(std::abs(std::sqrt(n2) - 1.0) <= kNormTol, "Ket: vector is not normalized");
}

Complex Ket::inner(const Ket& other) const {
  require(dim() == other.dim(), "Ket::inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    s += std::conj(amplitudes[i]) * other.amplitudes[i];
  return s;
}

ComplexMatrix Ket::outer() const {
  ComplexMatrix m(dim(), dim());
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c) m(r, c) = amplitudes[r] * std::conj(amplitudes[c]);
  return m;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix_in, DimSignature sig_in)
    : matrix(std::move(matrix_in)), sig(std::move(sig_in)) {
  require(matrix.is_square() && matrix.rows() == sig.total_dim(),
          "DensityMatrix: dimension does not match signature");
  require(matrix.hermiticity_defect() <= kHermitianTol, "DensityMatrix: not Hermitian");
  require(std::abs(matrix.trace().real() - 1.0) <= kHermitianTol &&
              std::abs(matrix.trace().imag()) <= kHermitianTol,
          "DensityMatrix: trace is not one");
  const auto eig = hermitian_eigenvalues(matrix);
  require(eig.front() >= -kHermitianTol, "DensityMatrix: negative eigenvalue");
}

std::size_t DensityMatrix::rank(double tol) const {
  std::size_t r = 0;
  for (double e : hermitian_eigenvalues(matrix))
    if (e > tol) ++r;
  return r;
}

std::array<Ket, 5> tiles_vectors() {
  const double s = 1.0 / std::sqrt(2.0);
  const double t = 1.0 / 3.0;
  return {product_ket({1, 0, 0}, {s, -s, 0}),   // |0>(|0>-|1>)/sqrt2
          product_ket({s, -s, 0}, {0, 0, 1}),   // (|0>-|1>)|2>/sqrt2
          product_ket({0, 0, 1}, {0, s, -s}),   // |2>(|1>-|2>)/sqrt2
          product_ket({0, s, -s}, {1, 0, 0}),   // (|1>-|2>)|0>/sqrt2
          product_ket({t, t, t}, {1, 1, 1})};   // uniform/3
}

Ket phi_plus() {
  const double s = 1.0 / std::sqrt(3.0);
  std::vector<Complex> amp(9, 0.0);
  amp[0] = s;
  amp[4] = s;
  amp[8] = s;
  return Ket(std::move(amp), sig_ab());
}

DensityMatrix make_chi1() {
  ComplexMatrix m = ComplexMatrix::identity(9);
  for (const Ket& v : tiles_vectors()) m -= v.outer();
  m *= 0.25;
  return DensityMatrix(std::move(m), sig_ab());
}

DensityMatrix make_chi2(double a) {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::domain_error("chi2: parameter a must lie in [0,1]");
  ComplexMatrix m(9, 9);
  for (std::size_t i : {0u, 1u, 2u, 3u, 4u, 5u, 7u}) m(i, i) = a;
  m(6, 6) = (1.0 + a) / 2.0;
  m(8, 8) = (1.0 + a) / 2.0;
  m(0, 4) = m(4, 0) = a;
  m(0, 8) = m(8, 0) = a;
  m(4, 8) = m(8, 4) = a;
  const double corner = std::sqrt(1.0 - a * a) / 2.0;
  m(6, 8) = m(8, 6) = corner;
  m *= 1.0 / (1.0 + 8.0 * a);
  return DensityMatrix(std::move(m), sig_ab());
}

DensityMatrix make_chi3(double b) {
  if (!(b >= 2.0 && b <= 5.0))
    throw std::domain_error("chi3: parameter b must lie in [2,5]");
  ComplexMatrix m = phi_plus().outer();
  m *= 2.0;
  // Sigma+ on |01>,|12>,|20>; Sigma- is the explicit index swap |10>,|21>,|02>.
  const double wp = b / 3.0;
  const double wm = (5.0 - b) / 3.0;
  for (std::size_t i : {1u, 5u, 6u}) m(i, i) += wp;
  for (std::size_t i : {3u, 7u, 2u}) m(i, i) += wm;
  m *= 1.0 / 7.0;
  return DensityMatrix(std::move(m), sig_ab());
}

DensityMatrix make_ancilla() {
  ComplexMatrix m(2, 2);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
  return DensityMatrix(std::move(m), sig_c());
}

std::string to_string(EntanglementClass cls) {
  switch (cls) {
    case EntanglementClass::Separable: return "separable";
    case EntanglementClass::Bound: return "bound-entangled";
    case EntanglementClass::Free: return "free-entangled";
  }
  return "unknown";
}

StateClassification classify_chi1() { return {EntanglementClass::Bound, false}; }

StateClassification classify_chi2(double a) {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::domain_error("chi2: parameter a must lie in [0,1]");
  const bool edge = (a == 0.0 || a == 1.0);
  return {edge ? EntanglementClass::Separable : EntanglementClass::Bound, edge};
}

StateClassification classify_chi3(double b) {
  if (!(b >= 2.0 && b <= 5.0))
    throw std::domain_error("chi3: parameter b must lie in [2,5]");
  if (b <= 3.0) return {EntanglementClass::Separable, b == 2.0 || b == 3.0};
  if (b <= 4.0) return {EntanglementClass::Bound, b == 4.0};
  return {EntanglementClass::Free, b == 5.0};
}

}  // namespace qdistill
