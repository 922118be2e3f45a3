#include "qdistill/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace qdistill {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
  require(rows > 0 && cols > 0, "ComplexMatrix: dimensions must be positive");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  require(is_square(), "trace: matrix must be square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  require(is_square(), "hermiticity_defect: matrix must be square");
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (std::abs(data_[i] - other.data_[i]) > tol) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "operator+=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "operator-=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (Complex& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require(lhs.cols_ == rhs.rows_, "operator*: inner dimensions mismatch");
  ComplexMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t r = 0; r < lhs.rows_; ++r) {
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Complex a = lhs(r, k);
      if (a == Complex{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

DimSignature::DimSignature(std::vector<std::string> labels_in, std::vector<std::size_t> dims_in)
    : labels(std::move(labels_in)), dims(std::move(dims_in)) {
  require(labels.size() == dims.size(), "DimSignature: labels/dims length mismatch");
  require(!labels.empty(), "DimSignature: empty signature");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) require(seen.insert(l).second, "DimSignature: duplicate label");
  for (std::size_t d : dims) require(d > 0, "DimSignature: dimensions must be positive");
}

std::size_t DimSignature::total_dim() const {
  std::size_t d = 1;
  for (std::size_t x : dims) d *= x;
  return d;
}

std::size_t DimSignature::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw std::invalid_argument("DimSignature: unknown label '" + label + "'");
}

std::size_t DimSignature::dim_of(const std::string& label) const { return dims[index_of(label)]; }

bool DimSignature::has(const std::string& label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

std::vector<std::size_t> DimSignature::decode(std::size_t n) const {
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    idx[i] = n % dims[i];
    n /= dims[i];
  }
  return idx;
}

std::size_t DimSignature::encode(const std::vector<std::size_t>& indices) const {
  require(indices.size() == dims.size(), "encode: index count mismatch");
  std::size_t n = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) n = n * dims[i] + indices[i];
  return n;
}

DimSignature DimSignature::subset(const std::vector<std::string>& keep) const {
  std::vector<std::string> l;
  std::vector<std::size_t> d;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), labels[i]) != keep.end()) {
      l.push_back(labels[i]);
      d.push_back(dims[i]);
    }
  }
  require(l.size() == keep.size(), "subset: unknown or duplicate label in selection");
  return DimSignature(std::move(l), std::move(d));
}

DimSignature DimSignature::without(const std::vector<std::string>& drop) const {
  std::vector<std::string> keep;
  for (const auto& l : labels)
    if (std::find(drop.begin(), drop.end(), l) == drop.end()) keep.push_back(l);
  return subset(keep);
}

ComplexMatrix tensor(const ComplexMatrix& m1, const ComplexMatrix& m2) {
  ComplexMatrix out(m1.rows() * m2.rows(), m1.cols() * m2.cols());
  for (std::size_t r1 = 0; r1 < m1.rows(); ++r1)
    for (std::size_t c1 = 0; c1 < m1.cols(); ++c1) {
      const Complex a = m1(r1, c1);
      if (a == Complex{0.0, 0.0}) continue;
      for (std::size_t r2 = 0; r2 < m2.rows(); ++r2)
        for (std::size_t c2 = 0; c2 < m2.cols(); ++c2)
          out(r1 * m2.rows() + r2, c1 * m2.cols() + c2) = a * m2(r2, c2);
    }
  return out;
}

namespace {

// Validates a label list against sig: known, no duplicates.
void check_labels(const std::vector<std::string>& ls, const DimSignature& sig) {
  std::unordered_set<std::string> seen;
  for (const auto& l : ls) {
    sig.index_of(l);
    require(seen.insert(l).second, "duplicate label in selection");
  }
}

}  // namespace

ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<std::string>& target_labels,
                             const DimSignature& sig) {
  require(op.is_square(), "embed_operator: op must be square");
  require(!target_labels.empty(), "embed_operator: empty target list");
  check_labels(target_labels, sig);

  std::vector<std::size_t> tpos(target_labels.size());
  std::size_t tdim = 1;
  for (std::size_t i = 0; i < target_labels.size(); ++i) {
    tpos[i] = sig.index_of(target_labels[i]);
    tdim *= sig.dims[tpos[i]];
  }
  require(op.rows() == tdim, "embed_operator: op dimension does not match target subsystems");

  // Per full-space index: the composed op index over the targets (in target
  // order) and the composed index over everything else.
  const std::size_t dim = sig.total_dim();
  std::vector<std::size_t> op_idx(dim), rest_idx(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    const auto digits = sig.decode(n);
    std::size_t o = 0;
    for (std::size_t t : tpos) o = o * sig.dims[t] + digits[t];
    std::size_t rest = 0;
    for (std::size_t k = 0; k < sig.size(); ++k)
      if (std::find(tpos.begin(), tpos.end(), k) == tpos.end())
        rest = rest * sig.dims[k] + digits[k];
    op_idx[n] = o;
    rest_idx[n] = rest;
  }

  ComplexMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if (rest_idx[r] == rest_idx[c]) out(r, c) = op(op_idx[r], op_idx[c]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const DimSignature& sig,
                            const std::vector<std::string>& traced_labels) {
  require(rho.is_square() && rho.rows() == sig.total_dim(),
          "partial_trace: state dimension does not match signature");
  check_labels(traced_labels, sig);
  require(traced_labels.size() < sig.size(), "partial_trace: cannot trace every subsystem");

  std::vector<bool> traced(sig.size(), false);
  for (const auto& l : traced_labels) traced[sig.index_of(l)] = true;

  const DimSignature rem = sig.without(traced_labels);
  const std::size_t dim = sig.total_dim();
  std::vector<std::size_t> kept_idx(dim), traced_idx(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    const auto digits = sig.decode(n);
    std::size_t kept = 0, dropped = 0;
    for (std::size_t k = 0; k < sig.size(); ++k) {
      if (traced[k])
        dropped = dropped * sig.dims[k] + digits[k];
      else
        kept = kept * sig.dims[k] + digits[k];
    }
    kept_idx[n] = kept;
    traced_idx[n] = dropped;
  }

  ComplexMatrix out(rem.total_dim(), rem.total_dim());
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if (traced_idx[r] == traced_idx[c]) out(kept_idx[r], kept_idx[c]) += rho(r, c);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const DimSignature& sig,
                                const std::vector<std::string>& transposed_labels) {
  require(rho.is_square() && rho.rows() == sig.total_dim(),
          "partial_transpose: state dimension does not match signature");
  check_labels(transposed_labels, sig);

  std::vector<bool> flip(sig.size(), false);
  for (const auto& l : transposed_labels) flip[sig.index_of(l)] = true;

  // Split each index into its kept and flipped digit contributions, so the
  // element rule becomes out(keep_r + flip_c, keep_c + flip_r) = rho(r, c).
  const std::size_t dim = sig.total_dim();
  std::vector<std::size_t> keep_part(dim), flip_part(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    const auto digits = sig.decode(n);
    std::size_t weight = 1, kept = 0, flipped = 0;
    for (std::size_t k = sig.size(); k-- > 0;) {
      if (flip[k])
        flipped += digits[k] * weight;
      else
        kept += digits[k] * weight;
      weight *= sig.dims[k];
    }
    keep_part[n] = kept;
    flip_part[n] = flipped;
  }

  ComplexMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      out(keep_part[r] + flip_part[c], keep_part[c] + flip_part[r]) = rho(r, c);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const DimSignature& sig,
                                const std::string& transposed_label) {
  return partial_transpose(rho, sig, std::vector<std::string>{transposed_label});
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  require(m.is_square(), "hermitian_eigenvalues: matrix must be square");
  if (m.hermiticity_defect() > kHermitianTol)
    throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian within 1e-10");

  const std::size_t n = m.rows();
  // Work on the exactly-Hermitian average to keep rotations real where they
  // should be.
  ComplexMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

  const double trace_before = a.trace().real();
  const double scale = std::max(1.0, a.frobenius_norm());
  constexpr double kOffTol = 1e-13;
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) <= kOffTol * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double absa = std::abs(apq);
        if (absa <= 1e-300) continue;
        const Complex phase = apq / absa;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * absa);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary rotation U: U(p,p)=c, U(p,q)=s*phase, U(q,p)=-s*conj(phase),
        // U(q,q)=c; apply A <- U† A U.
        const Complex spq = s * phase;
        for (std::size_t k = 0; k < n; ++k) {  // columns: A <- A U
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - std::conj(spq) * akq;
          a(k, q) = spq * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // rows: A <- U† A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - spq * aqk;
          a(q, k) = std::conj(spq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());

  double sum = 0.0;
  for (double e : eig) sum += e;
  if (std::abs(sum - trace_before) > 1e-10 * scale)
    throw std::runtime_error("hermitian_eigenvalues: eigenvalue sum drifted from trace");
  return eig;
}

double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double e : hermitian_eigenvalues(m)) s += std::abs(e);
  return s;
}

}  // namespace qdistill
