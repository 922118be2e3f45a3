#include "oracle.hpp"

#include <cmath>
#include <complex>

namespace oracle {

namespace {

using Vec = Eigen::VectorXcd;

Vec product_vec(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  Vec v(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(3 * i + j) = a(i) * b(j);
  return v;
}

double trace_norm_herm(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

Mat chi1() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Vector3cd e0(1, 0, 0), e1(0, 1, 0), e2(0, 0, 1);
  const Eigen::Vector3cd d01 = (e0 - e1) * s, d12 = (e1 - e2) * s;
  const Eigen::Vector3cd uni = (e0 + e1 + e2) / std::sqrt(3.0);
  std::array<Vec, 5> tiles = {product_vec(e0, d01), product_vec(d01, e2), product_vec(e2, d12),
                              product_vec(d12, e0), product_vec(uni, uni)};
  Mat m = Mat::Identity(9, 9);
  for (const auto& t : tiles) m -= t * t.adjoint();
  return m / 4.0;
}

Mat chi2(double a) {
  Mat m = Mat::Zero(9, 9);
  for (int i : {0, 1, 2, 3, 4, 5, 7}) m(i, i) = a;
  m(6, 6) = (1 + a) / 2;
  m(8, 8) = (1 + a) / 2;
  m(0, 4) = m(4, 0) = m(0, 8) = m(8, 0) = m(4, 8) = m(8, 4) = a;
  m(6, 8) = m(8, 6) = std::sqrt(1 - a * a) / 2;
  return m / (1 + 8 * a);
}

Mat chi3(double b) {
  Vec phi = Vec::Zero(9);
  phi(0) = phi(4) = phi(8) = 1.0 / std::sqrt(3.0);
  Mat m = 2.0 * (phi * phi.adjoint());
  for (int i : {1, 5, 6}) m(i, i) += b / 3.0;
  for (int i : {3, 7, 2}) m(i, i) += (5 - b) / 3.0;
  return m / 7.0;
}

Mat ancilla_plus() {
  Mat m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

std::array<Mat, 3> operators(double x, double beta, double alpha) {
  const double ap = std::sqrt(1 - alpha * alpha);
  Vec phi = Vec::Zero(6), psi = Vec::Zero(6);
  phi(0) = alpha;
  phi(3) = ap;
  psi(0) = ap;
  psi(3) = -alpha;
  const Mat p2 = phi * phi.adjoint();
  const Mat p3 = psi * psi.adjoint();
  const Mat p1 = Mat::Identity(6, 6) - p2 - p3;
  const double e[3] = {x, std::sqrt(beta * (1 - x * x)), std::sqrt((1 - beta) * (1 - x * x))};
  std::array<Mat, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = e[i % 3] * p1 + e[(i + 1) % 3] * p2 + e[(i + 2) % 3] * p3;
  return out;
}

Mat lift_bc(const Mat& m6) {
  Mat out = Mat::Zero(18, 18);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 2; ++c)
        for (int b2 = 0; b2 < 3; ++b2)
          for (int c2 = 0; c2 < 2; ++c2)
            out((a * 3 + b) * 2 + c, (a * 3 + b2) * 2 + c2) = m6(2 * b + c, 2 * b2 + c2);
  return out;
}

Mat lift_ac(const Mat& m6) {
  Mat out = Mat::Zero(18, 18);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 2; ++c)
        for (int a2 = 0; a2 < 3; ++a2)
          for (int c2 = 0; c2 < 2; ++c2)
            out((a * 3 + b) * 2 + c, (a2 * 3 + b) * 2 + c2) = m6(2 * a + c, 2 * a2 + c2);
  return out;
}

Mat reduce_ab(const Mat& rho18) {
  Mat out = Mat::Zero(9, 9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int a2 = 0; a2 < 3; ++a2)
        for (int b2 = 0; b2 < 3; ++b2)
          for (int c = 0; c < 2; ++c)
            out(3 * a + b, 3 * a2 + b2) += rho18((a * 3 + b) * 2 + c, (a2 * 3 + b2) * 2 + c);
  return out;
}

Mat reduce_ac(const Mat& rho18) {
  Mat out = Mat::Zero(6, 6);
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 3; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 3; ++b)
            out(2 * a + c, 2 * a2 + c2) += rho18((a * 3 + b) * 2 + c, (a2 * 3 + b) * 2 + c2);
  return out;
}

Mat reduce_bc(const Mat& rho18) {
  Mat out = Mat::Zero(6, 6);
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 2; ++c)
      for (int b2 = 0; b2 < 3; ++b2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int a = 0; a < 3; ++a)
            out(2 * b + c, 2 * b2 + c2) += rho18((a * 3 + b) * 2 + c, (a * 3 + b2) * 2 + c2);
  return out;
}

double negativity_ab(const Mat& rho9) {
  Mat pt(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) pt(3 * i + j, 3 * k + l) = rho9(3 * i + l, 3 * k + j);
  const double n = (trace_norm_herm(pt) - 1.0) / 2.0;
  return n < 1e-12 ? 0.0 : n;
}

double negativity_32(const Mat& rho6) {
  Mat pt(6, 6);
  for (int q = 0; q < 3; ++q)
    for (int c = 0; c < 2; ++c)
      for (int q2 = 0; q2 < 3; ++q2)
        for (int c2 = 0; c2 < 2; ++c2) pt(2 * q + c, 2 * q2 + c2) = rho6(2 * q + c2, 2 * q2 + c);
  const double n = trace_norm_herm(pt) - 1.0;
  return n < 1e-12 ? 0.0 : n;
}

double negativity_abc_c(const Mat& rho18) {
  Mat pt(18, 18);
  for (int ab = 0; ab < 9; ++ab)
    for (int c = 0; c < 2; ++c)
      for (int ab2 = 0; ab2 < 9; ++ab2)
        for (int c2 = 0; c2 < 2; ++c2) pt(ab * 2 + c, ab2 * 2 + c2) = rho18(ab * 2 + c2, ab2 * 2 + c);
  const double n = trace_norm_herm(pt) - 1.0;
  return n < 1e-12 ? 0.0 : n;
}

double realignment(const Mat& rho9) {
  Mat r(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) r(3 * i + j, 3 * k + l) = rho9(3 * i + k, 3 * j + l);
  Eigen::JacobiSVD<Mat> svd(r);
  return svd.singularValues().sum() - 1.0;
}

std::array<Branch, 9> run_protocol(const Mat& chi, double x, double beta, double alpha) {
  const Mat anc = ancilla_plus();
  Mat rho0 = Mat::Zero(18, 18);
  for (int ab = 0; ab < 9; ++ab)
    for (int ab2 = 0; ab2 < 9; ++ab2)
      for (int c = 0; c < 2; ++c)
        for (int c2 = 0; c2 < 2; ++c2) rho0(ab * 2 + c, ab2 * 2 + c2) = chi(ab, ab2) * anc(c, c2);

  const auto ms = operators(x, beta, alpha);
  std::array<Branch, 9> out;
  for (int i = 0; i < 3; ++i) {
    const Mat mb = lift_bc(ms[i]);
    const Mat after = mb * rho0 * mb;
    const double pb = after.trace().real();
    for (int j = 0; j < 3; ++j) {
      const Mat ma = lift_ac(ms[j]);
      Mat num = ma * after * ma;
      const double p = num.trace().real();
      Branch br{p, pb, Mat()};
      if (p > 1e-14) br.state = num / p;
      out[3 * i + j] = std::move(br);
    }
  }
  return out;
}

}  // namespace oracle
