// Brute-force reference path used only by tests. Everything here is coded
// independently of the library: fixed (3,3,2) index arithmetic, explicit
// operator lifts, and Eigen's eigensolver/SVD instead of the in-tree Jacobi.
#pragma once

#include <Eigen/Dense>

#include <array>

namespace oracle {

using Mat = Eigen::MatrixXcd;

Mat chi1();
Mat chi2(double a);
Mat chi3(double b);
Mat ancilla_plus();

// M1..M3 on qutrit (x) qubit, basis index 2q + c.
std::array<Mat, 3> operators(double x, double beta, double alpha);

// Lifts of a 6x6 operator into the 18-dimensional (A,B,C) space.
Mat lift_bc(const Mat& m6);
Mat lift_ac(const Mat& m6);

Mat reduce_ab(const Mat& rho18);
Mat reduce_ac(const Mat& rho18);
Mat reduce_bc(const Mat& rho18);

// Negativities per cut; qubit-side cuts carry denominator d-1 = 1.
double negativity_ab(const Mat& rho9);
double negativity_32(const Mat& rho6);
double negativity_abc_c(const Mat& rho18);

// Sum of singular values of the realigned 9x9 matrix, minus one.
double realignment(const Mat& rho9);

struct Branch {
  double joint_p;
  double bob_p;
  Mat state;  // normalized 18x18, undefined when joint_p ~ 0
};

// Two-round protocol, records ordered (bob,alice) row-major.
std::array<Branch, 9> run_protocol(const Mat& chi, double x, double beta, double alpha);

}  // namespace oracle
