#pragma once

#include <array>
#include <string>
#include <vector>

#include "qdistill/linalg.hpp"

namespace qdistill {

inline const std::string kLabelA = "A";
inline const std::string kLabelB = "B";
inline const std::string kLabelC = "C";

/// Canonical signatures: the shared pair (A:3,B:3), the ancilla (C:2), and
/// the tripartite space (A:3,B:3,C:2).
DimSignature sig_ab();
DimSignature sig_c();
DimSignature sig_abc();

/// Normalized state vector with a subsystem signature.
struct Ket {
  std::vector<Complex> amplitudes;
  DimSignature sig;

  Ket(std::vector<Complex> amplitudes, DimSignature sig);

  std::size_t dim() const { return amplitudes.size(); }
  Complex inner(const Ket& other) const;  // <this|other>
  ComplexMatrix outer() const;            // |k><k|
};

/// Trace-one PSD Hermitian matrix with a subsystem signature. The
/// constructor enforces the invariants (hermiticity 1e-10, trace 1e-10,
/// min eigenvalue >= -1e-10) and throws std::invalid_argument otherwise.
struct DensityMatrix {
  ComplexMatrix matrix;
  DimSignature sig;

  DensityMatrix(ComplexMatrix matrix, DimSignature sig);

  std::size_t dim() const { return matrix.rows(); }
  /// Eigenvalue count above tol.
  std::size_t rank(double tol = 1e-10) const;
};

/// The five tiles product vectors on (A:3,B:3), mutually orthonormal.
std::array<Ket, 5> tiles_vectors();

/// Maximally entangled (|00> + |11> + |22>)/sqrt(3) on (A:3,B:3).
Ket phi_plus();

/// Normalized projector onto the orthogonal complement of the tiles set:
/// (1 - sum |psi_i><psi_i|)/4. Bound-entangled, rank 4, PPT.
DensityMatrix make_chi1();

/// The explicit one-parameter 9x9 family with prefactor 1/(1+8a),
/// a in [0,1]. Separable at a in {0,1}, bound-entangled in between.
DensityMatrix make_chi2(double a);

/// (2|Phi+><Phi+| + b*Sigma+ + (5-b)*Sigma-)/7 for b in [2,5], where
/// Sigma+ mixes |01>,|12>,|20> and Sigma- is its qutrit-index swap
/// (|10>,|21>,|02>), each with weight 1/3.
DensityMatrix make_chi3(double b);

/// Ancilla qubit (|0'> + |1'>)(<0'| + <1'|)/2: every entry 1/2.
DensityMatrix make_ancilla();

enum class EntanglementClass { Separable, Bound, Free };

struct StateClassification {
  EntanglementClass cls;
  bool boundary;  // parameter sits on a classification boundary
};

std::string to_string(EntanglementClass cls);

StateClassification classify_chi1();
StateClassification classify_chi2(double a);
StateClassification classify_chi3(double b);

}  // namespace qdistill
