#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qdistill/states.hpp"

namespace qdistill {

/// Below this joint probability a branch is null: its conditional state is
/// undefined and left absent. Only parameter boundaries produce such
/// branches.
inline constexpr double kNullBranchThreshold = 1e-14;

/// Weak-measurement parameters. The strength split is
/// eps1 = x, eps2 = sqrt(beta (1-x^2)), eps3 = sqrt((1-beta)(1-x^2)),
/// so sum eps_l^2 = 1 identically. alpha sets the entanglement of the
/// projector pair P2/P3. beta = 1/2 is admitted but degenerate (the M1
/// outcome then induces no entanglement toward the unmeasured party).
struct MeasurementParams {
  double x;
  double beta = 0.1;
  double alpha = 0.70710678118654752440;  // 1/sqrt(2)

  void validate() const;  // throws std::domain_error
  std::array<double, 3> epsilons() const;
  bool degenerate_beta() const { return beta == 0.5; }
};

/// Weakness zeta = eps1 eps2 + eps2 eps3 + eps1 eps3.
double weakness(double x, double beta);

/// (x, zeta) pairs over a grid; grid values must lie in [0,1].
std::vector<std::pair<double, double>> weakness_profile(double beta,
                                                        const std::vector<double>& x_grid);

/// The three orthogonal projectors on qutrit(3) x qubit(2), basis index
/// 2q + c: P2 = |phi><phi|, P3 = |psi><psi| with
/// |phi> = alpha|00'> + sqrt(1-alpha^2)|11'>,
/// |psi> = sqrt(1-alpha^2)|00'> - alpha|11'>, and P1 the rank-4 rest.
std::array<ComplexMatrix, 3> make_projectors(double alpha);

/// M_i = sum_j eps_{j (+) (i-1)} P_j with (+) the modulo-3 sum and eps_0
/// renamed eps_3:
///   M1 = e1 P1 + e2 P2 + e3 P3
///   M2 = e2 P1 + e3 P2 + e1 P3
///   M3 = e3 P1 + e1 P2 + e2 P3
/// Each M_i is Hermitian PSD and sum M_i^2 = 1.
struct MeasurementSet {
  MeasurementParams params;
  std::array<ComplexMatrix, 3> projectors;
  std::array<ComplexMatrix, 3> operators;
  double zeta;
};

MeasurementSet make_measurement_set(const MeasurementParams& params);

/// Projective limit sum_j P_j X P_j of the measurement channel,
/// trace-preserving and idempotent.
DensityMatrix strong_channel(const DensityMatrix& state, double alpha);

/// One (Bob outcome i, Alice outcome j) measurement history.
struct OutcomeRecord {
  int bob_outcome;    // 1..3, first round on (B,C)
  int alice_outcome;  // 1..3, second round on (A,C)
  double joint_probability;
  double intermediate_bc_probability;  // Bob-only marginal p_B(i)
  std::optional<DensityMatrix> state;  // conditional ABC state; absent on null branch

  bool null_branch() const { return !state.has_value(); }
};

/// Runs the two-round protocol: Bob's M_i on (B,C), then Alice's M_j on
/// (A,C), on chi (x) ancilla. Records are ordered (i,j) row-major,
/// index 3(i-1)+(j-1). Joint probabilities sum to one.
std::array<OutcomeRecord, 9> apply_protocol(const DensityMatrix& chi, const MeasurementSet& mset,
                                            const DensityMatrix& ancilla);

/// Exploration overload with a distinct parameter set for Alice's round.
/// All published configurations use one shared set.
std::array<OutcomeRecord, 9> apply_protocol(const DensityMatrix& chi,
                                            const MeasurementSet& bob_mset,
                                            const MeasurementSet& alice_mset,
                                            const DensityMatrix& ancilla);

/// Single-branch fast path (used by parameter scans).
OutcomeRecord protocol_branch(const DensityMatrix& chi, const MeasurementSet& mset,
                              const DensityMatrix& ancilla, int bob_outcome, int alice_outcome);

}  // namespace qdistill
