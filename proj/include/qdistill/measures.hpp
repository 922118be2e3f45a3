#pragma once

#include <span>
#include <string>
#include <vector>

#include "qdistill/measurement.hpp"

namespace qdistill {

/// Negativity below this is PPT roundoff and clamps to zero.
inline constexpr double kNegativityClamp = 1e-12;
/// A partial transpose counts as positive down to this eigenvalue.
inline constexpr double kPptTol = 1e-10;

/// Two-sided grouping of a state's subsystem labels. Labels missing from
/// both sides are traced out before the cut is evaluated, so {A}|{B} on a
/// tripartite state means the AB reduction.
struct BipartitionSpec {
  std::vector<std::string> side_one;
  std::vector<std::string> side_two;

  void validate(const DimSignature& sig) const;  // throws std::invalid_argument
};

/// (||rho^{T}||_1 - 1)/(d-1) across the cut, d the smaller side dimension.
/// Zero (clamped) exactly when the cut is PPT.
double negativity(const DensityMatrix& rho, const BipartitionSpec& cut);

/// Peres-Horodecki flag: smallest partial-transpose eigenvalue >= -1e-10.
bool is_ppt(const DensityMatrix& rho, const BipartitionSpec& cut);

/// CCNR witness for 3x3 states: (sum of singular values of the realigned
/// matrix) - 1. Positive certifies entanglement; non-positive says nothing.
double realignment_witness(const DensityMatrix& rho);

/// Probability-weighted branch negativity over the nine-outcome ensemble,
/// null branches skipped. Throws if probabilities do not sum to one.
double average_negativity(std::span<const OutcomeRecord> records, const BipartitionSpec& cut);

/// Whether the second-round terms of the cost sum are weighted by the joint
/// probability p(i,j) or by Alice's probability conditioned on Bob's
/// outcome. Joint is the default reading.
enum class CostWeighting { Joint, ConditionalOnBob };

struct CostTerm {
  int bob_outcome;    // 1..3
  int alice_outcome;  // 0 for first-round (Bob-ancilla) terms
  double probability;
  double negativity;
  double contribution;  // probability * negativity
};

/// M_cost = sum_j [ p_BC(j) N_BC(j) + sum_k p_AC(j,k) N_AC(j,k) ], the
/// probability-weighted entanglement generated toward the ancilla, plus
/// E_cost = M_cost - avg N_AB. The identity holds by construction.
struct CostBreakdown {
  double m_cost;
  double avg_negativity_ab;
  double e_cost;
  std::vector<CostTerm> per_outcome_terms;
};

CostBreakdown measurement_cost(const DensityMatrix& chi, const MeasurementSet& mset,
                               const DensityMatrix& ancilla,
                               CostWeighting weighting = CostWeighting::Joint);

/// Which mean the squared terms use: square of the ensemble average
/// (default) or average of squared branch negativities.
enum class TripartiteMean { SquareOfAverage, AverageOfSquares };

/// E_ABC = Nbar^2_{AB,C} - Nbar^2_{A,C} - Nbar^2_{B,C} over the ensemble;
/// the ancilla-side cuts all carry d-1 = 1.
double tripartite_entanglement(std::span<const OutcomeRecord> records,
                               TripartiteMean mean = TripartiteMean::SquareOfAverage);

}  // namespace qdistill
