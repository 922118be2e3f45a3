#include "qdistill/measurement.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qdistill {

namespace {

void check_chi_ancilla(const DensityMatrix& chi, const DensityMatrix& ancilla) {
  if (chi.dim() != 9 || !chi.sig.has(kLabelA) || !chi.sig.has(kLabelB))
    throw std::invalid_argument("apply_protocol: chi must live on (A:3,B:3)");
  if (ancilla.dim() != 2)
    throw std::invalid_argument("apply_protocol: ancilla must be a qubit");
}

}  // namespace

void MeasurementParams::validate() const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("measurement: x must lie in [0,1]");
  if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("measurement: beta must lie in (0,1)");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("measurement: alpha must lie in (0,1)");
}

std::array<double, 3> MeasurementParams::epsilons() const {
  const double r = 1.0 - x * x;
  return {x, std::sqrt(beta * r), std::sqrt((1.0 - beta) * r)};
}

double weakness(double x, double beta) {
  const double r = 1.0 - x * x;
  const double e2 = std::sqrt(beta * r);
  const double e3 = std::sqrt((1.0 - beta) * r);
  return x * e2 + e2 * e3 + x * e3;
}

std::vector<std::pair<double, double>> weakness_profile(double beta,
                                                        const std::vector<double>& x_grid) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("measurement: beta must lie in (0,1)");
  std::vector<std::pair<double, double>> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("weakness_profile: x must lie in [0,1]");
    out.emplace_back(x, weakness(x, beta));
  }
  return out;
}

std::array<ComplexMatrix, 3> make_projectors(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("measurement: alpha must lie in (0,1)");
  const double ap = std::sqrt(1.0 - alpha * alpha);
  // Basis index 2q + c on qutrit (x) qubit; |00'> = 0, |11'> = 3.
  ComplexMatrix p2(6, 6), p3(6, 6);
  p2(0, 0) = alpha * alpha;
  p2(0, 3) = p2(3, 0) = alpha * ap;
  p2(3, 3) = ap * ap;
  p3(0, 0) = ap * ap;
  p3(0, 3) = p3(3, 0) = -ap * alpha;
  p3(3, 3) = alpha * alpha;
  ComplexMatrix p1 = ComplexMatrix::identity(6);
  p1 -= p2;
  p1 -= p3;
  return {p1, p2, p3};
}

MeasurementSet make_measurement_set(const MeasurementParams& params) {
  params.validate();
  const auto eps = params.epsilons();
  const auto proj = make_projectors(params.alpha);
  std::array<ComplexMatrix, 3> ops{ComplexMatrix(6, 6), ComplexMatrix(6, 6), ComplexMatrix(6, 6)};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) ops[i] += eps[(i + j) % 3] * proj[j];
  // The M_i are Hermitian by construction, which is why the protocol can
  // apply them verbatim on both sides without daggers.
#ifndef NDEBUG
  for (const auto& m : ops) assert(m.hermiticity_defect() <= kHermitianTol);
#endif
  return {params, proj, ops, weakness(params.x, params.beta)};
}

DensityMatrix strong_channel(const DensityMatrix& state, double alpha) {
  if (state.dim() != 6)
    throw std::invalid_argument("strong_channel: state must live on qutrit (x) qubit");
  const auto proj = make_projectors(alpha);
  ComplexMatrix out(6, 6);
  for (const auto& p : proj) out += p * state.matrix * p;
  return DensityMatrix(std::move(out), state.sig);
}

std::array<OutcomeRecord, 9> apply_protocol(const DensityMatrix& chi, const MeasurementSet& mset,
                                            const DensityMatrix& ancilla) {
  return apply_protocol(chi, mset, mset, ancilla);
}

std::array<OutcomeRecord, 9> apply_protocol(const DensityMatrix& chi,
                                            const MeasurementSet& bob_mset,
                                            const MeasurementSet& alice_mset,
                                            const DensityMatrix& ancilla) {
  check_chi_ancilla(chi, ancilla);
  const DimSignature sig = sig_abc();
  const ComplexMatrix rho0 = tensor(chi.matrix, ancilla.matrix);

  std::array<ComplexMatrix, 3> mb, ma;
  for (std::size_t k = 0; k < 3; ++k) {
    mb[k] = embed_operator(bob_mset.operators[k], {kLabelB, kLabelC}, sig);
    ma[k] = embed_operator(alice_mset.operators[k], {kLabelA, kLabelC}, sig);
  }

  std::array<OutcomeRecord, 9> records;
  for (int i = 0; i < 3; ++i) {
    const ComplexMatrix after_bob = mb[i] * rho0 * mb[i];
    const double pb = after_bob.trace().real();
    for (int j = 0; j < 3; ++j) {
      ComplexMatrix num = ma[j] * after_bob * ma[j];
      const double p = num.trace().real();
      OutcomeRecord rec{i + 1, j + 1, p, pb, std::nullopt};
      if (p > kNullBranchThreshold) {
        num *= 1.0 / p;
        rec.state.emplace(std::move(num), sig);
      }
      records[static_cast<std::size_t>(3 * i + j)] = std::move(rec);
    }
  }
  return records;
}

OutcomeRecord protocol_branch(const DensityMatrix& chi, const MeasurementSet& mset,
                              const DensityMatrix& ancilla, int bob_outcome, int alice_outcome) {
  check_chi_ancilla(chi, ancilla);
  if (bob_outcome < 1 || bob_outcome > 3 || alice_outcome < 1 || alice_outcome > 3)
    throw std::invalid_argument("protocol_branch: outcomes must lie in 1..3");
  const DimSignature sig = sig_abc();
  const ComplexMatrix rho0 = tensor(chi.matrix, ancilla.matrix);
  const ComplexMatrix mb =
      embed_operator(mset.operators[static_cast<std::size_t>(bob_outcome - 1)],
                     {kLabelB, kLabelC}, sig);
  const ComplexMatrix ma =
      embed_operator(mset.operators[static_cast<std::size_t>(alice_outcome - 1)],
                     {kLabelA, kLabelC}, sig);

  const ComplexMatrix after_bob = mb * rho0 * mb;
  const double pb = after_bob.trace().real();
  ComplexMatrix num = ma * after_bob * ma;
  const double p = num.trace().real();
  OutcomeRecord rec{bob_outcome, alice_outcome, p, pb, std::nullopt};
  if (p > kNullBranchThreshold) {
    num *= 1.0 / p;
    rec.state.emplace(std::move(num), sig);
  }
  return rec;
}

}  // namespace qdistill
