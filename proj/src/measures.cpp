#include "qdistill/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace qdistill {

namespace {

constexpr double kProbabilitySumTol = 1e-10;

// Reduces rho to the cut's labels (if needed) and returns the reduced
// matrix, its signature, and the two side dimensions.
struct CutView {
  ComplexMatrix matrix;
  DimSignature sig;
  std::size_t d_one;
  std::size_t d_two;
};

CutView reduce_to_cut(const DensityMatrix& rho, const BipartitionSpec& cut) {
  cut.validate(rho.sig);
  std::vector<std::string> involved = cut.side_one;
  involved.insert(involved.end(), cut.side_two.begin(), cut.side_two.end());

  std::vector<std::string> traced;
  for (const auto& l : rho.sig.labels)
    if (std::find(involved.begin(), involved.end(), l) == involved.end()) traced.push_back(l);

  CutView view{rho.matrix, rho.sig, 1, 1};
  if (!traced.empty()) {
    view.matrix = partial_trace(rho.matrix, rho.sig, traced);
    view.sig = rho.sig.without(traced);
  }
  for (const auto& l : cut.side_one) view.d_one *= view.sig.dim_of(l);
  for (const auto& l : cut.side_two) view.d_two *= view.sig.dim_of(l);
  return view;
}

double checked_probability_sum(std::span<const OutcomeRecord> records) {
  double sum = 0.0;
  for (const auto& r : records) sum += r.joint_probability;
  if (std::abs(sum - 1.0) > kProbabilitySumTol)
    throw std::invalid_argument("outcome records are not normalized");
  return sum;
}

}  // namespace

void BipartitionSpec::validate(const DimSignature& sig) const {
  if (side_one.empty() || side_two.empty())
    throw std::invalid_argument("BipartitionSpec: both sides must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& l : side_one) {
    sig.index_of(l);
    if (!seen.insert(l).second) throw std::invalid_argument("BipartitionSpec: duplicate label");
  }
  for (const auto& l : side_two) {
    sig.index_of(l);
    if (!seen.insert(l).second)
      throw std::invalid_argument("BipartitionSpec: label on both sides");
  }
}

double negativity(const DensityMatrix& rho, const BipartitionSpec& cut) {
  const CutView view = reduce_to_cut(rho, cut);
  const ComplexMatrix pt = partial_transpose(view.matrix, view.sig, cut.side_two);
  const double d = static_cast<double>(std::min(view.d_one, view.d_two));
  if (d < 2.0) throw std::invalid_argument("negativity: trivial one-dimensional side");
  const double n = (trace_norm(pt) - 1.0) / (d - 1.0);
  return n < kNegativityClamp ? 0.0 : n;
}

bool is_ppt(const DensityMatrix& rho, const BipartitionSpec& cut) {
  const CutView view = reduce_to_cut(rho, cut);
  const ComplexMatrix pt = partial_transpose(view.matrix, view.sig, cut.side_two);
  return hermitian_eigenvalues(pt).front() >= -kPptTol;
}

double realignment_witness(const DensityMatrix& rho) {
  if (rho.dim() != 9 || rho.sig.size() != 2 || rho.sig.dims[0] != 3 || rho.sig.dims[1] != 3)
    throw std::invalid_argument("realignment_witness: expects a 3x3 bipartite state");
  // R_{(i,j),(k,l)} = rho_{(i,k),(j,l)}. Singular values come from the
  // Hermitian embedding [[0, R], [R†, 0]], whose spectrum is {+-sigma_k};
  // this avoids the precision loss of eig(R†R) near sigma = 0.
  ComplexMatrix r(9, 9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l)
          r(3 * i + j, 3 * k + l) = rho.matrix(3 * i + k, 3 * j + l);
  ComplexMatrix embedded(18, 18);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      embedded(i, 9 + j) = r(i, j);
      embedded(9 + i, j) = std::conj(r(j, i));
    }
  return 0.5 * trace_norm(embedded) - 1.0;
}

double average_negativity(std::span<const OutcomeRecord> records, const BipartitionSpec& cut) {
  checked_probability_sum(records);
  double acc = 0.0;
  for (const auto& rec : records) {
    if (rec.null_branch()) continue;
    acc += rec.joint_probability * negativity(*rec.state, cut);
  }
  return acc;
}

CostBreakdown measurement_cost(const DensityMatrix& chi, const MeasurementSet& mset,
                               const DensityMatrix& ancilla, CostWeighting weighting) {
  const DimSignature sig = sig_abc();
  const ComplexMatrix rho0 = tensor(chi.matrix, ancilla.matrix);

  std::array<ComplexMatrix, 3> mb, ma;
  for (std::size_t k = 0; k < 3; ++k) {
    mb[k] = embed_operator(mset.operators[k], {kLabelB, kLabelC}, sig);
    ma[k] = embed_operator(mset.operators[k], {kLabelA, kLabelC}, sig);
  }

  const BipartitionSpec bc_cut{{kLabelB}, {kLabelC}};
  const BipartitionSpec ac_cut{{kLabelA}, {kLabelC}};

  CostBreakdown out{0.0, 0.0, 0.0, {}};
  std::array<OutcomeRecord, 9> records;

  for (int i = 0; i < 3; ++i) {
    const ComplexMatrix after_bob = mb[i] * rho0 * mb[i];
    const double pb = after_bob.trace().real();
    if (pb > kNullBranchThreshold) {
      ComplexMatrix inter = after_bob;
      inter *= 1.0 / pb;
      const DensityMatrix inter_dm(std::move(inter), sig);
      const double n_bc = negativity(inter_dm, bc_cut);
      out.per_outcome_terms.push_back({i + 1, 0, pb, n_bc, pb * n_bc});
      out.m_cost += pb * n_bc;
    }
    for (int j = 0; j < 3; ++j) {
      ComplexMatrix num = ma[j] * after_bob * ma[j];
      const double p = num.trace().real();
      OutcomeRecord rec{i + 1, j + 1, p, pb, std::nullopt};
      if (p > kNullBranchThreshold) {
        num *= 1.0 / p;
        rec.state.emplace(std::move(num), sig);
        const double n_ac = negativity(*rec.state, ac_cut);
        const double w = weighting == CostWeighting::Joint ? p : p / pb;
        out.per_outcome_terms.push_back({i + 1, j + 1, w, n_ac, w * n_ac});
        out.m_cost += w * n_ac;
      }
      records[static_cast<std::size_t>(3 * i + j)] = std::move(rec);
    }
  }

  out.avg_negativity_ab =
      average_negativity(records, BipartitionSpec{{kLabelA}, {kLabelB}});
  out.e_cost = out.m_cost - out.avg_negativity_ab;
  return out;
}

double tripartite_entanglement(std::span<const OutcomeRecord> records, TripartiteMean mean) {
  checked_probability_sum(records);
  const BipartitionSpec ab_c{{kLabelA, kLabelB}, {kLabelC}};
  const BipartitionSpec a_c{{kLabelA}, {kLabelC}};
  const BipartitionSpec b_c{{kLabelB}, {kLabelC}};

  double nab_c = 0.0, na_c = 0.0, nb_c = 0.0;
  for (const auto& rec : records) {
    if (rec.null_branch()) continue;
    const double p = rec.joint_probability;
    const double v1 = negativity(*rec.state, ab_c);
    const double v2 = negativity(*rec.state, a_c);
    const double v3 = negativity(*rec.state, b_c);
    if (mean == TripartiteMean::SquareOfAverage) {
      nab_c += p * v1;
      na_c += p * v2;
      nb_c += p * v3;
    } else {
      nab_c += p * v1 * v1;
      na_c += p * v2 * v2;
      nb_c += p * v3 * v3;
    }
  }
  if (mean == TripartiteMean::SquareOfAverage)
    return nab_c * nab_c - na_c * na_c - nb_c * nb_c;
  return nab_c - na_c - nb_c;
}

}  // namespace qdistill
