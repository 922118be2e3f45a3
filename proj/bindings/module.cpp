#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdistill/protocol.hpp"
#include "qdistill/verify.hpp"

namespace py = pybind11;
using namespace qdistill;

namespace {

py::array_t<std::complex<double>> to_numpy(const ComplexMatrix& m) {
  py::array_t<std::complex<double>> arr({m.rows(), m.cols()});
  auto buf = arr.mutable_unchecked<2>();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) buf(r, c) = m(r, c);
  return arr;
}

ComplexMatrix from_numpy(
    const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  ComplexMatrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
  auto buf = arr.unchecked<2>();
  for (py::ssize_t r = 0; r < arr.shape(0); ++r)
    for (py::ssize_t c = 0; c < arr.shape(1); ++c)
      m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = buf(r, c);
  return m;
}

StateSpec make_spec(const std::string& family, double param) {
  if (family == "chi1") return {StateSpec::Family::Chi1, 0.0};
  if (family == "chi2") return {StateSpec::Family::Chi2, param};
  if (family == "chi3") return {StateSpec::Family::Chi3, param};
  throw std::domain_error("unknown state family '" + family + "'");
}

py::dict branch_dict(const BranchResult& br) {
  py::dict d;
  d["bob"] = br.record.bob_outcome;
  d["alice"] = br.record.alice_outcome;
  d["p"] = br.record.joint_probability;
  d["p_bob"] = br.record.intermediate_bc_probability;
  d["neg_ab"] = br.neg_ab ? py::object(py::float_(*br.neg_ab)) : py::object(py::none());
  if (!br.cuts.empty()) {
    py::list cuts;
    for (const auto& c : br.cuts) {
      py::dict cd;
      cd["cut"] = c.cut_name;
      cd["negativity"] = c.negativity;
      cd["ppt"] = c.ppt;
      cd["verdict"] = c.verdict;
      cuts.append(cd);
    }
    d["cuts"] = cuts;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weak-measurement distillation of free entanglement from "
            "qutrit-qutrit bound-entangled states";
  m.attr("__version__") = QDISTILL_VERSION;

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_property_readonly("matrix",
                             [](const DensityMatrix& dm) { return to_numpy(dm.matrix); })
      .def_property_readonly("labels", [](const DensityMatrix& dm) { return dm.sig.labels; })
      .def_property_readonly("dims", [](const DensityMatrix& dm) { return dm.sig.dims; })
      .def("rank", &DensityMatrix::rank, py::arg("tol") = 1e-10)
      .def("__repr__", [](const DensityMatrix& dm) {
        return "<DensityMatrix dim=" + std::to_string(dm.dim()) + ">";
      });

  py::class_<MeasurementSet>(m, "MeasurementSet")
      .def_property_readonly("zeta", [](const MeasurementSet& s) { return s.zeta; })
      .def_property_readonly("x", [](const MeasurementSet& s) { return s.params.x; })
      .def_property_readonly("beta", [](const MeasurementSet& s) { return s.params.beta; })
      .def_property_readonly("alpha", [](const MeasurementSet& s) { return s.params.alpha; })
      .def_property_readonly("operators",
                             [](const MeasurementSet& s) {
                               py::list out;
                               for (const auto& op : s.operators) out.append(to_numpy(op));
                               return out;
                             })
      .def_property_readonly("projectors", [](const MeasurementSet& s) {
        py::list out;
        for (const auto& p : s.projectors) out.append(to_numpy(p));
        return out;
      });

  py::class_<OutcomeRecord>(m, "OutcomeRecord")
      .def_readonly("bob_outcome", &OutcomeRecord::bob_outcome)
      .def_readonly("alice_outcome", &OutcomeRecord::alice_outcome)
      .def_readonly("joint_probability", &OutcomeRecord::joint_probability)
      .def_readonly("bob_marginal", &OutcomeRecord::intermediate_bc_probability)
      .def_property_readonly("state",
                             [](const OutcomeRecord& r) -> py::object {
                               if (!r.state) return py::none();
                               return py::cast(*r.state);
                             })
      .def("null_branch", &OutcomeRecord::null_branch);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("m_cost", &CostBreakdown::m_cost)
      .def_readonly("avg_negativity_ab", &CostBreakdown::avg_negativity_ab)
      .def_readonly("e_cost", &CostBreakdown::e_cost)
      .def_property_readonly("terms", [](const CostBreakdown& c) {
        py::list out;
        for (const auto& t : c.per_outcome_terms)
          out.append(py::make_tuple(t.bob_outcome, t.alice_outcome, t.probability, t.negativity));
        return out;
      });

  m.def("make_chi1", &make_chi1);
  m.def("make_chi2", &make_chi2, py::arg("a"));
  m.def("make_chi3", &make_chi3, py::arg("b"));
  m.def("make_ancilla", &make_ancilla);
  m.def(
      "density_matrix",
      [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& arr,
         const std::vector<std::string>& labels, const std::vector<std::size_t>& dims) {
        return DensityMatrix(from_numpy(arr), DimSignature(labels, dims));
      },
      py::arg("matrix"), py::arg("labels"), py::arg("dims"),
      "Wrap a trace-one PSD Hermitian array with a subsystem signature");

  m.def(
      "classification",
      [](const std::string& family, double param) {
        const auto cls = make_spec(family, param).classification();
        return py::make_tuple(to_string(cls.cls), cls.boundary);
      },
      py::arg("family"), py::arg("param") = 0.0);

  m.def(
      "make_measurement_set",
      [](double x, double beta, double alpha) {
        return make_measurement_set({x, beta, alpha});
      },
      py::arg("x"), py::arg("beta") = 0.1, py::arg("alpha") = 0.70710678118654752440);
  m.def("weakness", &weakness, py::arg("x"), py::arg("beta"));
  m.def("weakness_profile", &weakness_profile, py::arg("beta"), py::arg("x_grid"));

  m.def(
      "apply_protocol",
      [](const DensityMatrix& chi, const MeasurementSet& mset, const DensityMatrix& ancilla) {
        const auto records = apply_protocol(chi, mset, ancilla);
        return std::vector<OutcomeRecord>(records.begin(), records.end());
      },
      py::arg("chi"), py::arg("measurement_set"), py::arg("ancilla"));

  m.def(
      "negativity",
      [](const DensityMatrix& rho, const std::vector<std::string>& side_one,
         const std::vector<std::string>& side_two) {
        return negativity(rho, BipartitionSpec{side_one, side_two});
      },
      py::arg("rho"), py::arg("side_one"), py::arg("side_two"));
  m.def(
      "is_ppt",
      [](const DensityMatrix& rho, const std::vector<std::string>& side_one,
         const std::vector<std::string>& side_two) {
        return is_ppt(rho, BipartitionSpec{side_one, side_two});
      },
      py::arg("rho"), py::arg("side_one"), py::arg("side_two"));
  m.def("realignment_witness", &realignment_witness, py::arg("rho"));

  m.def(
      "average_negativity",
      [](const std::vector<OutcomeRecord>& records, const std::vector<std::string>& side_one,
         const std::vector<std::string>& side_two) {
        if (records.size() != 9) throw std::invalid_argument("expected nine outcome records");
        return average_negativity(std::span<const OutcomeRecord>(records.data(), records.size()),
                                  BipartitionSpec{side_one, side_two});
      },
      py::arg("records"), py::arg("side_one"), py::arg("side_two"));

  m.def(
      "measurement_cost",
      [](const DensityMatrix& chi, const MeasurementSet& mset, const DensityMatrix& ancilla,
         bool joint) {
        return measurement_cost(chi, mset, ancilla,
                                joint ? CostWeighting::Joint : CostWeighting::ConditionalOnBob);
      },
      py::arg("chi"), py::arg("measurement_set"), py::arg("ancilla"), py::arg("joint") = true);

  m.def(
      "tripartite_entanglement",
      [](const std::vector<OutcomeRecord>& records, bool square_of_average) {
        if (records.size() != 9) throw std::invalid_argument("expected nine outcome records");
        return tripartite_entanglement(
            std::span<const OutcomeRecord>(records.data(), records.size()),
            square_of_average ? TripartiteMean::SquareOfAverage
                              : TripartiteMean::AverageOfSquares);
      },
      py::arg("records"), py::arg("square_of_average") = true);

  m.def(
      "run_scenario",
      [](const std::string& family, double param, double x, double beta, double alpha,
         bool bipartitions) {
        ScenarioConfig config;
        config.state = make_spec(family, param);
        config.params = {0.0, beta, alpha};
        config.with_bipartition_scan = bipartitions;
        const auto row = run_scenario(config, x);
        py::dict d;
        d["x"] = row.x;
        d["zeta"] = row.zeta;
        py::list branches;
        for (const auto& br : row.branches) branches.append(branch_dict(br));
        d["branches"] = branches;
        d["avg_neg_ab"] = row.avg_neg_ab;
        d["m_cost"] = row.cost->m_cost;
        d["e_cost"] = row.cost->e_cost;
        d["e_abc"] = *row.tripartite;
        return d;
      },
      py::arg("family"), py::arg("param"), py::arg("x"), py::arg("beta") = 0.1,
      py::arg("alpha") = 0.70710678118654752440, py::arg("bipartitions") = false);

  m.def(
      "alpha_scan",
      [](const std::string& family, double param, int bob, int alice,
         const std::vector<double>& x_values, const std::vector<double>& alpha_grid, double beta) {
        const auto scan =
            alpha_scan(make_spec(family, param), OutcomePair{bob, alice}, x_values, alpha_grid, beta);
        py::list points;
        for (const auto& p : scan.points) points.append(py::make_tuple(p.alpha, p.neg_ab));
        py::dict d;
        d["argmax_alpha"] = scan.argmax_alpha;
        d["max_value"] = scan.max_value;
        d["points"] = points;
        return d;
      },
      py::arg("family"), py::arg("param"), py::arg("bob"), py::arg("alice"), py::arg("x_values"),
      py::arg("alpha_grid"), py::arg("beta") = 0.1);

  m.def("run_checks", [] {
    py::list out;
    for (const auto& r : run_all_checks())
      out.append(py::make_tuple(r.name, r.passed, r.detail));
    return out;
  });
}
