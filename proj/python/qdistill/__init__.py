"""Weak-measurement distillation of free entanglement from qutrit-qutrit
bound-entangled states.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (
    CostBreakdown,
    DensityMatrix,
    MeasurementSet,
    OutcomeRecord,
    __version__,
    alpha_scan,
    apply_protocol,
    average_negativity,
    classification,
    density_matrix,
    is_ppt,
    make_ancilla,
    make_chi1,
    make_chi2,
    make_chi3,
    make_measurement_set,
    measurement_cost,
    negativity,
    realignment_witness,
    run_checks,
    run_scenario,
    tripartite_entanglement,
    weakness,
    weakness_profile,
)

__all__ = [
    "CostBreakdown",
    "DensityMatrix",
    "MeasurementSet",
    "OutcomeRecord",
    "__version__",
    "alpha_scan",
    "apply_protocol",
    "average_negativity",
    "classification",
    "density_matrix",
    "is_ppt",
    "make_ancilla",
    "make_chi1",
    "make_chi2",
    "make_chi3",
    "make_measurement_set",
    "measurement_cost",
    "negativity",
    "realignment_witness",
    "run_checks",
    "run_scenario",
    "tripartite_entanglement",
    "weakness",
    "weakness_profile",
]
