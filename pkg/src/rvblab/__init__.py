"""Exact numerical laboratory for dimer-covering superpositions.

Small bipartite lattices, exact state assembly from singlet products,
reduced density matrices, Werner-parameter extraction, entanglement
measures, monogamy and telecloning bounds, loop-covering correlation
sums, and multipartite entanglement certificates.
"""

from .bounds import (
    BoundKind,
    BoundReport,
    bound_table,
    compare,
    equidistant_class_min_p,
    gas_monogamy_bound,
    monogamy_bound,
    telecloning_bound,
)
from .coverings import (
    CoveringEnsemble,
    DimerCovering,
    Variant,
    custom_ensemble,
    ensemble_from_json,
    ensemble_to_json,
    enumerate_gas,
    enumerate_liquid,
)
from .entanglement import (
    MeasureRecord,
    WernerFit,
    concurrence_two_qubit,
    eof_from_concurrence,
    eof_two_qubit,
    extract_werner_p,
    is_separable_werner,
    measure_pair,
    monogamy_sum,
    ppt_min_eigenvalue,
    tangle_two_qubit,
    tangle_werner,
    werner_purity,
    werner_state,
)
from .errors import CapExceeded
from .lattice import Boundary, Kind, LatticeSpec, Sublattice, interior_nn_bond
from .linalg import eigvalsh_jacobi, jacobi_eigh, matrix_sqrt_psd, operator_norm
from .loopgas import (
    TransitionGraph,
    build_transition_graph,
    loop_formula_p,
    loop_formula_scan,
    same_sublattice_scan,
)
from .multipartite import (
    AuditResult,
    BipartitionVerdict,
    CertificateReport,
    bipartition_verdict,
    even_subset_audit,
    genuine_multipartite_certificate,
    odd_subset_audit,
    subset_spectrum,
)
from .states import (
    DensityMatrix,
    StateVector,
    assemble,
    check_rotational_invariance,
    inner,
    load_state,
    partial_trace,
    reduced_density_matrix,
    save_state,
    singlet_product,
)

__version__ = "0.1.0"

__all__ = [
    "AuditResult",
    "BipartitionVerdict",
    "Boundary",
    "BoundKind",
    "BoundReport",
    "CapExceeded",
    "CertificateReport",
    "CoveringEnsemble",
    "DensityMatrix",
    "DimerCovering",
    "Kind",
    "LatticeSpec",
    "MeasureRecord",
    "StateVector",
    "Sublattice",
    "TransitionGraph",
    "Variant",
    "WernerFit",
    "assemble",
    "bipartition_verdict",
    "bound_table",
    "build_transition_graph",
    "check_rotational_invariance",
    "compare",
    "concurrence_two_qubit",
    "custom_ensemble",
    "enumerate_gas",
    "enumerate_liquid",
    "ensemble_from_json",
    "ensemble_to_json",
    "eof_from_concurrence",
    "eof_two_qubit",
    "equidistant_class_min_p",
    "even_subset_audit",
    "extract_werner_p",
    "gas_monogamy_bound",
    "genuine_multipartite_certificate",
    "inner",
    "interior_nn_bond",
    "is_separable_werner",
    "jacobi_eigh",
    "eigvalsh_jacobi",
    "load_state",
    "loop_formula_p",
    "loop_formula_scan",
    "matrix_sqrt_psd",
    "measure_pair",
    "monogamy_bound",
    "monogamy_sum",
    "odd_subset_audit",
    "operator_norm",
    "partial_trace",
    "ppt_min_eigenvalue",
    "reduced_density_matrix",
    "same_sublattice_scan",
    "save_state",
    "singlet_product",
    "subset_spectrum",
    "tangle_two_qubit",
    "tangle_werner",
    "telecloning_bound",
    "werner_purity",
    "werner_state",
]
