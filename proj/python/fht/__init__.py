"""Pairwise number-operator factorization of fermionic two-body Hamiltonians.

The heavy lifting lives in the compiled extension ``fht._core``; this package
re-exports its public surface.  Typical flow::

    import fht

    inst = fht.ring_planewave(n_modes=3)
    fh = fht.factorize_hamiltonian(inst)
    exact = fht.build_from_tensor(inst).entries
    assembled = fht.build_from_factored(fh).entries
"""

from ._core import (  # noqa: F401
    AntisymmetrizeResult,
    FactorSlice,
    FactoredHamiltonian,
    FactorizationOptions,
    FockMatrix,
    GroupedMatrix,
    HamiltonianInstance,
    OneBodyMatrix,
    Parity,
    SchurResult,
    SymmetryReport,
    TrotterScanResult,
    TruncationReport,
    TwoBodyTensor,
    __version__,
    antisymmetrize,
    build_from_factored,
    build_from_tensor,
    build_one_body,
    compare_spectra,
    effective_one_body,
    factorize_hamiltonian,
    format_double,
    group,
    load_factor_file,
    load_tensor_file,
    random_valid,
    real_basis_instance,
    reconstruct_tensor,
    ring_momentum,
    ring_planewave,
    save_factor_file,
    save_tensor_file,
    schur_grouped,
    trotter_scan,
    truncate,
    truncation_scan,
    ungroup,
    validate_symmetries,
)

__all__ = [
    "AntisymmetrizeResult",
    "FactorSlice",
    "FactoredHamiltonian",
    "FactorizationOptions",
    "FockMatrix",
    "GroupedMatrix",
    "HamiltonianInstance",
    "OneBodyMatrix",
    "Parity",
    "SchurResult",
    "SymmetryReport",
    "TrotterScanResult",
    "TruncationReport",
    "TwoBodyTensor",
    "antisymmetrize",
    "build_from_factored",
    "build_from_tensor",
    "build_one_body",
    "compare_spectra",
    "effective_one_body",
    "factorize_hamiltonian",
    "format_double",
    "group",
    "load_factor_file",
    "load_tensor_file",
    "random_valid",
    "real_basis_instance",
    "reconstruct_tensor",
    "ring_momentum",
    "ring_planewave",
    "save_factor_file",
    "save_tensor_file",
    "schur_grouped",
    "trotter_scan",
    "truncate",
    "truncation_scan",
    "ungroup",
    "validate_symmetries",
]
