"""Eigenvalues and eigenvectors of anti-tridiagonal Hankel matrices.

The matrix of order ``n + 2`` is split into a real anti-circulant part, whose
spectrum is known in closed form, and a rank-two corner correction.  The
eigenvalues are then the zeros of a small rational secular function plus
any anti-circulant eigenvalues that survive the correction.
"""

from .exceptions import (
    AntiHankelError,
    CompletenessError,
    ConvergenceError,
    DegenerateDenominatorError,
    NotSymmetricError,
    PoleProximityError,
    PoleValueInputError,
)
from .matrices import (
    DecompositionReport,
    VectorPair,
    build_anticirculant,
    build_hankel,
    build_modal_matrix,
    build_unit_vectors,
    verify_decompositions,
)
from .oracle import (
    EigenDecomposition,
    SpectrumComparison,
    compare_spectra,
    jacobi_eigen,
    rayleigh_refine,
)
from .secular import (
    SecularContext,
    eval_F,
    eval_G,
    eval_secular,
    eval_secular_derivative,
    normalization_radius,
    secular_context,
)
from .solver import (
    EigenKind,
    EigenPair,
    SpectralResult,
    attach_vectors,
    bracket_violation,
    classify_pole_eigenvalues,
    eigenvector,
    inverse_iteration,
    isolate_roots,
    solve,
)
from .spectrum import (
    AntiCirculantSpectrum,
    HankelParams,
    PoleKind,
    PoleSet,
    PoleSource,
    compute_spectrum,
    perturbation_bounds,
    pole_multiset,
    weyl_brackets,
)

__version__ = "0.1.0"

__all__ = [
    "AntiCirculantSpectrum",
    "AntiHankelError",
    "CompletenessError",
    "ConvergenceError",
    "DecompositionReport",
    "DegenerateDenominatorError",
    "EigenDecomposition",
    "EigenKind",
    "EigenPair",
    "HankelParams",
    "NotSymmetricError",
    "PoleKind",
    "PoleProximityError",
    "PoleSet",
    "PoleSource",
    "PoleValueInputError",
    "SecularContext",
    "SpectralResult",
    "SpectrumComparison",
    "VectorPair",
    "attach_vectors",
    "bracket_violation",
    "build_anticirculant",
    "build_hankel",
    "build_modal_matrix",
    "build_unit_vectors",
    "classify_pole_eigenvalues",
    "compare_spectra",
    "compute_spectrum",
    "eigenvector",
    "eval_F",
    "eval_G",
    "eval_secular",
    "eval_secular_derivative",
    "inverse_iteration",
    "isolate_roots",
    "jacobi_eigen",
    "normalization_radius",
    "perturbation_bounds",
    "pole_multiset",
    "rayleigh_refine",
    "secular_context",
    "solve",
    "verify_decompositions",
    "weyl_brackets",
]
