"""Dense builders: the Hankel matrix, its anti-circulant companion, the
real modal matrix that diagonalizes the latter, and the two unit vectors
that carry the rank-two difference between them.

Matrices are plain ``numpy.ndarray`` of shape ``(n+2, n+2)``.  Nothing here
exploits structure; these builders exist for verification and for the
oracle, the secular path never materializes a matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .spectrum import (
    AntiCirculantSpectrum,
    HankelParams,
    compute_spectrum,
    pole_multiset,
    reduced_phase,
)

__all__ = [
    "VectorPair",
    "DecompositionReport",
    "build_hankel",
    "build_anticirculant",
    "build_modal_matrix",
    "build_unit_vectors",
    "verify_decompositions",
]


def build_hankel(params: HankelParams) -> np.ndarray:
    size = params.size
    i, j = np.indices((size, size))
    s = i + j  # 0-based: a on s = n, c on s = n+1, b on s = n+2
    out = np.zeros((size, size))
    out[s == size - 2] = params.a
    out[s == size - 1] = params.c
    out[s == size] = params.b
    return out


def build_anticirculant(params: HankelParams) -> np.ndarray:
    """Anti-circulant matrix with first row ``(b, 0, ..., 0, a, c)``."""
    size = params.size
    first_row = np.zeros(size)
    first_row[0] = params.b
    first_row[-2] += params.a
    first_row[-1] += params.c
    i, j = np.indices((size, size))
    return first_row[(i + j) % size]


def build_modal_matrix(params: HankelParams, spectrum: AntiCirculantSpectrum) -> np.ndarray:
    """Real orthogonal ``M`` with ``A = M diag(modal poles) M^T``.

    Columns: a constant column, ``m`` cosine columns, for even ``n`` the
    alternating column, then ``m`` sine columns in reverse index order.
    """
    size = params.size
    m = params.half
    half_theta = spectrum.theta / 2.0
    rows = np.arange(size)[:, None]
    out = np.empty((size, size))
    out[:, 0] = 1.0 / np.sqrt(size)

    idx = np.arange(1, m + 1)[None, :]
    cos_cols = np.sqrt(2.0 / size) * np.cos(half_theta[idx] + reduced_phase(rows * idx, size))
    sin_cols = np.sqrt(2.0 / size) * np.sin(half_theta[idx] + reduced_phase(rows * idx, size))
    out[:, 1 : m + 1] = cos_cols
    if not params.odd:
        out[:, m + 1] = np.where(np.arange(size) % 2 == 0, 1.0, -1.0) / np.sqrt(size)
    out[:, size - m :] = sin_cols[:, ::-1]
    return out


@dataclass(frozen=True)
class VectorPair:
    """First (``x``) and last (``y``) rows of the modal matrix."""

    x: np.ndarray
    y: np.ndarray


def build_unit_vectors(params: HankelParams, spectrum: AntiCirculantSpectrum) -> VectorPair:
    size = params.size
    m = params.half
    half_theta = spectrum.theta[1 : m + 1] / 2.0
    k = np.arange(1, m + 1)
    shift = reduced_phase(-k, size)
    root_half = 1.0 / np.sqrt(2.0)

    x_mid = [root_half] if not params.odd else []
    y_mid = [-root_half] if not params.odd else []
    x = np.concatenate([[root_half], np.cos(half_theta), x_mid, np.sin(half_theta)[::-1]])
    y = np.concatenate(
        [[root_half], np.cos(half_theta + shift), y_mid, np.sin(half_theta + shift)[::-1]]
    )
    factor = np.sqrt(2.0 / size)
    return VectorPair(x=factor * x, y=factor * y)


@dataclass(frozen=True)
class DecompositionReport:
    """Max-norm residuals of the anti-circulant and Hankel factorizations."""

    anticirculant: float
    hankel: float
    orthogonality: float
    xy_inner: float
    x_norm: float
    y_norm: float

    @property
    def worst(self) -> float:
        return max(asdict(self).values())

    def as_dict(self):
        return asdict(self)


def verify_decompositions(params: HankelParams) -> DecompositionReport:
    """Rebuild ``A`` and ``H`` from the modal factorization and report errors.

    Large residuals are returned, never raised.
    """
    spectrum = compute_spectrum(params)
    poles = pole_multiset(params, spectrum)
    modal = build_modal_matrix(params, spectrum)
    pair = build_unit_vectors(params, spectrum)
    diag = np.diag(poles.diagonal)
    inner = diag - params.b * np.outer(pair.x, pair.x) - params.a * np.outer(pair.y, pair.y)

    def maxabs(m):
        return float(np.max(np.abs(m)))

    return DecompositionReport(
        anticirculant=maxabs(build_anticirculant(params) - modal @ diag @ modal.T),
        hankel=maxabs(build_hankel(params) - modal @ inner @ modal.T),
        orthogonality=maxabs(modal.T @ modal - np.eye(params.size)),
        xy_inner=abs(float(pair.x @ pair.y)),
        x_norm=abs(float(np.linalg.norm(pair.x)) - 1.0),
        y_norm=abs(float(np.linalg.norm(pair.y)) - 1.0),
    )
