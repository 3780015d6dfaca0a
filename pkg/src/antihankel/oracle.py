"""Reference dense symmetric eigensolver (cyclic Jacobi) and spectrum comparison.

This module shares no code with the secular path: it only sees a dense
symmetric matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .exceptions import ConvergenceError, NotSymmetricError

__all__ = [
    "EigenDecomposition",
    "SpectrumComparison",
    "jacobi_eigen",
    "rayleigh_refine",
    "compare_spectra",
]

MAX_SWEEPS = 100


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray
    sweeps: int


@numba.njit(cache=True)
def _jacobi_sweeps(a, v, tol, max_sweeps):
    n = a.shape[0]
    fro2 = 0.0
    for i in range(n):
        for j in range(n):
            fro2 += a[i, j] * a[i, j]
    target = tol * tol * fro2
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        if off <= target:
            return sweep
        if sweep == max_sweeps:
            break
        # rotations smaller than this cannot move the off-diagonal mass
        skip = 0.01 * np.sqrt(target / (n * n))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1


def jacobi_eigen(matrix, tol: float = 1e-15) -> EigenDecomposition:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi.

    Sweeps run until the off-diagonal Frobenius norm drops below
    ``tol * ||matrix||_F``.  Values are returned ascending with the
    matching columns of ``vectors``.

    Raises
    ------
    NotSymmetricError
        If the input deviates from symmetry by more than ``1e-13 * max|entry|``.
    ConvergenceError
        If 100 sweeps are not enough.
    """
    a = np.array(matrix, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    size = a.shape[0]
    big = float(np.max(np.abs(a))) if a.size else 0.0
    if np.max(np.abs(a - a.T), initial=0.0) > 1e-13 * big:
        raise NotSymmetricError("matrix is not symmetric")
    # exact power-of-two normalization; the squared-norm target underflows otherwise
    shift = math.frexp(big)[1] if big > 0 else 0
    a = np.ldexp(0.5 * (a + a.T), -shift)
    v = np.eye(size)
    sweeps = _jacobi_sweeps(a, v, float(tol), MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    values = np.ldexp(np.diag(a), shift)
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values=values[order], vectors=v[:, order], sweeps=int(sweeps))


def rayleigh_refine(matrix, decomposition: EigenDecomposition) -> np.ndarray:
    """Sorted Rayleigh quotients of the Jacobi vectors in ``np.longdouble``.

    Float64 Jacobi leaves eigenvalues off by a few ``eps * ||matrix||``.  The
    quotient of a vector with O(eps) error is accurate to O(eps^2), so the
    result is limited by the final rounding to float64.  On platforms where
    ``longdouble`` is plain double this gains little.
    """
    m = np.asarray(matrix, dtype=np.longdouble)
    v = np.asarray(decomposition.vectors, dtype=np.longdouble)
    quotients = np.sum(v * (m @ v), axis=0) / np.sum(v * v, axis=0)
    return np.sort(quotients.astype(float))


@dataclass(frozen=True)
class SpectrumComparison:
    max_abs_diff: float
    worst_index: int  # 1-based position of the largest discrepancy

    def as_dict(self):
        return {"max_abs_diff": self.max_abs_diff, "worst_index": self.worst_index}


def compare_spectra(lhs, rhs) -> SpectrumComparison:
    lhs = np.asarray(lhs, dtype=float).reshape(-1)
    rhs = np.asarray(rhs, dtype=float).reshape(-1)
    if lhs.shape != rhs.shape:
        raise ValueError(f"spectra differ in length: {lhs.size} vs {rhs.size}")
    if lhs.size == 0:
        return SpectrumComparison(0.0, 0)
    diff = np.abs(lhs - rhs)
    worst = int(np.argmax(diff))
    return SpectrumComparison(float(diff[worst]), worst + 1)
