"""Anti-circulant eigenvalue data, pole multisets and perturbation brackets.

The anti-tridiagonal Hankel matrix ``H`` of order ``n + 2`` differs from a
real anti-circulant matrix ``A`` only in its two corner diagonal entries.
Everything the solver needs about ``A`` is collected here: the complex
eigenvalues ``lambda_k`` of the associated circulant, their arguments and
moduli, and the real spectrum of ``A`` (the pole set of the secular
function).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HankelParams",
    "AntiCirculantSpectrum",
    "PoleKind",
    "PoleSource",
    "PoleSet",
    "compute_spectrum",
    "pole_multiset",
    "weyl_brackets",
    "perturbation_bounds",
]

ZERO_MODULUS_RTOL = 1e-14
GROUP_RTOL = 1e-10


@dataclass(frozen=True)
class HankelParams:
    """Problem instance: the matrix has order ``n + 2`` and stripes ``a, c, b``.

    Reading the matrix top-left to bottom-right, the anti-diagonal stripes
    hold ``a`` (above the main anti-diagonal), ``c`` (main anti-diagonal)
    and ``b`` (below it).
    """

    n: int
    a: float
    b: float
    c: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ValueError(f"n must be an integer, got {self.n!r}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        for name in ("a", "b", "c"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @property
    def size(self) -> int:
        return self.n + 2

    @property
    def odd(self) -> bool:
        return self.n % 2 == 1

    @property
    def half(self) -> int:
        """Number of conjugate pairs: (n+1)/2 for odd n, n/2 for even n."""
        return (self.n + 1) // 2 if self.odd else self.n // 2

    @property
    def scale(self) -> float:
        return 1.0 + abs(self.a) + abs(self.b) + abs(self.c)

    def negated(self) -> "HankelParams":
        return HankelParams(self.n, -self.a, -self.b, -self.c)


@dataclass(frozen=True)
class AntiCirculantSpectrum:
    """``lambda_k``, ``theta_k = arg(lambda_k)`` and ``|lambda_k|``, k = 0..n+1."""

    lam: np.ndarray
    theta: np.ndarray
    modulus: np.ndarray

    def __post_init__(self):
        for arr in (self.lam, self.theta, self.modulus):
            arr.setflags(write=False)


def reduced_phase(r, size):
    """``2*pi*r/size`` with the integer ``r`` reduced to (-size/2, size/2]."""
    r = np.mod(np.asarray(r), size)
    r = np.where(2 * r > size, r - size, r)
    return 2.0 * np.pi * r / size


def unit_root_power(r, size):
    """``exp(2*pi*i*r/size)`` evaluated on the reduced phase."""
    angle = reduced_phase(r, size)
    return np.cos(angle) + 1j * np.sin(angle)


def compute_spectrum(params: HankelParams) -> AntiCirculantSpectrum:
    """Evaluate ``lambda_k = b + a w^(-nk) + c w^(-(n+1)k)`` for all k.

    With ``w = exp(2 pi i / (n+2))`` the exponents reduce to ``w^(2k)`` and
    ``w^k``; they are taken modulo ``n + 2`` before any trigonometry.
    Conjugate symmetry and the real entries (k = 0 and k = (n+2)/2) are
    imposed exactly.
    """
    size = params.size
    a, b, c = params.a, params.b, params.c
    k = np.arange(size)
    lam = b + a * unit_root_power(2 * k, size) + c * unit_root_power(k, size)
    lam[0] = complex(a + b + c, 0.0)
    for j in range(1, (size + 1) // 2):
        lam[size - j] = np.conj(lam[j])
    if size % 2 == 0:
        lam[size // 2] = complex(a + b - c, 0.0)

    modulus = np.abs(lam)
    theta = np.angle(lam)
    # np.angle maps (-x, -0.0) to -pi; the principal branch is (-pi, pi].
    theta = np.where(theta <= -np.pi, np.pi, theta)
    theta = np.where(modulus <= ZERO_MODULUS_RTOL * params.scale, 0.0, theta)
    return AntiCirculantSpectrum(lam=lam, theta=theta, modulus=modulus)


class PoleKind(enum.Enum):
    LAMBDA0 = "LAMBDA0"
    PLUS_MOD = "PLUS_MOD"
    MINUS_MOD = "MINUS_MOD"
    LAMBDA_HALF = "LAMBDA_HALF"


@dataclass(frozen=True)
class PoleSource:
    kind: PoleKind
    k: int

    def __str__(self):
        if self.kind in (PoleKind.PLUS_MOD, PoleKind.MINUS_MOD):
            return f"{self.kind.value}({self.k})"
        return self.kind.value


@dataclass(frozen=True)
class PoleSet:
    """Spectrum of the anti-circulant matrix, sorted, with provenance.

    ``diagonal`` keeps the values in modal order
    ``(lambda_0, |lambda_1|, ..., |lambda_m|, [lambda_half], -|lambda_m|, ..., -|lambda_1|)``,
    which is the column order of the modal matrix.  ``values`` is the same
    multiset sorted non-decreasingly (stable), ``sources`` follows
    ``values``.  ``distinct`` lists ``(value, multiplicity)`` after grouping
    entries closer than ``tol_group``; ``group_bounds`` gives the
    ``(min, max)`` members of each group.
    """

    values: np.ndarray
    sources: tuple
    diagonal: np.ndarray
    distinct: tuple
    group_bounds: tuple
    tol_group: float = field(default=0.0)

    def __post_init__(self):
        self.values.setflags(write=False)
        self.diagonal.setflags(write=False)

    def __len__(self):
        return len(self.values)


def _modal_order(params, spectrum):
    m = params.half
    mods = spectrum.modulus
    vals = [spectrum.lam[0].real]
    srcs = [PoleSource(PoleKind.LAMBDA0, 0)]
    for k in range(1, m + 1):
        vals.append(mods[k])
        srcs.append(PoleSource(PoleKind.PLUS_MOD, k))
    if not params.odd:
        vals.append(spectrum.lam[m + 1].real)
        srcs.append(PoleSource(PoleKind.LAMBDA_HALF, m + 1))
    for k in range(m, 0, -1):
        vals.append(-mods[k])
        srcs.append(PoleSource(PoleKind.MINUS_MOD, k))
    return np.array(vals, dtype=float), srcs


def group_sorted(values, tol):
    """Chain-group a sorted array; returns lists of index ranges."""
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > tol:
            groups.append((start, i))
            start = i
    return groups


def pole_multiset(params: HankelParams, spectrum: AntiCirculantSpectrum) -> PoleSet:
    diagonal, srcs = _modal_order(params, spectrum)
    order = np.argsort(diagonal, kind="stable")
    values = diagonal[order]
    tol = GROUP_RTOL * params.scale
    distinct = []
    bounds = []
    for lo, hi in group_sorted(values, tol):
        chunk = values[lo:hi]
        distinct.append((float(chunk.mean()), hi - lo))
        bounds.append((float(chunk[0]), float(chunk[-1])))
    return PoleSet(
        values=values,
        sources=tuple(srcs[i] for i in order),
        diagonal=diagonal,
        distinct=tuple(distinct),
        group_bounds=tuple(bounds),
        tol_group=tol,
    )


def perturbation_bounds(params: HankelParams) -> tuple[float, float]:
    """Extreme eigenvalues of the rank-two correction: min/max of {0, -a, -b}."""
    candidates = (0.0, -params.a, -params.b)
    return min(candidates), max(candidates)


def weyl_brackets(params: HankelParams, poles: PoleSet) -> np.ndarray:
    """Intervals ``[d_k + min{0,-a,-b}, d_k + max{0,-a,-b}]`` as an (n+2, 2) array.

    The k-th sorted eigenvalue of ``H`` lies in the k-th row.
    """
    lo, hi = perturbation_bounds(params)
    d = np.asarray(poles.values, dtype=float)
    return np.column_stack([d + lo, d + hi])
