"""Rational secular functions whose zeros are the non-pole eigenvalues of H.

For ``m`` conjugate pairs the basic kernel is ::

    F(t; alpha, beta) = 1/(t - lambda_0)
        + 2 sum_k [ cos(theta_k/2 - alpha k) cos(theta_k/2 - beta k) / (t - |lambda_k|)
                  + sin(theta_k/2 - alpha k) sin(theta_k/2 - beta k) / (t + |lambda_k|) ]

and ``G`` adds the simple pole ``1/(t - lambda_half)`` used for even ``n``.
The secular function is ``det(I2 + [x y]^T (tI - D)^{-1} [b x, a y])``, i.e.
the ratio of the characteristic polynomials of ``H`` and of the
anti-circulant matrix.  That identity also yields an exact eigenvalue
counting function (see :func:`count_below`).

All evaluators accept a scalar or an array of abscissae.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import PoleProximityError
from .matrices import build_unit_vectors
from .spectrum import (
    AntiCirculantSpectrum,
    HankelParams,
    PoleSet,
    compute_spectrum,
    group_sorted,
    pole_multiset,
)

__all__ = [
    "SecularContext",
    "secular_context",
    "eval_F",
    "eval_G",
    "eval_secular",
    "eval_secular_derivative",
    "secular_values",
    "count_below",
    "normalization_radius",
]

POLE_RTOL = 1e-12
_CHUNK = 1 << 18  # max abscissae x terms per block


@dataclass(frozen=True)
class SecularContext:
    """Immutable per-instance data for the secular evaluators.

    ``pole_values`` is the sorted pole multiset; ``pole_weights`` holds, per
    pole, ``(n+2) * (y_j^2, x_j^2, x_j y_j)`` where ``x``, ``y`` are the
    first and last rows of the modal matrix, so that each kernel reads
    ``sum_j w_j / (t - d_j)``.  ``pole_group`` labels poles that coincide
    within the grouping tolerance and ``pairs`` lists, for groups with more
    than one member, ``(j, l, (n+2)^2 (x_l y_j - x_j y_l)^2)``.
    """

    params: HankelParams
    spectrum: AntiCirculantSpectrum
    poles: PoleSet
    m: int
    odd: bool
    phi: float
    eps_pole: float
    lambda0: float
    lambda_half: float | None
    moduli: np.ndarray
    pole_values: np.ndarray
    pole_weights: np.ndarray
    pole_group: np.ndarray
    pairs: tuple

    @property
    def size(self) -> int:
        return self.params.size


def _frozen(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def secular_context(params: HankelParams, spectrum: AntiCirculantSpectrum | None = None) -> SecularContext:
    """Precompute everything the evaluators need for one instance."""
    if spectrum is None:
        spectrum = compute_spectrum(params)
    poles = pole_multiset(params, spectrum)
    size = params.size
    m = params.half

    pair = build_unit_vectors(params, spectrum)
    order = np.argsort(poles.diagonal, kind="stable")
    x, y = pair.x[order], pair.y[order]
    weights = size * np.column_stack([y * y, x * x, x * y])
    groups = np.empty(size, dtype=np.int64)
    pairs = []
    for gid, (lo, hi) in enumerate(group_sorted(poles.values, poles.tol_group)):
        groups[lo:hi] = gid
        for j in range(lo, hi):
            for l in range(j + 1, hi):
                pairs.append((j, l, float(size * size * (x[l] * y[j] - x[j] * y[l]) ** 2)))

    return SecularContext(
        params=params,
        spectrum=spectrum,
        poles=poles,
        m=m,
        odd=params.odd,
        phi=2.0 * math.pi / size,
        eps_pole=POLE_RTOL * params.scale,
        lambda0=float(spectrum.lam[0].real),
        lambda_half=None if params.odd else float(spectrum.lam[m + 1].real),
        moduli=_frozen(spectrum.modulus[1 : m + 1].copy()),
        pole_values=_frozen(np.asarray(poles.values, dtype=float)),
        pole_weights=_frozen(weights),
        pole_group=_frozen(groups),
        pairs=tuple(pairs),
    )


def _as_array(t):
    arr = np.asarray(t, dtype=float)
    return arr, arr.ndim == 0


def _check_poles(ctx, t, with_half):
    poles = [ctx.lambda0, *ctx.moduli, *(-ctx.moduli)]
    if with_half and ctx.lambda_half is not None:
        poles.append(ctx.lambda_half)
    gap = np.min(np.abs(t.reshape(-1, 1) - np.asarray(poles)[None, :]), axis=1)
    if np.any(gap <= ctx.eps_pole):
        worst = float(t.reshape(-1)[np.argmin(gap)])
        raise PoleProximityError(
            f"t={worst!r} lies within {ctx.eps_pole:.3g} of a pole; split the interval at the poles"
        )


def _direct_kernel(ctx, t, alpha, beta):
    """``F_m(t; alpha, beta)`` summed straight from the angle formula."""
    t = t.reshape(-1)
    k = np.arange(1, ctx.m + 1)
    half = ctx.spectrum.theta[1 : ctx.m + 1] / 2.0
    ua, ub = half - alpha * k, half - beta * k
    wc = np.cos(ua) * np.cos(ub)
    ws = np.sin(ua) * np.sin(ub)
    out = np.empty(t.size)
    step = max(1, _CHUNK // max(ctx.m, 1))
    for s in range(0, t.size, step):
        tt = t[s : s + step, None]
        minus = (wc / (tt - ctx.moduli)).sum(axis=1)
        plus = (ws / (tt + ctx.moduli)).sum(axis=1)
        out[s : s + step] = 1.0 / (tt[:, 0] - ctx.lambda0) + 2.0 * (minus + plus)
    return out


def eval_F(ctx: SecularContext, t, alpha: float, beta: float):
    """Kernel ``F_m(t; alpha, beta)`` (no ``lambda_half`` term)."""
    arr, scalar = _as_array(t)
    _check_poles(ctx, arr, with_half=False)
    out = _direct_kernel(ctx, arr, alpha, beta).reshape(arr.shape)
    return float(out) if scalar else out


def eval_G(ctx: SecularContext, t, alpha: float, beta: float):
    """Kernel ``G_m(t; alpha, beta) = F_m(t; alpha, beta) + 1/(t - lambda_half)``."""
    if ctx.lambda_half is None:
        raise ValueError("G is only defined for even n")
    arr, scalar = _as_array(t)
    _check_poles(ctx, arr, with_half=True)
    flat = arr.reshape(-1)
    out = (_direct_kernel(ctx, flat, alpha, beta) + 1.0 / (flat - ctx.lambda_half)).reshape(arr.shape)
    return float(out) if scalar else out


def _split_sums(ctx: SecularContext, t: np.ndarray, derivative: bool):
    """Kernel sums split into the pole group nearest to each ``t`` and the rest.

    Returns dict with ``far`` and ``near`` arrays of shape ``(len(t), 3)``
    (columns yy, xx, xy), the within-group quadratic term ``qgg`` and, with
    ``derivative``, the derivatives of all three.
    """
    d = ctx.pole_values
    w = ctx.pole_weights
    size = d.size
    pos = np.clip(np.searchsorted(d, t), 1, size - 1)
    nearest = np.where(np.abs(t - d[pos - 1]) <= np.abs(d[pos] - t), pos - 1, pos)
    if size == 1:
        nearest = np.zeros(t.size, dtype=np.int64)
    near_gid = ctx.pole_group[nearest]

    far = np.empty((t.size, 3))
    near = np.empty((t.size, 3))
    qgg = np.zeros(t.size)
    dfar = np.empty((t.size, 3)) if derivative else None
    dnear = np.empty((t.size, 3)) if derivative else None
    dqgg = np.zeros(t.size) if derivative else None
    step = max(1, _CHUNK // size)
    for s in range(0, t.size, step):
        sl = slice(s, s + step)
        r = 1.0 / (t[sl, None] - d[None, :])
        mask = ctx.pole_group[None, :] == near_gid[sl, None]
        r_near = np.where(mask, r, 0.0)
        r_far = r - r_near
        far[sl] = r_far @ w
        near[sl] = r_near @ w
        if derivative:
            dfar[sl] = -(r_far * r_far) @ w
            dnear[sl] = -(r_near * r_near) @ w
        for j, l, coef in ctx.pairs:
            on = near_gid[sl] == ctx.pole_group[j]
            rj, rl = r[:, j], r[:, l]
            qgg[sl] += np.where(on, coef * rj * rl, 0.0)
            if derivative:
                dqgg[sl] -= np.where(on, coef * rj * rl * (rj + rl), 0.0)
    out = {"far": far, "near": near, "qgg": qgg}
    if derivative:
        out.update(dfar=dfar, dnear=dnear, dqgg=dqgg)
    return out


def kernel_triplet(ctx: SecularContext, t: np.ndarray):
    """``(yy, xx, xy)`` kernels at flat abscissae ``t``.

    ``yy = F(t; phi, phi)``, ``xx = F(t; 0, 0)``; for even ``n`` these are
    the ``G`` versions.  ``xy`` is ``F(t; 0, phi)`` for odd ``n`` and
    ``G(t; 0, phi) - 2/(t - lambda_half)`` for even ``n``.
    """
    parts = _split_sums(ctx, np.asarray(t, dtype=float).reshape(-1), False)
    total = parts["far"] + parts["near"]
    return total[:, 0], total[:, 1], total[:, 2]


def secular_values(ctx: SecularContext, t, derivative=False):
    """Unchecked f/g evaluation on a flat array (solver hot path).

    The quadratic term ``yy*xx - xy^2`` is assembled without ever forming
    the cancelling ``1/(t - d)^2`` products of the nearest pole group, so
    the value stays accurate right next to a pole that is also an
    eigenvalue (a removable singularity).
    """
    t = np.asarray(t, dtype=float).reshape(-1)
    return _assemble(ctx, _split_sums(ctx, t, derivative), derivative)


def _assemble(ctx, p, derivative=False):
    a, b = ctx.params.a, ctx.params.b
    size = ctx.size
    fy, fx, fxy = p["far"].T
    ny, nx, nxy = p["near"].T
    quad = fy * fx - fxy * fxy + ny * fx + nx * fy - 2.0 * nxy * fxy + p["qgg"]
    ab = a * b / (size * size)
    f = 1.0 + (a / size) * (fy + ny) + (b / size) * (fx + nx) + ab * quad
    if not derivative:
        return f
    dfy, dfx, dfxy = p["dfar"].T
    dny, dnx, dnxy = p["dnear"].T
    dquad = (
        dfy * fx + fy * dfx - 2.0 * fxy * dfxy
        + dny * fx + ny * dfx + dnx * fy + nx * dfy
        - 2.0 * (dnxy * fxy + nxy * dfxy)
        + p["dqgg"]
    )
    df = (a / size) * (dfy + dny) + (b / size) * (dfx + dnx) + ab * dquad
    return f, df


def eval_secular(ctx: SecularContext, t):
    """Secular function f (odd n) or g (even n); tends to 1 at infinity."""
    arr, scalar = _as_array(t)
    _check_poles(ctx, arr, with_half=True)
    out = secular_values(ctx, arr).reshape(arr.shape)
    return float(out) if scalar else out


def eval_secular_derivative(ctx: SecularContext, t):
    arr, scalar = _as_array(t)
    _check_poles(ctx, arr, with_half=True)
    _, df = secular_values(ctx, arr, derivative=True)
    df = df.reshape(arr.shape)
    return float(df) if scalar else df


def count_below(ctx: SecularContext, t) -> np.ndarray:
    """Number of eigenvalues of H strictly below each ``t``.

    Haynsworth inertia additivity applied to the bordered matrix
    ``[[D - tI, U], [U^T, C^{-1}]]`` with ``U = [x y]``, ``C = diag(b, a)``
    gives ``neg(H - tI) = #{d < t} + neg(C S C) - neg(C)`` where
    ``C S C = C + C U^T (tI - D)^{-1} U C``.  Its determinant is
    ``a b f(t)``, so the count costs one secular evaluation.
    """
    t = np.asarray(t, dtype=float).reshape(-1)
    # the formula is singular on a pole; stepping down an ulp leaves the count alone
    on_pole = np.isin(t, ctx.poles.values)
    if np.any(on_pole):
        t = t.copy()
        while np.any(on_pole):  # poles can be one ulp apart
            t[on_pole] = np.nextafter(t[on_pole], -np.inf)
            on_pole = np.isin(t, ctx.poles.values)
    a, b = ctx.params.a, ctx.params.b
    size = ctx.size
    below = np.searchsorted(ctx.poles.values, t, side="left")
    if a == 0.0 and b == 0.0:
        return below
    parts = _split_sums(ctx, t, False)
    yy, xx, xy = (parts["far"] + parts["near"]).T
    if a == 0.0:
        return below + (b * (1.0 + b * xx / size) < 0) - (b < 0)
    if b == 0.0:
        return below + (a * (1.0 + a * yy / size) < 0) - (a < 0)
    # congruence by |C|^(-1/2) keeps the inertia of C S C and gives
    # [[p, r], [r, q]] with unit-size constant parts and determinant sgn(ab) f
    p = np.sign(b) + abs(b) * xx / size
    q = np.sign(a) + abs(a) * yy / size
    r = math.sqrt(abs(a)) * math.sqrt(abs(b)) * xy / size
    half = 0.5 * (p + q)
    rad = np.hypot(0.5 * (p - q), r)
    big = half + np.copysign(rad, half)
    # away from poles the entries are accurate and the direct formula keeps
    # full precision where the block vanishes (a repeated eigenvalue), while
    # the determinant only resolves t to sqrt(eps) there; near poles the
    # entries blow up and only the cancellation-free f is trustworthy
    direct = np.abs(big) <= 2.0
    small = np.where(
        direct,
        np.sign(half - np.copysign(rad, half)),
        np.sign(a) * np.sign(b) * np.sign(_assemble(ctx, parts)) * np.sign(big),
    )
    neg = (big < 0).astype(int) + (small < 0)
    return below + neg - int(a < 0) - int(b < 0)


def normalization_radius(ctx: SecularContext, eps: float) -> float:
    """A radius ``T`` with ``|secular(t) - 1| <= eps`` whenever ``|t| >= T``.

    Every kernel is a sum of at most ``K = 2m + 2`` terms (``2m + 1`` for odd ``n``) with numerators
    bounded by one, so ``|kernel| <= K / (|t| - R)`` beyond the largest pole
    modulus ``R``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    a, b = abs(ctx.params.a), abs(ctx.params.b)
    size = ctx.size
    big = float(np.max(np.abs(ctx.poles.values)))
    terms = 2 * ctx.m + (1 if ctx.odd else 2)
    lin = (a + b) / size
    quad = 2.0 * a * b / size**2
    if lin == 0 and quad == 0:
        return big
    # solve lin*u + quad*u^2 = eps for the admissible kernel bound u
    if quad == 0:
        u = eps / lin
    else:
        u = (-lin + math.sqrt(lin * lin + 4.0 * quad * eps)) / (2.0 * quad)
    return big + terms / u
