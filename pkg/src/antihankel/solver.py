"""Full spectrum of the anti-tridiagonal Hankel matrix.

Pipeline: anti-circulant spectrum -> pole multiset -> perturbation brackets
-> zeros of the secular function between consecutive poles -> eigenvalues
sitting exactly on pole values -> optional eigenvectors.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    CompletenessError,
    DegenerateDenominatorError,
    PoleValueInputError,
)
from .matrices import build_hankel
from .secular import (
    SecularContext,
    count_below,
    secular_context,
    secular_values,
)
from .spectrum import (
    GROUP_RTOL,
    HankelParams,
    PoleSet,
    group_sorted,
    reduced_phase,
    weyl_brackets,
)

__all__ = [
    "EigenKind",
    "EigenPair",
    "SpectralResult",
    "isolate_roots",
    "classify_pole_eigenvalues",
    "eigenvector",
    "inverse_iteration",
    "solve",
    "attach_vectors",
    "bracket_violation",
]

START_SAMPLES = 64
MAX_SAMPLES = 4096
REFINE_FACTOR = 4
DEN_RTOL = 1e-8
PIVOT_RTOL = 1e-10
JITTER_RTOL = 1e-10
INVERSE_ITERATIONS = 3
RESIDUAL_RTOL = 1e-8
_MAX_BISECTIONS = 200


class EigenKind(str, enum.Enum):
    SECULAR_ZERO = "SECULAR_ZERO"
    POLE_VALUE = "POLE_VALUE"


@dataclass(frozen=True)
class EigenPair:
    value: float
    kind: EigenKind
    vector: np.ndarray | None = None
    residual: float | None = None
    method: str | None = None


@dataclass(frozen=True)
class SpectralResult:
    params: HankelParams
    pairs: tuple
    diagnostics: dict = field(default_factory=dict)

    @property
    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.pairs])

    @property
    def kinds(self) -> list:
        return [p.kind for p in self.pairs]

    @property
    def vectors(self) -> np.ndarray | None:
        if any(p.vector is None for p in self.pairs):
            return None
        return np.column_stack([p.vector for p in self.pairs])

    def __len__(self):
        return len(self.pairs)


# ---------------------------------------------------------------- roots


def _search_intervals(ctx: SecularContext, brackets):
    """Open intervals between pole groups, plus the two clipped outer rays."""
    eps = ctx.eps_pole
    margin = GROUP_RTOL * ctx.params.scale
    bounds = ctx.poles.group_bounds
    lo_hull = float(brackets[0, 0]) - margin
    hi_hull = float(brackets[-1, 1]) + margin
    edges = [(lo_hull, bounds[0][0] - eps)]
    edges += [(bounds[i][1] + eps, bounds[i + 1][0] - eps) for i in range(len(bounds) - 1)]
    edges.append((bounds[-1][1] + eps, hi_hull))
    left = np.array([e[0] for e in edges])
    right = np.array([e[1] for e in edges])
    keep = right > left
    return left[keep], right[keep]


def _bisect_signs(ctx, lo, hi, f_lo, tol):
    """Vectorized bisection of sign-change brackets down to width ``tol``."""
    lo, hi = lo.copy(), hi.copy()
    s_lo = np.sign(f_lo)
    for _ in range(_MAX_BISECTIONS):
        active = (hi - lo) > tol
        if not np.any(active):
            break
        mid = 0.5 * (lo + hi)
        stalled = (mid <= lo) | (mid >= hi)
        active &= ~stalled
        if not np.any(active):
            break
        fm = secular_values(ctx, mid[active])
        same = np.sign(fm) == s_lo[active]
        idx = np.flatnonzero(active)
        lo[idx[same]] = mid[idx[same]]
        hi[idx[~same]] = mid[idx[~same]]
        zero = fm == 0
        lo[idx[zero]] = hi[idx[zero]] = mid[idx[zero]]
    return lo, hi


def _newton_polish(ctx, lo, hi):
    mid = 0.5 * (lo + hi)
    if mid.size == 0:
        return mid
    f0, df = secular_values(ctx, mid, derivative=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.where(df != 0, f0 / df, 0.0)
    cand = mid - step
    ok = np.isfinite(cand) & (cand >= lo) & (cand <= hi)
    out = mid.copy()
    if np.any(ok):
        f1 = secular_values(ctx, cand[ok])
        better = np.abs(f1) <= np.abs(f0[ok])
        idx = np.flatnonzero(ok)[better]
        out[idx] = cand[idx]
    return out


def _bisect_counts(ctx, left, right, base, tol):
    """Locate eigenvalues number ``base`` (0-based) by bisection on the count."""
    lo, hi = left.astype(float).copy(), right.astype(float).copy()
    for _ in range(_MAX_BISECTIONS):
        active = (hi - lo) > tol
        if not np.any(active):
            break
        mid = 0.5 * (lo + hi)
        active &= (mid > lo) & (mid < hi)
        if not np.any(active):
            break
        idx = np.flatnonzero(active)
        above = count_below(ctx, mid[idx]) > base[idx]
        hi[idx[above]] = mid[idx[above]]
        lo[idx[~above]] = mid[idx[~above]]
    return 0.5 * (lo + hi)


@dataclass
class _Isolation:
    roots: np.ndarray
    samples: int
    fallback_intervals: int


def _isolate(ctx: SecularContext, brackets, tol, start_samples=START_SAMPLES) -> _Isolation:
    params = ctx.params
    if params.a == 0.0 and params.b == 0.0:
        return _Isolation(np.empty(0), 0, 0)
    left, right = _search_intervals(ctx, brackets)
    c_left = count_below(ctx, left)
    expected = count_below(ctx, right) - c_left

    found = [None] * left.size
    pending = np.flatnonzero(expected > 0)
    samples = start_samples
    used = 0
    while pending.size and samples <= MAX_SAMPLES:
        used = samples
        grid = np.linspace(0.0, 1.0, samples)
        pts = left[pending, None] + (right - left)[pending, None] * grid[None, :]
        vals = secular_values(ctx, pts.ravel()).reshape(pts.shape)
        sg = np.sign(vals)
        change = sg[:, :-1] * sg[:, 1:] < 0
        exact = sg == 0
        n_found = change.sum(axis=1) + exact.sum(axis=1)
        done = n_found == expected[pending]
        rows, cols = np.nonzero(change[done])
        sub = pending[done]
        if rows.size:
            pts_d, vals_d = pts[done], vals[done]
            lo, hi = _bisect_signs(ctx, pts_d[rows, cols], pts_d[rows, cols + 1], vals_d[rows, cols], tol)
            polished = _newton_polish(ctx, lo, hi)
        for j, interval in enumerate(sub):
            zs = list(pts[done][j][exact[done][j]])
            if rows.size:
                zs += list(polished[rows == j])
            found[interval] = np.sort(np.array(zs, dtype=float))
        pending = pending[~done]
        samples *= REFINE_FACTOR

    # sign changes cannot resolve these (close or coalesced pairs); use the count
    if pending.size:
        reps = expected[pending]
        owner = np.repeat(pending, reps)
        base = np.concatenate([c_left[i] + np.arange(expected[i]) for i in pending])
        roots = _bisect_counts(ctx, left[owner], right[owner], base, tol)
        for interval in pending:
            found[interval] = np.sort(roots[owner == interval])

    pieces = [r for r in found if r is not None and r.size]
    roots = np.sort(np.concatenate(pieces)) if pieces else np.empty(0)
    return _Isolation(roots, used, int(pending.size))


def isolate_roots(ctx: SecularContext, poles: PoleSet, brackets, tol: float) -> np.ndarray:
    """All zeros of the secular function inside the perturbation hull.

    Each interval between consecutive distinct poles (and the two outer
    rays clipped to the hull of ``brackets``) is scanned for sign changes on
    64 points, refined 4x up to 4096 while fewer zeros are seen than the
    inertia count says are there.  Sign-change brackets are bisected to
    width ``tol`` and polished by one guarded Newton step.  Intervals that
    still disagree with the count are solved by bisection on the count.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if poles is not ctx.poles and not np.array_equal(poles.values, ctx.poles.values):
        raise ValueError("pole set does not belong to this context")
    return _isolate(ctx, np.asarray(brackets, dtype=float), tol).roots


# ---------------------------------------------------------------- pole values


def _nullity(matrix, threshold):
    """Number of singular values at most ``threshold``.

    For symmetric ``H - dI`` these are exactly ``|mu_i - d|``, so the count is
    decisive even where elimination would pick a small but admissible pivot
    ahead of a cancelled one.
    """
    sigma = np.linalg.svd(np.asarray(matrix, dtype=float), compute_uv=False)
    return int(np.sum(sigma <= threshold))


@dataclass(frozen=True)
class _PoleWindow:
    value: float
    lo: float
    hi: float


def _pole_windows(ctx: SecularContext, threshold):
    """Search window around each distinct pole for the cheap count screen."""
    bounds = ctx.poles.group_bounds
    size = ctx.size
    out = []
    for i, (value, _) in enumerate(ctx.poles.distinct):
        lo_b, hi_b = bounds[i]
        reach = max(size * threshold, 2.0 * ctx.eps_pole)
        if i > 0:
            reach = min(reach, 0.5 * (lo_b - bounds[i - 1][1]))
        if i + 1 < len(bounds):
            reach = min(reach, 0.5 * (bounds[i + 1][0] - hi_b))
        reach = max(reach, 2.0 * ctx.eps_pole)
        out.append(_PoleWindow(value, lo_b - reach, hi_b + reach))
    return out


def _classify(ctx: SecularContext, h, threshold):
    """Per distinct pole: (window, eigenvalues counted in window, nullity)."""
    windows = _pole_windows(ctx, threshold)
    lo = np.array([w.lo for w in windows])
    hi = np.array([w.hi for w in windows])
    nearby = count_below(ctx, hi) - count_below(ctx, lo)
    out = []
    for w, near in zip(windows, nearby):
        mult = 0
        if near > 0:
            # singular values are distances |mu - d|; stay inside this window so
            # eigenvalues of a close neighbour are not counted twice
            local = min(threshold, w.value - w.lo, w.hi - w.value)
            mult = min(_nullity(h - w.value * np.eye(ctx.size), local), int(near))
        out.append((w, int(near), int(mult)))
    return out


def classify_pole_eigenvalues(params: HankelParams, poles: PoleSet, roots, ctx: SecularContext | None = None):
    """Multiplicity of every distinct pole value as an eigenvalue of ``H``.

    The multiplicity is the nullity of ``H - dI`` with threshold
    ``1e-10 * scale * max|H|`` on its singular values.  The
    decomposition only runs where the eigenvalue count changes across a small
    window around ``d``; elsewhere the multiplicity is zero.

    Returns a list of ``(value, multiplicity)`` in increasing order.
    ``roots`` is accepted for interface symmetry with the solver; the
    multiplicities do not depend on it.
    """
    if ctx is None:
        ctx = secular_context(params)
    elif poles is not ctx.poles and not np.array_equal(poles.values, ctx.poles.values):
        raise ValueError("pole set does not belong to this context")
    h = build_hankel(params)
    threshold = PIVOT_RTOL * params.scale * float(np.max(np.abs(h)))
    return [(w.value, mult) for w, _, mult in _classify(ctx, h, threshold)]


def _reconcile(roots, classified):
    """Keep at most ``near - nullity`` secular roots inside each pole window.

    Next to a pole that is itself an eigenvalue the secular function has a
    removable singularity and its sign is rounding noise, so spurious zeros
    show up at the window edges.  The window count is exact; surplus roots
    closest to the pole are dropped.
    """
    roots = np.asarray(roots, dtype=float)
    keep = np.ones(roots.size, dtype=bool)
    for w, near, mult in classified:
        inside = np.flatnonzero((roots >= w.lo) & (roots <= w.hi))
        budget = max(near - mult, 0)
        if inside.size > budget:
            order = inside[np.argsort(np.abs(roots[inside] - w.value))]
            keep[order[: inside.size - budget]] = False
    return roots[keep]


def _fill_windows(ctx, detail, roots, tol):
    """Redo pole windows whose count exceeds nullity plus roots found, or
    whose nullity includes eigenvalues not confirmed to sit on the pole.

    A pole group can span several distinct poles (spread below the grouping
    tolerance); zeros between them are never sign-scanned and need not be
    within the nullity threshold of the group value.  Such windows are
    solved by bisection on the count, down to a quarter of ``eps_pole``.
    Values within ``eps_pole`` of a pole are reported as that pole value.

    Returns ``(roots, pole_values, repaired)`` with ``pole_values`` a list
    of ``(value, multiplicity)``.
    """
    roots = np.asarray(roots, dtype=float)
    keep = np.ones(roots.size, dtype=bool)
    pole_values = []
    extra = []
    repaired = 0
    poles = ctx.poles.values
    close = 2.0 * ctx.eps_pole
    snug = [w for w, _, mult in detail if mult]
    if snug:
        at = np.array([w.value for w in snug])
        tight = dict(zip(map(id, snug), count_below(ctx, at + close) - count_below(ctx, at - close)))
    for w, near, mult in detail:
        inside = (roots >= w.lo) & (roots <= w.hi)
        # the nullity threshold admits eigenvalues up to 1e-10*scale*max|H| away;
        # snap to the pole only if the count confirms they sit right on it
        if mult + int(inside.sum()) >= near and (not mult or tight[id(w)] >= mult):
            if mult:
                pole_values.append((w.value, mult))
            continue
        repaired += 1
        keep &= ~inside
        base = count_below(ctx, [w.lo])[0] + np.arange(near)
        step = min(tol, 0.25 * ctx.eps_pole)
        found = _bisect_counts(ctx, np.full(near, w.lo), np.full(near, w.hi), base, step)
        for value in found:
            nearest = poles[np.argmin(np.abs(poles - value))]
            if abs(nearest - value) <= ctx.eps_pole:
                pole_values.append((float(nearest), 1))
            else:
                extra.append(value)
    roots = np.sort(np.concatenate([roots[keep], np.asarray(extra, dtype=float)]))
    return roots, pole_values, repaired


# ---------------------------------------------------------------- vectors


def eigenvector(params: HankelParams, mu: float, ctx: SecularContext | None = None) -> np.ndarray:
    """Closed-form unit eigenvector for a secular zero ``mu``.

    Uses the rational-kernel expression in ``mu`` (and its reduced form
    when ``a == 0``).  Component ``k`` evaluates the kernels at
    ``alpha_k = 2(1-k)pi/(n+2)``.

    Raises
    ------
    PoleValueInputError
        ``mu`` sits on a pole value, or ``a == b == 0``.
    DegenerateDenominatorError
        ``|b F(mu;0,0) + n + 2| <= 1e-8 (n+2)`` with ``a != 0``.
    """
    work, shift = _unit_instance(params)
    if shift:
        # eigenvectors are invariant under the exact rescaling
        return eigenvector(work, math.ldexp(float(mu), -shift))
    if ctx is None:
        ctx = secular_context(params)
    a, b = params.a, params.b
    size = params.size
    mu = float(mu)
    if a == 0.0 and b == 0.0:
        raise PoleValueInputError("a = b = 0: every eigenvalue is a pole value")
    if np.min(np.abs(ctx.poles.values - mu)) <= ctx.eps_pole:
        raise PoleValueInputError(f"mu={mu!r} coincides with a pole value")

    m = ctx.m
    j = np.arange(1, m + 1)
    k0 = np.arange(size)  # k - 1
    half = ctx.spectrum.theta[1 : m + 1] / 2.0
    ang = half[None, :] + reduced_phase(k0[:, None] * j[None, :], size)
    cos_k, sin_k = np.cos(ang), np.sin(ang)
    shifted = half + reduced_phase(-j, size)
    inv_minus = 1.0 / (mu - ctx.moduli)
    inv_plus = 1.0 / (mu + ctx.moduli)
    r0 = 1.0 / (mu - ctx.lambda0)
    # kernels at (alpha_k, phi) and (alpha_k, 0) for every k at once
    k_phi = r0 + 2.0 * (cos_k @ (np.cos(shifted) * inv_minus) + sin_k @ (np.sin(shifted) * inv_plus))
    k_zero = r0 + 2.0 * (cos_k @ (np.cos(half) * inv_minus) + sin_k @ (np.sin(half) * inv_plus))
    sign = np.where(k0 % 2 == 0, -1.0, 1.0)  # (-1)^k for 1-based k
    if ctx.lambda_half is not None:
        rh = 1.0 / (mu - ctx.lambda_half)
        k_phi = k_phi + rh
        k_zero = k_zero + rh
        y_part = k_phi - (1.0 - sign) * rh
        x_part = k_zero - (1.0 + sign) * rh
    else:
        y_part, x_part = k_phi, k_zero

    if a == 0.0:
        u = x_part
    else:
        xx = k_zero[0]  # F(mu;0,0) or G(mu;0,0)
        den = b * xx + size
        if abs(den) <= DEN_RTOL * size:
            raise DegenerateDenominatorError(
                f"b*F(mu;0,0) + n + 2 = {den:.3g} at mu={mu!r}"
            )
        xy = y_part[0]  # cross kernel, corrected for even n
        u = y_part - b * x_part * xy / den
    norm = np.linalg.norm(u)
    if not np.isfinite(norm) or norm == 0.0:
        raise DegenerateDenominatorError(f"closed-form eigenvector vanishes at mu={mu!r}")
    return u / norm


def inverse_iteration(matrix, mu: float, count: int = 1, scale: float = 1.0, iterations: int = INVERSE_ITERATIONS):
    """Orthonormal basis (columns) for the eigenspace of ``matrix`` near ``mu``.

    Block inverse iteration with a deterministic start and a shift jittered
    by ``1e-10 * scale`` so the shifted system stays solvable.
    """
    size = matrix.shape[0]
    shift = mu + JITTER_RTOL * scale
    block = np.random.default_rng(12345).standard_normal((size, count))
    shifted = matrix - shift * np.eye(size)
    for _ in range(iterations):
        try:
            block = np.linalg.solve(shifted, block)
        except np.linalg.LinAlgError:
            shifted = matrix - (shift + JITTER_RTOL * scale) * np.eye(size)
            block = np.linalg.solve(shifted, block)
        block, _ = np.linalg.qr(block)
    return block


def _residual(h, mu, v):
    return float(np.linalg.norm(h @ v - mu * v) / np.linalg.norm(v))


# ---------------------------------------------------------------- driver


def bracket_violation(values, brackets) -> float:
    """Largest distance of the k-th value outside the k-th bracket (0 if inside)."""
    values = np.asarray(values, dtype=float)
    brackets = np.asarray(brackets, dtype=float)
    below = brackets[:, 0] - values
    above = values - brackets[:, 1]
    return float(max(0.0, np.max(below), np.max(above)))


def _unit_instance(params: HankelParams):
    """Rescale by a power of two so the largest coefficient lies in [0.5, 1).

    Returns the rescaled instance and the exponent ``e`` with
    ``H(params) = 2**e * H(rescaled)``.  The scaling is exact in binary
    floating point, so it changes no digit of the data.
    """
    peak = max(abs(params.a), abs(params.b), abs(params.c))
    if peak == 0.0:
        return params, 0
    shift = math.frexp(peak)[1]
    if shift == 0:
        return params, 0
    work = HankelParams(
        params.n,
        math.ldexp(params.a, -shift),
        math.ldexp(params.b, -shift),
        math.ldexp(params.c, -shift),
    )
    return work, shift


def _rescaled(result: SpectralResult, params: HankelParams, shift: int) -> SpectralResult:
    """Map a result for the rescaled instance back onto ``params``."""
    diagnostics = dict(result.diagnostics)
    diagnostics["rescale_exponent"] = shift
    if shift == 0:
        return SpectralResult(params, result.pairs, diagnostics)
    for key in ("bracket_violation", "max_residual"):
        if diagnostics.get(key) is not None:
            diagnostics[key] = math.ldexp(diagnostics[key], shift)
    pairs = tuple(
        EigenPair(
            math.ldexp(p.value, shift),
            p.kind,
            p.vector,
            None if p.residual is None else math.ldexp(p.residual, shift),
            p.method,
        )
        for p in result.pairs
    )
    return SpectralResult(params, pairs, diagnostics)


def solve(params: HankelParams, tol: float = 1e-10, want_vectors: bool = False) -> SpectralResult:
    """All ``n + 2`` eigenvalues (and optionally eigenvectors) of ``H``.

    The work happens on a copy rescaled by a power of two (largest
    coefficient in [0.5, 1)), so results are exactly homogeneous under such
    scalings; ``tol`` stays an absolute bound on the original scale.

    Raises
    ------
    CompletenessError
        When roots plus pole multiplicities do not add up to ``n + 2`` even
        at the finest sampling level.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    work, shift = _unit_instance(params)
    try:
        result = _solve(work, min(tol, math.ldexp(tol, -shift)))
    except CompletenessError as exc:
        raise CompletenessError(
            str(exc), partial=_rescaled(exc.partial, params, shift)
        ) from None
    result = _rescaled(result, params, shift)
    return attach_vectors(result) if want_vectors else result


def _solve(params: HankelParams, tol: float) -> SpectralResult:
    ctx = secular_context(params)
    poles = ctx.poles
    brackets = weyl_brackets(params, poles)
    size = params.size

    h = build_hankel(params)
    threshold = PIVOT_RTOL * params.scale * float(np.max(np.abs(h)))
    detail = _classify(ctx, h, threshold)
    start = START_SAMPLES
    while True:
        iso = _isolate(ctx, brackets, tol, start)
        roots = _reconcile(iso.roots, detail)
        roots, classified, repaired = _fill_windows(ctx, detail, roots, tol)
        total = roots.size + sum(mult for _, mult in classified)
        if total == size or start >= MAX_SAMPLES:
            break
        start *= REFINE_FACTOR

    diagnostics = {
        "samples": iso.samples,
        "count_fallback_intervals": iso.fallback_intervals,
        "repaired_windows": repaired,
        "secular_zeros": int(roots.size),
        "pole_eigenvalues": int(sum(mult for _, mult in classified)),
        "complete": total == size,
    }
    entries = [(value, 0, EigenKind.POLE_VALUE) for value, mult in classified for _ in range(mult)]
    entries += [(float(r), 1, EigenKind.SECULAR_ZERO) for r in roots]
    entries.sort(key=lambda e: (e[0], e[1]))
    if total != size:
        partial = SpectralResult(
            params, tuple(EigenPair(v, k) for v, _, k in entries), diagnostics
        )
        raise CompletenessError(
            f"found {total} eigenvalues for a matrix of order {size}", partial=partial
        )
    diagnostics["bracket_violation"] = bracket_violation([e[0] for e in entries], brackets)

    diagnostics["max_residual"] = None
    return SpectralResult(params, tuple(EigenPair(v, k) for v, _, k in entries), diagnostics)


def attach_vectors(result: SpectralResult, ctx: SecularContext | None = None) -> SpectralResult:
    """Return ``result`` with an eigenvector and residual on every pair.

    A simple secular zero uses the closed form when its residual is within
    ``1e-8 * (1 + ||H||_max)``; pole values, repeated values and degenerate
    denominators go through inverse iteration.
    """
    params = result.params
    work, shift = _unit_instance(params)
    if ctx is None or ctx.params != work:
        ctx = secular_context(work)
    h = build_hankel(work)
    entries = [
        (math.ldexp(p.value, -shift), 0 if p.kind is EigenKind.POLE_VALUE else 1, p.kind)
        for p in result.pairs
    ]
    # the acceptance limit belongs to the original matrix; "1 +" does not rescale
    peak = float(np.max(np.abs(build_hankel(params))))
    limit = math.ldexp(RESIDUAL_RTOL * (1.0 + peak), -shift)
    pairs = _attach_vectors(work, ctx, h, entries, limit)
    diagnostics = dict(result.diagnostics)
    diagnostics["max_residual"] = max(p.residual for p in pairs)
    return _rescaled(SpectralResult(work, tuple(pairs), diagnostics), params, shift)


def _attach_vectors(params, ctx, h, entries, limit):
    size = params.size
    scale = params.scale
    values = np.array([e[0] for e in entries])
    kinds = [e[2] for e in entries]
    pairs = [None] * len(entries)

    # equal values (within the grouping tolerance) of the same kind share a block
    for lo, hi in group_sorted(values, GROUP_RTOL * scale):
        for kind in (EigenKind.POLE_VALUE, EigenKind.SECULAR_ZERO):
            idx = [i for i in range(lo, hi) if kinds[i] is kind]
            if not idx:
                continue
            mu = float(np.mean(values[idx]))
            vectors, method = None, None
            if kind is EigenKind.SECULAR_ZERO and len(idx) == 1:
                try:
                    vec = eigenvector(params, values[idx[0]], ctx)
                    if _residual(h, values[idx[0]], vec) <= limit:
                        vectors, method = vec[:, None], "closed_form"
                except (DegenerateDenominatorError, PoleValueInputError):
                    pass
            if vectors is None:
                vectors = inverse_iteration(h, mu, len(idx), scale)
                method = "inverse_iteration"
            for col, i in enumerate(idx):
                v = vectors[:, col]
                pairs[i] = EigenPair(
                    float(values[i]), kind, v, _residual(h, values[i], v), method
                )
    return pairs
