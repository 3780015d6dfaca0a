"""Command-line front end.

Usage::

    antihankel solve --n 5 --a 0 --b 0 --c 1
    antihankel compare --batch instances.txt --format csv
    antihankel verify --n 6 --a 1.7 --b -0.4 --c 0.9
    antihankel bench --sizes 64,256,512 --format csv

Exit status: 0 success, 1 compare mismatch, 2 usage or input error,
3 diagnostic error raised by the solver stack.  Errors are reported as
``{"error": {"type": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import AntiHankelError
from .matrices import build_hankel, verify_decompositions
from .oracle import compare_spectra, jacobi_eigen
from .secular import secular_context
from .solver import attach_vectors, bracket_violation, solve
from .spectrum import GROUP_RTOL, HankelParams, weyl_brackets

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_DIAGNOSTIC = 3

MODES = ("solve", "oracle", "compare", "verify", "bench")
THREADS_ENV = "ANTIHANKEL_THREADS"
DEFAULT_BENCH_SIZES = (16, 64, 256, 512)
DEFAULT_BENCH_COEFFS = (1.2, -0.7, 0.3)
RESIDUAL_RTOL = 1e-8


class InputError(Exception):
    """Bad batch file, bad environment value or unwritable output."""

    code = "INPUT_ERROR"

    def to_dict(self):
        return {"type": self.code, "message": str(self)}


@dataclass(frozen=True)
class RunConfig:
    mode: str
    params: HankelParams | None = None
    batch: str | None = None
    tol: float = 1e-10
    want_vectors: bool = False
    fmt: str = "json"
    out: str | None = None
    tol_compare: float = 1e-7
    sizes: tuple = DEFAULT_BENCH_SIZES
    coeffs: tuple = DEFAULT_BENCH_COEFFS


# ------------------------------------------------------------ formatting


def fmt_float(x) -> str:
    """17 significant digits; non-finite values become ``null``."""
    x = float(x)
    return format(x, ".17g") if math.isfinite(x) else "null"


def dumps(obj) -> str:
    """Deterministic JSON with every float written at 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, enum.Enum):
        return dumps(obj.value)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return fmt_float(value)
    return str(value)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _instance_fields(params: HankelParams) -> dict:
    return {"n": params.n, "a": params.a, "b": params.b, "c": params.c}


# ------------------------------------------------------------ per-mode work


@dataclass
class Outcome:
    record: dict
    header: tuple
    rows: list
    status: int = EXIT_OK


EIGEN_HEADER = ("index", "value", "kind", "residual")


def _eigen_rows(entries, want_vectors):
    rows = []
    for i, e in enumerate(entries, start=1):
        row = [i, e["value"], e["kind"], e["residual"]]
        if want_vectors:
            row.extend(e["vector"])
        rows.append(row)
    return rows


def _eigen_header(size, want_vectors):
    if not want_vectors:
        return EIGEN_HEADER
    return EIGEN_HEADER + tuple(f"v{i}" for i in range(1, size + 1))


def run_solve(params: HankelParams, cfg: RunConfig) -> Outcome:
    result = solve(params, tol=cfg.tol, want_vectors=cfg.want_vectors)
    entries = []
    for pair in result.pairs:
        entry = {"value": pair.value, "kind": pair.kind, "residual": pair.residual}
        if cfg.want_vectors:
            entry["method"] = pair.method
            entry["vector"] = pair.vector
        entries.append(entry)
    record = {**_instance_fields(params), "eigenvalues": entries, "diagnostics": result.diagnostics}
    return Outcome(
        record, _eigen_header(params.size, cfg.want_vectors), _eigen_rows(entries, cfg.want_vectors)
    )


def _oracle_entries(params, want_vectors):
    h = build_hankel(params)
    dec = jacobi_eigen(h)
    residuals = np.linalg.norm(h @ dec.vectors - dec.vectors * dec.values, axis=0)
    entries = []
    for i, value in enumerate(dec.values):
        entry = {"value": value, "kind": "ORACLE", "residual": residuals[i]}
        if want_vectors:
            entry["vector"] = dec.vectors[:, i]
        entries.append(entry)
    orth = float(np.max(np.abs(dec.vectors.T @ dec.vectors - np.eye(params.size))))
    return dec, entries, {"sweeps": dec.sweeps, "orthogonality": orth}


def run_oracle(params: HankelParams, cfg: RunConfig) -> Outcome:
    _, entries, diagnostics = _oracle_entries(params, cfg.want_vectors)
    record = {**_instance_fields(params), "eigenvalues": entries, "diagnostics": diagnostics}
    return Outcome(
        record, _eigen_header(params.size, cfg.want_vectors), _eigen_rows(entries, cfg.want_vectors)
    )


def run_compare(params: HankelParams, cfg: RunConfig) -> Outcome:
    result = solve(params, tol=cfg.tol)
    dec, _, oracle_diag = _oracle_entries(params, False)
    report = compare_spectra(result.values, dec.values)
    match = report.max_abs_diff <= cfg.tol_compare
    record = {
        **_instance_fields(params),
        "solver": [{"value": p.value, "kind": p.kind} for p in result.pairs],
        "oracle": list(dec.values),
        "comparison": {**report.as_dict(), "tol_compare": cfg.tol_compare, "match": match},
        "diagnostics": {"solver": result.diagnostics, "oracle": oracle_diag},
    }
    rows = [
        [i, p.value, p.kind, o, abs(p.value - o)]
        for i, (p, o) in enumerate(zip(result.pairs, dec.values), start=1)
    ]
    header = ("index", "solver", "kind", "oracle", "abs_diff")
    return Outcome(record, header, rows, EXIT_OK if match else EXIT_MISMATCH)


def run_verify(params: HankelParams, cfg: RunConfig) -> Outcome:
    report = verify_decompositions(params)
    result = solve(params, tol=cfg.tol, want_vectors=True)
    oracle_values = jacobi_eigen(build_hankel(params)).values
    brackets = weyl_brackets(params, secular_context(params).poles)
    widening = GROUP_RTOL * params.scale
    solver_gap = bracket_violation(result.values, brackets)
    oracle_gap = bracket_violation(oracle_values, brackets)
    h_max = float(np.max(np.abs(build_hankel(params))))
    limit = RESIDUAL_RTOL * (1.0 + h_max)
    audit = {
        "solver_violation": solver_gap,
        "oracle_violation": oracle_gap,
        "widening": widening,
        "contained": solver_gap <= widening and oracle_gap <= widening,
    }
    residuals = {
        "max": result.diagnostics["max_residual"],
        "limit": limit,
        "within_limit": result.diagnostics["max_residual"] <= limit,
        "methods": sorted({p.method for p in result.pairs}),
    }
    record = {
        **_instance_fields(params),
        "decomposition": report.as_dict(),
        "residuals": residuals,
        "brackets": audit,
    }
    rows = [[f"decomposition.{k}", v] for k, v in report.as_dict().items()]
    rows += [[f"residuals.{k}", v] for k, v in residuals.items() if k != "methods"]
    rows += [[f"brackets.{k}", v] for k, v in audit.items()]
    return Outcome(record, ("metric", "value"), rows)


RUNNERS = {"solve": run_solve, "oracle": run_oracle, "compare": run_compare, "verify": run_verify}


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    value = fn(*args, **kwargs)
    return value, time.perf_counter() - start


def run_bench(cfg: RunConfig) -> Outcome:
    """Wall time per phase for each size; the eigenvalue-only solve is ``roots``."""
    a, b, c = cfg.coeffs
    # warm-up keeps one-off JIT and import costs out of the table
    jacobi_eigen(build_hankel(HankelParams(2, a, b, c)))
    solve(HankelParams(2, a, b, c), want_vectors=True)

    table = []
    for size in cfg.sizes:
        params = HankelParams(size - 2, a, b, c)
        ctx, t_spectrum = _timed(secular_context, params)
        result, t_roots = _timed(solve, params, tol=cfg.tol)
        _, t_vectors = _timed(attach_vectors, result, ctx)
        _, t_oracle = _timed(jacobi_eigen, build_hankel(params))
        table.append(
            {
                "size": size,
                "spectrum": t_spectrum,
                "roots": t_roots,
                "vectors": t_vectors,
                "oracle": t_oracle,
                "secular_faster": t_roots < t_oracle,
            }
        )
    record = {"a": a, "b": b, "c": c, "tol": cfg.tol, "rows": table}
    header = ("size", "spectrum", "roots", "vectors", "oracle", "secular_faster")
    rows = [[r[k] for k in header] for r in table]
    return Outcome(record, header, rows)


# ------------------------------------------------------------ batch and dispatch


def read_batch(path: str) -> list:
    """Parse ``n a b c`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read batch file {path}: {exc.strerror or exc}") from exc
    instances = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise InputError(f"{path}:{lineno}: expected 'n a b c', got {len(fields)} fields")
        try:
            instances.append(HankelParams(int(fields[0]), *map(float, fields[1:])))
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from exc
    if not instances:
        raise InputError(f"batch file {path} holds no instances")
    return instances


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip() or "0"
    try:
        count = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be a non-negative integer, got {raw!r}") from None
    if count < 0:
        raise InputError(f"{THREADS_ENV} must be a non-negative integer, got {count}")
    return count or (os.cpu_count() or 1)


def _run_one(runner, params, cfg):
    try:
        return runner(params, cfg)
    except AntiHankelError as exc:
        return Outcome({**_instance_fields(params), "error": exc.to_dict()}, (), [], EXIT_DIAGNOSTIC)


def _worst_status(statuses):
    # a diagnostic error outranks a compare mismatch
    statuses = list(statuses)
    for code in (EXIT_DIAGNOSTIC, EXIT_MISMATCH):
        if code in statuses:
            return code
    return EXIT_OK


def render(cfg: RunConfig, outcomes, batch: bool) -> tuple[str, str]:
    """Return (main output, stderr text) for the collected outcomes."""
    if cfg.fmt == "json":
        body = [o.record for o in outcomes] if batch else outcomes[0].record
        return dumps(body) + "\n", ""
    errors = []
    rows = []
    header = next((o.header for o in outcomes if o.header), EIGEN_HEADER)
    for instance, o in enumerate(outcomes, start=1):
        if "error" in o.record:
            err = dict(o.record)
            if batch:
                err = {"instance": instance, **err}
            errors.append(dumps(err))
            continue
        rows.extend([instance, *row] if batch else row for row in o.rows)
    if batch:
        header = ("instance", *header)
    stderr = "".join(e + "\n" for e in errors)
    if not rows and errors:
        return "", stderr
    return _csv_text(header, rows), stderr


def run(cfg: RunConfig) -> tuple[int, str, str]:
    """Execute ``cfg``; returns (exit status, output text, stderr text)."""
    if cfg.mode == "bench":
        outcome = run_bench(cfg)
        text, err = render(cfg, [outcome], batch=False)
        return outcome.status, text, err

    runner = RUNNERS[cfg.mode]
    if cfg.batch is not None:
        instances = read_batch(cfg.batch)
        workers = min(thread_count(), len(instances))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(lambda p: _run_one(runner, p, cfg), instances))
        else:
            outcomes = [_run_one(runner, p, cfg) for p in instances]
        batch = True
    else:
        thread_count()  # validate the environment even for a single instance
        outcomes = [_run_one(runner, cfg.params, cfg)]
        batch = False

    status = _worst_status(o.status for o in outcomes)
    text, err = render(cfg, outcomes, batch)
    if not batch and status == EXIT_DIAGNOSTIC and cfg.fmt == "csv":
        # a single failed instance still yields the error object on the main stream
        text, err = err, ""
    return status, text, err


# ------------------------------------------------------------ argument parsing


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text}")
    return value


def _size_list(text):
    try:
        sizes = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not sizes or min(sizes) < 3:
        raise argparse.ArgumentTypeError("sizes must be integers >= 3")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antihankel",
        description="Spectra of anti-tridiagonal Hankel matrices of order n+2.",
    )
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--n", type=int, help="matrix order minus two (n >= 1)")
    parser.add_argument("--a", type=float, help="stripe above the main anti-diagonal")
    parser.add_argument("--b", type=float, help="stripe below the main anti-diagonal")
    parser.add_argument("--c", type=float, help="main anti-diagonal")
    parser.add_argument("--tol", type=_positive_float, default=1e-10, help="root tolerance")
    parser.add_argument("--vectors", action="store_true", help="also compute eigenvectors")
    parser.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    parser.add_argument("--batch", metavar="PATH", help="file of 'n a b c' lines")
    parser.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    parser.add_argument(
        "--tol-compare", type=_positive_float, default=1e-7,
        help="compare mode: max abs difference accepted (default 1e-7)",
    )
    parser.add_argument(
        "--sizes", type=_size_list, default=None,
        help="bench mode: comma-separated matrix orders (default 16,64,256,512)",
    )
    return parser


def config_from_args(args, parser) -> RunConfig:
    coeffs = (args.a, args.b, args.c)
    given = [v is not None for v in (args.n, *coeffs)]
    if args.mode == "bench":
        if args.batch is not None:
            parser.error("bench does not take --batch")
        if args.sizes is not None:
            sizes = args.sizes
        elif args.n is not None:
            sizes = (args.n + 2,)
        else:
            sizes = DEFAULT_BENCH_SIZES
        if min(sizes) < 3:
            parser.error("bench sizes must be >= 3")
        coeffs = tuple(d if v is None else v for v, d in zip(coeffs, DEFAULT_BENCH_COEFFS))
        return RunConfig(
            mode="bench", tol=args.tol, fmt=args.fmt, out=args.out, sizes=sizes, coeffs=coeffs
        )

    params = None
    if args.batch is not None:
        if any(given):
            parser.error("--batch cannot be combined with --n/--a/--b/--c")
    else:
        if not all(given):
            parser.error(f"{args.mode} needs --n, --a, --b and --c (or --batch)")
        try:
            params = HankelParams(args.n, *coeffs)
        except ValueError as exc:
            parser.error(str(exc))
    return RunConfig(
        mode=args.mode,
        params=params,
        batch=args.batch,
        tol=args.tol,
        want_vectors=args.vectors,
        fmt=args.fmt,
        out=args.out,
        tol_compare=args.tol_compare,
    )


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror or exc}") from exc


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config_from_args(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        status, text, err = run(cfg)
        _emit(text, cfg.out)
    except InputError as exc:
        sys.stdout.write(dumps({"error": exc.to_dict()}) + "\n")
        return EXIT_USAGE
    if err:
        sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
