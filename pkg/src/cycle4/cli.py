"""Command-line surface.

Subcommands::

    cycle4 check A B                       region verdict as JSON
    cycle4 realize A B                     realization certificate as JSON
    cycle4 spectrum A B C D                spectrum of A(alpha..delta) as JSON
    cycle4 boundary {left|right} --steps N --out PATH     boundary CSV
    cycle4 audit SUITE --trials N --seed S [--workers W]  audit report JSON

Exit codes: 0 success, 1 usage or domain error, 2 outside region or real
axis, 3 solver failure, 4 audit failures (the report is still emitted).

JSON numbers carry 17 significant digits (round-trip exact for doubles);
CSV uses '.' decimals, ',' separators and '\\n' line endings regardless of
locale.  CYCLE4_SEED provides the default audit seed.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import audit
from .errors import (
    ConvergenceError,
    Cycle4Error,
    OutsideRegion,
    SolverError,
    VerificationError,
)
from .matrix import MatrixParams, al_params, eigenvalues
from .realize import realize
from .region import EPS_BAND, EPS_REAL, RegionKind, SpectralPoint, classify, eval_g

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_OUTSIDE = 2
EXIT_SOLVER = 3
EXIT_AUDIT = 4


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt(x) -> str:
    if isinstance(x, float):
        if not math.isfinite(x):
            # JSON has no infinities; saturate instead of emitting junk.
            x = math.copysign(1e300, x) if not math.isnan(x) else 0.0
        return format(x, ".17g")
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if x is None:
        return "null"
    if isinstance(x, str):
        return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"unsupported JSON scalar {type(x)}")


def _dumps(obj, indent=None, level=0) -> str:
    """Minimal JSON writer with fixed float formatting and key order."""
    if isinstance(obj, dict):
        items = [(k, obj[k]) for k in obj]
        if not items:
            return "{}"
        if indent:
            pad = " " * indent * (level + 1)
            close = " " * indent * level
            body = ",\n".join(f"{pad}{_fmt(k)}: {_dumps(v, indent, level + 1)}" for k, v in items)
            return "{\n" + body + "\n" + close + "}"
        return "{" + ", ".join(f"{_fmt(k)}: {_dumps(v, indent, level)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if indent:
            pad = " " * indent * (level + 1)
            close = " " * indent * level
            body = ",\n".join(f"{pad}{_dumps(v, indent, level + 1)}" for v in obj)
            return "[\n" + body + "\n" + close + "]"
        return "[" + ", ".join(_dumps(v, indent, level) for v in obj) + "]"
    return _fmt(obj)


def _emit(obj, args):
    print(_dumps(obj, indent=args.json_indent))


def _cmd_check(args) -> int:
    p = SpectralPoint(args.a, args.b)
    v = classify(p, eps_band=args.eps_band, eps_real=args.eps_real)
    _emit(
        {
            "kind": v.kind.value,
            "g": v.g_value,
            "right_slack": v.right_slack,
            "a": v.a,
            "b_plus": p.b_plus,
            "violated": [c.value for c in v.violated],
        },
        args,
    )
    return EXIT_OK if v.admissible else EXIT_OUTSIDE


def _cmd_realize(args) -> int:
    p = SpectralPoint(args.a, args.b)
    try:
        cert = realize(p, eps_band=args.eps_band, eps_real=args.eps_real)
    except OutsideRegion as exc:
        _emit(
            {
                "error": "OutsideRegion",
                "kind": exc.verdict.kind.value,
                "violated": [c.value for c in exc.verdict.violated],
            },
            args,
        )
        return EXIT_OUTSIDE
    except (ConvergenceError, VerificationError, SolverError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _emit(
        {
            "method": cert.method.value,
            "params": list(cert.params.as_tuple()),
            "gaps": list(cert.gaps.as_tuple()),
            "eig_residual": cert.eig_residual,
            "psi_residual": cert.psi_residual,
            "angles": list(cert.angles.as_tuple()) if cert.angles is not None else None,
        },
        args,
    )
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    params = MatrixParams(args.alpha, args.beta, args.gamma, args.delta)
    spec = eigenvalues(params)
    order = sorted(range(4), key=lambda i: (-spec.roots[i].real, -spec.roots[i].imag))
    _emit(
        {
            "roots": [[spec.roots[i].real, spec.roots[i].imag] for i in order],
            "residuals": [spec.residuals[i] for i in order],
        },
        args,
    )
    return EXIT_OK


def _boundary_rows(curve: str, steps: int):
    if curve == "right":
        for k in range(1, steps + 1):
            x = k / steps
            a, b = 1.0 - x, x
            yield x, a, b, eval_g(a, b)
        return
    top = 1.0 - 1e-3
    for k in range(steps):
        alpha = top * k / (steps - 1) if steps > 1 else 0.0
        pair = eigenvalues(al_params(alpha)).nonreal_pair()
        if pair is None:
            raise SolverError(f"left-boundary member alpha={alpha} lost its nonreal pair")
        w = pair[0]
        yield alpha, w.real, w.imag, eval_g(w.real, w.imag)


def _cmd_boundary(args) -> int:
    if args.steps < 2:
        print("boundary requires --steps >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        out = open(args.out, "w", encoding="ascii", newline="")
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    with out:
        out.write("param,a,b,g\n")
        for row in _boundary_rows(args.curve, args.steps):
            out.write(",".join(format(v, ".17g") for v in row) + "\n")
    return EXIT_OK


def _cmd_audit(args) -> int:
    names = audit.SUITE_NAMES if args.suite == "all" else (args.suite,)
    reports = [
        audit.run_suite(name, trials=args.trials, seed=args.seed, workers=args.workers, grid_n=args.grid_n)
        for name in names
    ]
    payload = reports[0].to_dict() if args.suite != "all" else [r.to_dict() for r in reports]
    _emit(payload, args)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_AUDIT


def _add_globals(p, top_level: bool):
    """Global flags accepted before or after the subcommand.

    The subparser copies default to SUPPRESS so they only override the
    top-level values when given explicitly after the subcommand.
    """
    sup = argparse.SUPPRESS
    p.add_argument("--eps-band", type=float, default=EPS_BAND if top_level else sup, help="boundary band half-width")
    p.add_argument("--eps-real", type=float, default=EPS_REAL if top_level else sup, help="real-axis gate on |b|")
    p.add_argument("--json-indent", type=int, default=None if top_level else sup, help="pretty-print JSON with this indent")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cycle4", description="Spectral region tools for the 4-cycle row-stochastic family.")
    _add_globals(parser, top_level=True)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="classify a point against the region")
    c.add_argument("a", type=float)
    c.add_argument("b", type=float)
    _add_globals(c, top_level=False)
    c.set_defaults(fn=_cmd_check)

    r = sub.add_parser("realize", help="construct parameters with a+ib in the spectrum")
    r.add_argument("a", type=float)
    r.add_argument("b", type=float)
    _add_globals(r, top_level=False)
    r.set_defaults(fn=_cmd_realize)

    s = sub.add_parser("spectrum", help="eigenvalues of A(alpha, beta, gamma, delta)")
    for name in ("alpha", "beta", "gamma", "delta"):
        s.add_argument(name, type=float)
    _add_globals(s, top_level=False)
    s.set_defaults(fn=_cmd_spectrum)

    b = sub.add_parser("boundary", help="emit a boundary curve as CSV")
    b.add_argument("curve", choices=("left", "right"))
    b.add_argument("--steps", type=int, required=True)
    b.add_argument("--out", required=True)
    _add_globals(b, top_level=False)
    b.set_defaults(fn=_cmd_boundary)

    a = sub.add_parser("audit", help="run a verification suite")
    a.add_argument("suite", choices=audit.SUITE_NAMES + ("all",))
    a.add_argument("--trials", type=int, default=10000)
    a.add_argument("--seed", type=int, default=int(os.environ.get("CYCLE4_SEED", "0")))
    a.add_argument("--workers", type=int, default=1)
    a.add_argument("--grid-n", type=int, default=40, help="karamata grid resolution per axis")
    _add_globals(a, top_level=False)
    a.set_defaults(fn=_cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except Cycle4Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
