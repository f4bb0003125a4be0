"""Command-line front end: ``qhbundle <subcommand> [options]``.

Exit status is 0 on success, 2 on usage or domain errors and 3 on
numerical failure (including a failed ``--check`` invariant).  Relative
``--output`` paths are placed under ``$QHBUNDLE_OUTPUT_DIR`` when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import atlas, checks, flow, fubini_study as fs, line_bundle as lb, oscillator, picard
from . import paths
from . import qh_bundle as qh
from .errors import NumericalFailure, QHBundleError
from .jsonfmt import complex_matrix, document

OUTPUT_DIR_ENV = "QHBUNDLE_OUTPUT_DIR"
EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 2, 3

SUBCOMMANDS = ("atlas", "metric", "chern", "spectrum", "states",
               "transport", "holonomy", "duality", "flow")


@dataclass(frozen=True)
class CommandConfig:
    subcommand: str
    n: int
    l: int
    tolerance: float
    fmt: str
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if abs(self.l) > 64:
            raise ValueError("|l| must be <= 64")
        if not 1e-14 <= self.tolerance <= 1e-2:
            raise ValueError("tolerance must lie in [1e-14, 1e-2]")


def _dim(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("n must be >= 1")
    return v


def _picard(text):
    v = int(text)
    if abs(v) > 64:
        raise argparse.ArgumentTypeError("|l| must be <= 64")
    return v


def _tol(text):
    v = float(text)
    if not 1e-14 <= v <= 1e-2:
        raise argparse.ArgumentTypeError("tolerance must lie in [1e-14, 1e-2]")
    return v


def _cplx(text):
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhbundle",
        description="Quantum Hilbert-space bundles over CP^n.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    def add(name, help, *, l_default=1, tol_default=1e-10):
        p = sub.add_parser(name, help=help)
        p.add_argument("--n", type=_dim, default=1, help="complex dimension of CP^n")
        p.add_argument("--l", type=_picard, default=l_default, help="Picard class")
        p.add_argument("--tol", type=_tol, default=tol_default, help="numerical tolerance")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--seed", type=int, default=0, help="seed for random points")
        p.add_argument("--check", action="store_true", help="run this module's invariant suite")
        p.add_argument("--output", help="write to this file instead of stdout")
        return p

    p = add("atlas", "chart transitions and Jacobians")
    p.add_argument("--z", type=_cplx, nargs="+", help="affine coordinates in --chart")
    p.add_argument("--chart", type=int, default=1)
    p.add_argument("--to", type=int, default=None, help="target chart (default: next chart)")

    p = add("metric", "Fubini-Study geometry at a point")
    p.add_argument("--z", type=_cplx, nargs="+")

    add("chern", "Chern number of tau^l by quadrature")

    p = add("spectrum", "projective oscillator spectrum")
    p.add_argument("--cutoff", type=int, default=None,
                   help="also emit the unrestricted C^n comparison table up to this many quanta")

    p = add("states", "Picard-class state labels")
    p.add_argument("--no-labels", action="store_true")

    for name, help in (("transport", "parallel transport of a fiber state"),
                       ("holonomy", "holonomy of a loop")):
        p = add(name, help)
        p.add_argument("--loop", choices=("square", "equator", "file"), default="square")
        p.add_argument("--side", type=float, default=0.5)
        p.add_argument("--center", type=_cplx, nargs="+", default=None)
        p.add_argument("--points", type=int, default=1000, help="vertices of the equator polygon")
        p.add_argument("--path", help="path file (JSON) for --loop file")
        if name == "transport":
            p.add_argument("--state", type=_cplx, nargs="+", default=None,
                           help="fiber amplitudes (default: first basis vector)")

    p = add("duality", "observer-to-observer maps along two half-equators")
    p.add_argument("--loop", choices=("two-paths",), default="two-paths")
    p.add_argument("--points", type=int, default=1000)

    p = add("flow", "classical Hamiltonian flow")
    p.add_argument("--kind", choices=("projective", "linear"), default="projective")
    p.add_argument("--z", type=_cplx, nargs="+")
    p.add_argument("--t-end", type=float, default=math.pi)
    p.add_argument("--fixed-steps", type=int, default=None)
    return parser


def _point(args, rng) -> np.ndarray:
    if args.z:
        z = np.array(args.z, dtype=complex)
        if z.size != args.n:
            raise argparse.ArgumentTypeError(f"--z needs {args.n} values")
        return z
    return 0.5 * (rng.normal(size=args.n) + 1j * rng.normal(size=args.n))


def _loop(args) -> paths.PhaseSpacePath:
    if args.loop == "file":
        if not args.path:
            raise argparse.ArgumentTypeError("--loop file requires --path")
        return paths.load_path(args.path)
    if args.loop == "equator":
        return paths.equator_loop(args.points, n=args.n)
    return paths.square_loop(args.side, center=args.center, n=args.n)


def _cmd_atlas(args, rng):
    a = atlas.AffineCoords(args.chart, _point(args, rng))
    to = args.to if args.to is not None else a.chart % (a.n + 1) + 1
    b = atlas.transition(a, to)
    return {
        "n": a.n,
        "homogeneous": list(atlas.to_projective(a).homogeneous),
        "chart": a.chart,
        "z": list(a.z),
        "to": to,
        "z_to": list(b.z),
        "jacobian": complex_matrix(atlas.jacobian(a, to)),
    }


def _cmd_metric(args, rng):
    a = atlas.AffineCoords(1, _point(args, rng))
    out = {
        "n": a.n,
        "z": list(a.z),
        "kahler_potential": fs.kahler_potential(a),
        "quadratic_approximation": fs.quadratic_approximation(a),
        "metric": complex_matrix(fs.metric(a)),
        "inverse_metric": complex_matrix(fs.inverse_metric(a)),
        "symplectic_form": complex_matrix(fs.symplectic_form(a)),
        "curvature_max_abs": float(np.max(np.abs(fs.curvature(a)))),
    }
    if a.n == 1:
        out["gaussian_curvature"] = fs.gaussian_curvature(a)
    return out


def _cmd_chern(args, rng):
    return {"n": args.n, "l": args.l, "chern_number": lb.chern_number(args.l, n=args.n,
                                                                      epsabs=args.tol, epsrel=args.tol)}


def _cmd_spectrum(args, rng):
    tab = oscillator.spectrum(args.n)
    out = {"n": args.n, "rows": tab.to_records(),
           "levels": [{"E_proj": e, "degeneracy": g} for e, g in tab.levels()],
           "_csv": tab.to_csv()}
    if args.cutoff is not None:
        out["unrestricted_comparison"] = {
            "label": "oscillator on C^n, not truncated to CP^n",
            "cutoff": args.cutoff,
            "rows": oscillator.unrestricted_spectrum(args.n, args.cutoff).to_records(),
        }
        del out["_csv"]
    return out


def _cmd_states(args, rng):
    return picard.report(args.n, args.l, labels=not args.no_labels)


def _cmd_transport(args, rng):
    loop = _loop(args)
    d = qh.fiber_dimension(loop.n, args.l)
    amp = np.zeros(d, dtype=complex)
    if args.state:
        if len(args.state) != d:
            raise argparse.ArgumentTypeError(f"--state needs {d} amplitudes")
        amp[:] = args.state
    else:
        amp[0] = 1.0
    s = qh.QHFiberState(loop.segments[0].chart, args.l, amp)
    t = qh.parallel_transport(s, loop, tol=args.tol)
    return {
        "dimension": d,
        "labels": qh.fiber_labels(loop.n, args.l),
        "initial": list(s.amplitudes),
        "final": list(t.amplitudes),
        "final_chart": t.chart,
        "norm_initial": qh.fiber_inner_product(s, s, loop.start).real,
        "norm_final": qh.fiber_inner_product(t, t, loop.end).real,
    }


def _cmd_holonomy(args, rng):
    loop = _loop(args)
    h = qh.holonomy(loop, args.l, tol=args.tol)
    return {
        "dimension": h.dimension,
        "matrix": complex_matrix(h.matrix),
        "loop_area_estimate": paths.loop_area(loop),
        "deviation": h.deviation(),
        "unitarity_residual": h.unitarity_residual(),
    }


def _cmd_duality(args, rng):
    up, lo = paths.half_equators(args.points, n=args.n)
    Zp = np.zeros(args.n + 1, dtype=complex); Zp[:2] = (1, 1)
    Zq = np.zeros(args.n + 1, dtype=complex); Zq[:2] = (1, -1)
    p, q = atlas.ProjectivePoint(Zp), atlas.ProjectivePoint(Zq)
    D1 = qh.duality_map(p, q, up, args.l, tol=args.tol)
    D2 = qh.duality_map(p, q, lo, args.l, tol=args.tol)
    return {
        "dimension": D1.shape[0],
        "map_upper": complex_matrix(D1),
        "map_lower": complex_matrix(D2),
        "relative_holonomy": complex_matrix(np.linalg.solve(D2, D1)),
        "max_entry_difference": float(np.max(np.abs(D1 - D2))),
    }


def _cmd_flow(args, rng):
    a = atlas.AffineCoords(1, _point(args, rng))
    tr = flow.integrate(a, args.kind, args.t_end, args.tol, fixed_steps=args.fixed_steps)
    return tr


COMMANDS = {
    "atlas": _cmd_atlas, "metric": _cmd_metric, "chern": _cmd_chern,
    "spectrum": _cmd_spectrum, "states": _cmd_states, "transport": _cmd_transport,
    "holonomy": _cmd_holonomy, "duality": _cmd_duality, "flow": _cmd_flow,
}


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (list, dict)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def _scalar_text(v):
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    if isinstance(v, list):
        return " ".join(_scalar_text(x) for x in v)
    return str(v)


def _render(payload, fmt: str) -> str:
    if isinstance(payload, flow.Trajectory):
        if fmt == "csv":
            return payload.to_csv()
        payload = payload.summary()
    csv_text = payload.pop("_csv", None)
    if fmt == "json":
        return document(payload)
    if fmt == "csv":
        if csv_text is not None:
            return csv_text
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(payload):
            w.writerow([k, _scalar_text(v)])
        return buf.getvalue()
    return "".join(f"{k}: {_scalar_text(v)}\n" for k, v in _flatten(payload))


def _render_checks(name, results, fmt):
    ok = all(c.passed for c in results)
    if fmt == "json":
        return document({"suite": name, "passed": ok, "checks": [c.as_dict() for c in results]})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "residual", "threshold", "passed"])
        for c in results:
            w.writerow([c.name, f"{c.residual:.17g}", f"{c.threshold:.17g}", c.passed])
        return buf.getvalue()
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: residual={c.residual:.3e} "
             f"threshold={c.threshold:.3e}" for c in results]
    return "\n".join(lines) + f"\n{name}: {'all passed' if ok else 'FAILED'}\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = output
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        path = os.path.join(base, path)
    with open(path, "w") as fh:
        fh.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        CommandConfig(args.subcommand, args.n, args.l, args.tol, args.format, args.seed)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"qhbundle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rng = np.random.default_rng(args.seed)
    try:
        if args.check:
            results = checks.run_suite(args.subcommand, args.seed)
            _emit(_render_checks(args.subcommand, results, args.format), args.output)
            failed = [c.name for c in results if not c.passed]
            if failed:
                print("failing invariants: " + "; ".join(failed), file=sys.stderr)
                return EXIT_NUMERICAL
            return EXIT_OK
        payload = COMMANDS[args.subcommand](args, rng)
        _emit(_render(payload, args.format), args.output)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"qhbundle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"qhbundle: numerical failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except QHBundleError as exc:
        parser.print_usage(sys.stderr)
        print(f"qhbundle: error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
