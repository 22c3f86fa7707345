"""Command-line entry point ``polyacc``.

Structured output is JSON on stdout, with a run manifest under the
``manifest`` key.  Result exit codes: 0 success / criterion holds,
2 violation or failure found, 3 hypothesis failed.  Invalid input
(bad arguments, schema errors, parameter errors) exits with 1.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__, backend
from .accessibility import DiskGrid, check_fully_accessible, estimate_alpha_sup
from .comparison import lavrentiev_profile
from .errors import PolyaccError
from .examples import BUILDERS, make_example
from .jsonio import dumps
from .kernel import BoundaryData, ResidualGrid, residual_study, solve_dirichlet
from .polyharmonic import PolyanalyticSpec, wirtinger_jet, wirtinger_jet_pa
from .render import RenderSpec, emit_csv, emit_svg, render_image
from .reproduce import RunManifest, reproduce_paper
from .schema import load_spec
from .univalence import HYPOTHESIS_FAILED, VIOLATION, GridSpec, evaluator, scan_univalence

EXIT_OK, EXIT_INPUT, EXIT_FAIL, EXIT_HYPOTHESIS = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as "violation"
    def error(self, message):
        raise UsageError(message)


def parse_complex(text: str) -> complex:
    """``0.3``, ``0.3+0.1j`` or ``0.3,0.1``."""
    text = text.strip()
    try:
        if "," in text:
            re_, im = text.split(",")
            return complex(float(re_), float(im))
        return complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"cannot parse complex number '{text}'") from None


def _read_spec(path, polyanalytic=False):
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {p}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{p}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return load_spec(data, polyanalytic)


def _emit(payload, manifest: RunManifest, t0):
    manifest.wall_time_s = time.perf_counter() - t0
    payload = dict(payload)
    payload["manifest"] = manifest.to_json()
    sys.stdout.write(dumps(payload))


def cmd_example(args, t0):
    params = {}
    for key in ("p", "n", "lam", "mu", "a", "b", "c"):
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    spec = make_example(args.name, **params)
    outputs = []
    if args.emit:
        Path(args.emit).write_text(dumps(spec.to_json()), encoding="utf-8")
        outputs.append(args.emit)
    shown = {k: (v if not isinstance(v, complex) else [v.real, v.imag]) for k, v in params.items()}
    _emit({"spec": spec.to_json()}, RunManifest("example", args.name, shown, outputs), t0)
    return EXIT_OK


def cmd_univalence(args, t0):
    spec = _read_spec(args.spec, args.polyanalytic)
    grid = GridSpec(n_r=args.nr, n_theta=args.ntheta, n_t=args.nt)
    rep = scan_univalence(spec, grid, refine=args.refine, zero_threshold=args.threshold, workers=args.workers)
    params = {"nr": args.nr, "ntheta": args.ntheta, "nt": args.nt, "refine": args.refine, "threshold": args.threshold}
    payload = {"report": rep.to_json(), "backend": rep.backend}
    _emit(payload, RunManifest("univalence", args.spec, params), t0)
    if rep.verdict == HYPOTHESIS_FAILED:
        return EXIT_HYPOTHESIS
    return EXIT_FAIL if rep.verdict == VIOLATION else EXIT_OK


def cmd_accessibility(args, t0):
    spec = _read_spec(args.spec)
    grid = DiskGrid(n_r=args.nr, n_theta=args.ntheta)
    if args.estimate:
        rep = estimate_alpha_sup(spec, grid)
    else:
        rep = check_fully_accessible(spec, args.alpha, grid)
    params = {"alpha": args.alpha, "estimate": args.estimate, "nr": args.nr, "ntheta": args.ntheta}
    _emit({"report": rep.to_json()}, RunManifest("accessibility", args.spec, params), t0)
    if not rep.hypothesis_ok:
        return EXIT_HYPOTHESIS
    if args.estimate:
        return EXIT_OK
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_jacobian(args, t0):
    spec = _read_spec(args.spec, args.polyanalytic)
    z = parse_complex(args.at)
    jet = wirtinger_jet_pa(spec, z) if isinstance(spec, PolyanalyticSpec) else wirtinger_jet(spec, z)
    payload = {"z": z, "value": jet.value, "dz": jet.dz, "dzbar": jet.dzbar, "jacobian": float(jet.jacobian)}
    _emit(payload, RunManifest("jacobian", args.spec, {"at": args.at}), t0)
    return EXIT_OK


def _boundary(text):
    try:
        return BoundaryData.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_kernel(args, t0):
    f = _boundary(args.boundary)
    z = parse_complex(args.at)
    val = complex(solve_dirichlet(f, args.alpha, z, nodes=args.nodes))
    payload = {"alpha": args.alpha, "boundary": f.to_json(), "z": z, "value": val}
    params = {"alpha": args.alpha, "boundary": args.boundary, "at": args.at, "nodes": args.nodes}
    _emit(payload, RunManifest("kernel", args.boundary, params), t0)
    return EXIT_OK


def cmd_kernel_residual(args, t0):
    f = _boundary(args.boundary)
    ResidualGrid(args.h, args.radius)  # validates h and radius early
    res, ratios = residual_study(f, args.alpha, (args.h, args.h / 2), args.radius, args.nodes)
    payload = {
        "alpha": args.alpha,
        "boundary": f.to_json(),
        "h": [args.h, args.h / 2],
        "residual": res,
        "halving_ratio": ratios[0],
    }
    params = {"alpha": args.alpha, "boundary": args.boundary, "h": args.h, "radius": args.radius}
    _emit(payload, RunManifest("kernel-residual", args.boundary, params), t0)
    return EXIT_OK


def cmd_render(args, t0):
    spec = _read_spec(args.spec, args.polyanalytic)
    rs = RenderSpec(args.circles, args.rays, args.samples, args.rmax)
    rendering = render_image(evaluator(spec), rs)
    outputs = [str(emit_svg(rendering, args.out, rs))]
    if args.csv:
        outputs.append(str(emit_csv(rendering, args.csv)))
    xmin, xmax, ymin, ymax = rendering.bbox
    payload = {
        "bbox": {"xmin": xmin, "xmax": xmax, "ymin": ymin, "ymax": ymax},
        "polylines": len(rendering.polylines),
        "max_modulus": rendering.max_modulus,
    }
    params = {"rmax": args.rmax, "circles": args.circles, "rays": args.rays, "samples": args.samples}
    _emit(payload, RunManifest("render", args.spec, params, outputs), t0)
    return EXIT_OK


def cmd_lavrentiev(args, t0):
    spec = _read_spec(args.spec)
    zs = [parse_complex(s) for s in args.at]
    vals = lavrentiev_profile(spec, zs)
    payload = {"points": [{"z": z, "lhs": v} for z, v in zip(zs, vals)]}
    _emit(payload, RunManifest("lavrentiev", args.spec, {"at": args.at}), t0)
    return EXIT_OK


def cmd_reproduce(args, t0):
    manifests, ok = reproduce_paper(args.out, workers=args.workers)
    summary = json.loads((Path(args.out) / "reports" / "summary.json").read_text(encoding="utf-8"))
    payload = {"summary": summary, "all_passed": ok, "runs": [m.to_json() for m in manifests]}
    _emit(payload, RunManifest("reproduce-paper", args.out, {"workers": args.workers}, [args.out]), t0)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    p = _Parser(prog="polyacc", description="Univalence and accessibility checks for p-harmonic maps.")
    p.add_argument("--version", action="version", version=f"polyacc {__version__} ({backend.BACKEND} backend)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("example", help="build a named example and print its JSON spec")
    s.add_argument("--name", required=True, choices=sorted(BUILDERS))
    s.add_argument("--p", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--lambda", dest="lam", type=parse_complex)
    s.add_argument("--mu", type=parse_complex)
    s.add_argument("--a", type=parse_complex)
    s.add_argument("--b", type=parse_complex)
    s.add_argument("--c", type=parse_complex)
    s.add_argument("--emit", help="write the spec JSON to this file")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("univalence", help="scan the univalence criterion (exit 0/2/3)")
    s.add_argument("--spec", required=True)
    s.add_argument("--polyanalytic", action="store_true")
    s.add_argument("--nr", type=int, default=100)
    s.add_argument("--ntheta", type=int, default=128)
    s.add_argument("--nt", type=int, default=32)
    s.add_argument("--refine", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--threshold", type=float, default=1e-9)
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_univalence)

    s = sub.add_parser("accessibility", help="check or estimate full alpha-accessibility (exit 0/2/3)")
    s.add_argument("--spec", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", type=float)
    g.add_argument("--estimate", action="store_true")
    s.add_argument("--nr", type=int, default=100)
    s.add_argument("--ntheta", type=int, default=128)
    s.set_defaults(func=cmd_accessibility)

    s = sub.add_parser("jacobian", help="Wirtinger derivatives and Jacobian at a point")
    s.add_argument("--spec", required=True)
    s.add_argument("--polyanalytic", action="store_true")
    s.add_argument("--at", required=True, help="point as 're,im' or '0.3+0.1j'")
    s.set_defaults(func=cmd_jacobian)

    s = sub.add_parser("kernel", help="solve the Dirichlet problem at a point")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--boundary", required=True, help="const:C, cos:K, sin:K or fourier:K=V,...")
    s.add_argument("--at", required=True)
    s.add_argument("--nodes", type=int, default=256)
    s.set_defaults(func=cmd_kernel)

    s = sub.add_parser("kernel-residual", help="finite-difference residual of the quadrature solution")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--boundary", required=True)
    s.add_argument("--h", type=float, default=0.0078125)
    s.add_argument("--radius", type=float, default=0.8)
    s.add_argument("--nodes", type=int, default=256)
    s.set_defaults(func=cmd_kernel_residual)

    s = sub.add_parser("render", help="draw the image of circles and rays as SVG (and CSV)")
    s.add_argument("--spec", required=True)
    s.add_argument("--polyanalytic", action="store_true")
    s.add_argument("--rmax", type=float, default=0.99)
    s.add_argument("--circles", type=int, default=24)
    s.add_argument("--rays", type=int, default=24)
    s.add_argument("--samples", type=int, default=512)
    s.add_argument("--out", required=True)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("lavrentiev", help="Lavrentiev comparison ratio for a biharmonic spec")
    s.add_argument("--spec", required=True)
    s.add_argument("--at", required=True, nargs="+")
    s.set_defaults(func=cmd_lavrentiev)

    s = sub.add_parser("reproduce-paper", help="run every scenario and write reports and figures")
    s.add_argument("--out", required=True)
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, t0)
    except UsageError as exc:
        print(f"polyacc: error: {exc}", file=sys.stderr)
    except (PolyaccError, ValueError, OSError) as exc:
        print(f"polyacc: error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
