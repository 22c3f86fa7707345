"""Batch driver: every checked scenario, its JSON report, and the figures.

Each scenario returns a dict with ``name``, ``passed`` and ``details``.
Reports hold only computed numbers (no timings or host data) so that
reruns are byte-identical for any worker count; run manifests with wall
times are written next to them.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .accessibility import (
    biharmonic_L2,
    boundary_cone_oracle,
    check_fully_accessible,
    circle_margin_verdict,
    estimate_alpha_sup,
    harmonic_margin,
    margin_fields,
)
from .comparison import halfplane_threshold_form, lavrentiev_profile
from .errors import DegenerateCurveError
from .examples import (
    cubic_radial,
    fold,
    halfplane_family,
    moebius_family,
    one_minus_modulus_squared,
    shear_family,
    shifted_identity,
    square,
    weighted_starlike,
)
from .jsonio import dumps
from .kernel import BoundaryData, c_alpha, residual_study, solve_dirichlet
from .polyharmonic import (
    HarmonicLayer,
    PolyharmonicSpec,
    jacobian,
    jacobian_trichotomy,
    weighted_analytic,
    wirtinger_jet,
)
from .render import RenderSpec, composite_svg, render_image
from .series import AnalyticSpec, dirichlet_ratio
from .univalence import (
    GridSpec,
    circle_simplicity_oracle,
    criterion_value,
    evaluator,
    injectivity_oracle,
    scan_univalence,
)

SEED = 20240601


@dataclass
class RunManifest:
    command: str
    inputs: str
    parameters: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    wall_time_s: float = 0.0
    version: str = __version__

    def to_json(self):
        return asdict(self)


def _result(name, passed, **details):
    return {"name": name, "passed": bool(passed), "details": details}


def _disk_points(rng, n, r_max=0.95):
    return r_max * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


# univalence


def positive_suite_specs():
    out = []
    for p in (2, 3, 5):
        for n in (2, 3, 4, 5, 10):
            out.append((f"eg2 p={p} n={n} lambda=1/{n}", shear_family(p, n, 1.0 / n)))
    out.append(("eg1 a=4 b=1 c=0", moebius_family(2, 4, 1, 0)))
    out.append(("eg1 a=3 b=0.5 c=0.2", moebius_family(2, 3, 0.5, 0.2)))
    out.append(("eg3 p=2 mu=1/4", halfplane_family(2, 0.25)))
    out.append(("eg3 p=5 mu=1/2", halfplane_family(5, 0.5)))
    return out


def circle_verdicts(spec, radii=(0.3, 0.6, 0.9)):
    out = {}
    for r in radii:
        try:
            out[str(r)] = circle_simplicity_oracle(evaluator(spec), r)
        except DegenerateCurveError:
            out[str(r)] = "degenerate"
    return out


def scenario_kernel_limit():
    ns = np.arange(1, 51)
    exact = all(dirichlet_ratio(int(n), 0.0) == n for n in ns)
    t = np.pi * np.arange(1000) / 1000
    worst = max(float(np.max(np.abs(dirichlet_ratio(int(n), t)) - n)) for n in ns)
    return _result("kernel-limit", exact and worst <= 1e-12, exact_at_zero=exact, max_excess=worst)


def scenario_univalence_positive(workers=None):
    rows = []
    for label, spec in positive_suite_specs():
        rep = scan_univalence(spec, GridSpec(), refine=True, workers=workers)
        col = injectivity_oracle(evaluator(spec))
        circ = circle_verdicts(spec)
        ok = rep.min_modulus > 1e-6 and col.empty and all(v is True for v in circ.values())
        rows.append(
            {
                "example": label,
                "passed": ok,
                "scan": rep.to_json(),
                "collision_pairs": len(col.pairs),
                "circles_simple": circ,
            }
        )
    return _result("univalence-positive", all(r["passed"] for r in rows), cases=rows)


def negative_flags(spec, workers=None):
    rep = scan_univalence(spec, GridSpec(), refine=True, workers=workers)
    col = injectivity_oracle(evaluator(spec))
    circ = circle_verdicts(spec)
    flags = {
        "criterion_scan": rep.min_modulus < rep.zero_threshold,
        "injectivity_oracle": not col.empty,
        "circle_oracle": any(v is not True for v in circ.values()),
    }
    return rep, col, circ, flags


def pa_grid_max(spec, grid=None):
    grid = grid or GridSpec()
    r = grid.radii()[:, None, None]
    th = grid.thetas()[None, :, None]
    z = r * np.cos(th) + 1j * (r * np.sin(th))
    return float(np.max(np.abs(criterion_value(spec, z, grid.ts()[None, None, :]))))


def scenario_univalence_negative(workers=None):
    rows = []
    for label, spec in (("z + conj(z)", fold()), ("z^2", square()), ("1 - |z|^2", one_minus_modulus_squared())):
        rep, col, circ, flags = negative_flags(spec, workers)
        row = {
            "example": label,
            "verdict": rep.verdict,
            "min_modulus": rep.min_modulus,
            "collision_pairs": len(col.pairs),
            "circles_simple": circ,
            "flags": flags,
            "passed": sum(flags.values()) >= 2,
        }
        if label == "1 - |z|^2":
            row["criterion_max_abs"] = pa_grid_max(spec)
            row["passed"] = row["passed"] and row["criterion_max_abs"] <= 1e-14
        rows.append(row)
    return _result("univalence-negative", all(r["passed"] for r in rows), cases=rows)


# jacobians


def random_analytic(rng, degree=4, scale=0.3, normalized=True):
    c = scale * (rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1))
    if normalized:
        c[0] = 0
    return AnalyticSpec.from_coeffs(c)


def scenario_jacobian():
    rng = np.random.default_rng(SEED)
    z = _disk_points(rng, 100)
    cubic_err = float(np.max(np.abs(jacobian(cubic_radial(), z) - 3 * np.abs(z) ** 4)))
    j_eg2 = float(wirtinger_jet(shear_family(2, 2, 0.5), 0.0).jacobian)
    j_eg3 = float(wirtinger_jet(halfplane_family(2, 0.25), 0.0).jacobian)
    agree = 0
    for _ in range(100):
        F1 = random_analytic(rng, 3, 1.0, normalized=False)
        p = int(rng.integers(2, 6))
        zz = complex(_disk_points(rng, 1, 0.9)[0])
        label = jacobian_trichotomy(F1, p, zz)
        jet = wirtinger_jet(weighted_analytic(F1, p), zz)
        J = float(jet.jacobian)
        band = 1e-12 * (abs(jet.dz) ** 2 + abs(jet.dzbar) ** 2)
        direct = "pos" if J > band else "neg" if J < -band else "zero"
        agree += label == direct
    checks = {
        "cubic_radial": cubic_err <= 1e-12,
        "eg2_origin": abs(j_eg2 - 1) <= 1e-12,
        "eg3_origin": abs(j_eg3 - 2) <= 1e-12,
        "trichotomy": agree == 100,
    }
    return _result(
        "jacobian",
        all(checks.values()),
        checks=checks,
        cubic_max_error=cubic_err,
        eg2_jacobian_at_0=j_eg2,
        eg3_jacobian_at_0=j_eg3,
        eg3_expected=2.0,
        trichotomy_agreement=agree,
    )


# accessibility


def random_biharmonic(rng):
    layers = [HarmonicLayer(random_analytic(rng), random_analytic(rng)) for _ in range(2)]
    return PolyharmonicSpec(2, tuple(layers))


def scenario_accessibility_identities():
    rng = np.random.default_rng(SEED + 1)
    l2_err = 0.0
    for _ in range(100):
        spec = random_biharmonic(rng)
        z = _disk_points(rng, 8, 0.9)
        _, A, B, _, _ = margin_fields(spec, z)
        l2_err = max(l2_err, float(np.max(np.abs(A**2 + B**2 - biharmonic_L2(spec, z)))))
    harm_err = 0.0
    for _ in range(100):
        h, g = random_analytic(rng), random_analytic(rng)
        spec = PolyharmonicSpec(1, (HarmonicLayer(h, g),))
        z = complex(_disk_points(rng, 1, 0.9)[0])
        alpha = float(rng.random())
        lhs, _, _, L, phi = margin_fields(spec, z)
        general = float(lhs - math.sin(alpha * math.pi / 2) * abs(phi) * L)
        harm_err = max(harm_err, abs(harmonic_margin(h, g, z, alpha) - general))
    spec = shifted_identity(2, 0.25)
    levels = [0.0, 0.25, 0.5, 0.75, 1.0]
    margins = [check_fully_accessible(spec, a).min_margin for a in levels]
    mono = all(b <= a for a, b in zip(margins, margins[1:]))
    return _result(
        "accessibility-identities",
        l2_err <= 1e-10 and harm_err <= 1e-10 and mono,
        l2_max_error=l2_err,
        harmonic_max_error=harm_err,
        monotone_levels=levels,
        monotone_margins=margins,
        monotone=mono,
    )


def shifted_bound(lam):
    return 2 / math.pi * math.asin((1 - abs(lam)) / (1 + abs(lam)))


def starlike_bound(n, lam):
    return 1 - 2 / math.pi * math.asin(abs(lam) * (n - 1) / (1 - abs(lam)))


def accessibility_cases():
    out = []
    for p, lam in ((2, 0.25), (3, 0.125)):
        out.append((f"z - {lam}|z|^{2 * (p - 1)}", shifted_identity(p, lam), shifted_bound(lam)))
    for n, p in ((3, 2), (4, 3), (5, 4), (10, 5)):
        lam = 1 / (2 * n)
        out.append((f"|z|^{2 * (p - 1)}(z + z^{n}/{2 * n})", weighted_starlike(p, n, lam), starlike_bound(n, lam)))
    return out


def scenario_accessibility_bounds():
    rows = []
    for label, spec, bound in accessibility_cases():
        rep = check_fully_accessible(spec, bound - 0.02)
        rows.append({"example": label, "alpha_bound": bound, "report": rep.to_json(), "passed": bool(rep.holds)})
    estimates = []
    for n, p in ((3, 2), (4, 3), (5, 4), (10, 5)):
        est = estimate_alpha_sup(weighted_starlike(p, n, 1.0 / n))
        estimates.append(
            {"n": n, "p": p, "lambda": 1.0 / n, "estimate": est.to_json(), "passed": est.self_consistent is not False}
        )
    ok = all(r["passed"] for r in rows) and all(e["passed"] for e in estimates)
    return _result("accessibility-bounds", ok, cases=rows, lambda_one_over_n_estimates=estimates)


def scenario_cone_agreement():
    rows = []
    for label, spec, bound in accessibility_cases():
        for alpha in (0.0, bound - 0.02):
            cone = boundary_cone_oracle(spec, 0.9, alpha)
            margin = circle_margin_verdict(spec, 0.9, alpha)
            rows.append({"example": label, "alpha": alpha, "cone": cone, "margin": margin, "passed": cone == margin})
    return _result("cone-agreement", all(r["passed"] for r in rows), cases=rows)


# kernel


def scenario_kernel():
    consts = {"0": c_alpha(0), "2": c_alpha(2), "4": c_alpha(4)}
    expected = {"0": 1.0, "2": 0.5, "4": 2.0 / 3.0}
    const_ok = {k: abs(consts[k] - expected[k]) <= 1e-10 for k in consts}
    rng = np.random.default_rng(SEED + 2)
    z = _disk_points(rng, 20, 0.9)
    mean_err = float(np.max(np.abs(solve_dirichlet(BoundaryData.const(), 0, z) - 1)))
    studies = {}
    for a in (0, 2):
        res, ratios = residual_study(BoundaryData.cos(1), a)
        studies[str(a)] = {"residuals": res, "ratio": ratios[0], "passed": 3.5 <= ratios[0] <= 4.5}
    zq = _disk_points(rng, 20, 0.9)
    conv = 0.0
    for f in (BoundaryData.const(), BoundaryData.cos(1), BoundaryData.cos(3), BoundaryData.sin(2)):
        for a in (0, 2, 4):
            d = solve_dirichlet(f, a, zq, nodes=256, adaptive=False) - solve_dirichlet(f, a, zq, nodes=512, adaptive=False)
            conv = max(conv, float(np.max(np.abs(d))))
    ok = all(const_ok.values()) and mean_err <= 1e-10 and all(s["passed"] for s in studies.values()) and conv < 1e-10
    return _result(
        "kernel",
        ok,
        c_alpha=consts,
        c_alpha_expected=expected,
        c_alpha_passed=const_ok,
        constant_data_max_error=mean_err,
        residual_studies=studies,
        quadrature_self_convergence=conv,
    )


# render


def conjugation_gap(rendering):
    """Largest distance between a sample and the conjugate of its mirror."""
    gap = 0.0
    circles = [p for p in rendering.polylines if p.kind == "circle"]
    for pl in circles:
        w = pl.points
        mirrored = np.conj(np.roll(w[::-1], 1))
        gap = max(gap, float(np.max(np.abs(w - mirrored))))
    rays = [p for p in rendering.polylines if p.kind == "ray"]
    n = len(rays)
    for i, pl in enumerate(rays):
        other = rays[(-i) % n]
        gap = max(gap, float(np.max(np.abs(pl.points - np.conj(other.points)))))
    return gap


def scenario_render(tmpdir: Path | None = None):
    rows = []
    for n in (2, 3, 5):
        r = render_image(shear_family(2, n, 1.0 / n), RenderSpec(r_max=0.999))
        rows.append({"n": n, "max_modulus": r.max_modulus, "target": 2 + 1 / n, "passed": abs(r.max_modulus - 2 - 1 / n) <= 1e-2})
    sym = conjugation_gap(render_image(shear_family(2, 2, 0.5), RenderSpec()))
    ok = all(r["passed"] for r in rows) and sym <= 1e-12
    return _result("render", ok, boundary_modulus=rows, conjugation_gap=sym)


# comparison


def scenario_comparison():
    v = lavrentiev_profile(shear_family(2, 2, 0.5), [0.99])[0]
    w = halfplane_threshold_form(-0.999)
    eg3 = lavrentiev_profile(halfplane_family(2, 0.5), [-0.999])[0]
    return _result(
        "comparison",
        abs(v - 298) <= 1e-9 and w > 4,
        eg2_lhs=v,
        eg3_threshold_form=w,
        eg3_lhs=eg3,
    )


SCENARIOS = {
    "kernel-limit": lambda workers: scenario_kernel_limit(),
    "univalence-positive": scenario_univalence_positive,
    "univalence-negative": scenario_univalence_negative,
    "jacobian": lambda workers: scenario_jacobian(),
    "accessibility-identities": lambda workers: scenario_accessibility_identities(),
    "accessibility-bounds": lambda workers: scenario_accessibility_bounds(),
    "cone-agreement": lambda workers: scenario_cone_agreement(),
    "kernel": lambda workers: scenario_kernel(),
    "render": lambda workers: scenario_render(),
    "comparison": lambda workers: scenario_comparison(),
}

FIGURES = {
    "figure1.svg": [("eg2 n=2 p=2", (2, 2)), ("eg2 n=5 p=3", (5, 3))],
    "figure2.svg": [("eg2 n=3 p=2", (3, 2)), ("eg2 n=4 p=5", (4, 5))],
    "figure3.svg": [("eg3 p=2 mu=1/4", (2, 0.25)), ("eg3 p=5 mu=1/2", (5, 0.5))],
    "figure4.svg": [
        ("n=3 p=2", (3, 2)),
        ("n=4 p=3", (4, 3)),
        ("n=5 p=4", (5, 4)),
        ("n=10 p=5", (10, 5)),
    ],
}


def _figure_spec(name, args):
    if name in ("figure1.svg", "figure2.svg"):
        n, p = args
        return shear_family(p, n, 1.0 / n)
    if name == "figure3.svg":
        p, mu = args
        return halfplane_family(p, mu)
    n, p = args
    return weighted_starlike(p, n, 1.0 / n)


def write_figures(out: Path, rs: RenderSpec | None = None):
    rs = rs or RenderSpec(n_circles=12, n_rays=24, samples_per_curve=256, r_max=0.99)
    paths = []
    for fname, panels in FIGURES.items():
        spec_rs = RenderSpec(12, 24, 256, 0.9, rs.canvas, rs.stroke_width) if fname == "figure3.svg" else rs
        rendered = [(title, render_image(_figure_spec(fname, args), spec_rs)) for title, args in panels]
        paths.append(composite_svg(rendered, out / fname, rs=spec_rs))
    return paths


def reproduce_paper(output_dir, workers=None, only=None):
    """Run the scenarios, write reports, figures and a summary.

    Returns (manifests, all_passed).  ``only`` restricts the scenario set.
    """
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise OSError(f"output directory {out} is not writable: {exc.strerror}") from exc
    (out / "reports").mkdir(exist_ok=True)
    (out / "manifests").mkdir(exist_ok=True)
    manifests = []
    summary = []
    for name, fn in SCENARIOS.items():
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        res = fn(workers)
        path = out / "reports" / f"{name}.json"
        path.write_text(dumps(res), encoding="utf-8")
        m = RunManifest("reproduce-paper", name, {"workers": workers}, [str(path)], time.perf_counter() - t0)
        (out / "manifests" / f"{name}.json").write_text(dumps(m.to_json()), encoding="utf-8")
        manifests.append(m)
        summary.append({"scenario": name, "passed": res["passed"]})
    t0 = time.perf_counter()
    figs = write_figures(out)
    m = RunManifest("reproduce-paper", "figures", {}, [str(p) for p in figs], time.perf_counter() - t0)
    (out / "manifests" / "figures.json").write_text(dumps(m.to_json()), encoding="utf-8")
    manifests.append(m)
    (out / "reports" / "summary.json").write_text(dumps(summary), encoding="utf-8")
    lines = ["scenario                   result"]
    lines += [f"{row['scenario']:<26} {'pass' if row['passed'] else 'FAIL'}" for row in summary]
    (out / "summary.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifests, all(row["passed"] for row in summary)
