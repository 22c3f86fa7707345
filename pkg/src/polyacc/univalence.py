"""Univalence criteria for p-harmonic and p-analytic functions.

For a p-harmonic F the circle-wise criterion is

    U(z, t) = sum_k |z|^{2(k-1)} (S_t[h_k](z) - conj(S_t[g_k](z))) != 0

for every z != 0 in the disk and t in (0, pi/2]; the p-analytic version is
``sum_k conj(z)^k sum_n c_n^(k) sin((n-k)t)/sin(t) z^n``.  A finite scan
can only report that no violation was found at the chosen resolution.

Two brute-force oracles work directly on function values and share no
code with the criterion: an all-pairs collision search over a Cartesian
grid and a self-intersection test of the image of a circle.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import backend
from .errors import DegenerateCurveError, DomainError
from .polyharmonic import (
    PolyanalyticSpec,
    PolyharmonicSpec,
    eval_pa,
    eval_ph,
    wirtinger_jet,
    wirtinger_jet_pa,
)
from .program import compile_spec

NO_VIOLATION = "no-violation-found"
VIOLATION = "violation-found"
HYPOTHESIS_FAILED = "hypothesis-failed"

ORIGIN_JACOBIAN_TOL = 1e-12
ORIGIN_RADIUS = 0.05
ORIGIN_RESOLUTION = 64
ORIGIN_SEPARATION = 1e-3
ORIGIN_COLLISION = 1e-9


@dataclass(frozen=True)
class GridSpec:
    """Polar (r, theta) grid times a t-grid on (0, pi/2].

    Radii are geometric in [r_min, r_max]; t_j = (pi/2) j / n_t for
    j = 1..n_t so that pi/2 is included and 0 excluded.
    """

    r_min: float = 0.01
    r_max: float = 0.99
    n_r: int = 100
    n_theta: int = 128
    n_t: int = 32

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max < 1:
            raise ValueError("grid needs 0 < r_min < r_max < 1")
        if min(self.n_r, self.n_theta, self.n_t) < 2:
            raise ValueError("grid counts must be >= 2")

    def radii(self):
        return np.geomspace(self.r_min, self.r_max, self.n_r)

    def thetas(self):
        return 2 * np.pi * np.arange(self.n_theta) / self.n_theta

    def ts(self):
        return 0.5 * np.pi * np.arange(1, self.n_t + 1) / self.n_t


@dataclass
class ScanReport:
    verdict: str
    min_modulus: float
    argmin_z: complex
    argmin_t: float
    grid: GridSpec
    zero_threshold: float
    coarse_min_modulus: float
    refined: bool
    jacobian_at_0: float
    local_injectivity_pass: bool | None
    backend: str = backend.BACKEND

    @property
    def origin_ok(self):
        return self.local_injectivity_pass is not False

    def to_json(self):
        return {
            "verdict": self.verdict,
            "min_modulus": self.min_modulus,
            "coarse_min_modulus": self.coarse_min_modulus,
            "argmin": {"z": [self.argmin_z.real, self.argmin_z.imag], "t": self.argmin_t},
            "grid": asdict(self.grid),
            "refined": self.refined,
            "zero_threshold": self.zero_threshold,
            "origin_check": {
                "jacobian_at_0": self.jacobian_at_0,
                "local_injectivity_pass": self.local_injectivity_pass,
            },
        }


@dataclass
class CollisionReport:
    pairs: list = field(default_factory=list)  # ((z1, z2), |F(z1) - F(z2)|)
    resolution: int = 0
    delta_sep: float = 0.0
    eps_col: float = 0.0
    truncated: bool = False

    @property
    def empty(self):
        return not self.pairs

    def to_json(self):
        return {
            "n_pairs": len(self.pairs),
            "truncated": self.truncated,
            "pairs": [
                {"z1": [a.real, a.imag], "z2": [b.real, b.imag], "gap": d} for (a, b), d in self.pairs[:20]
            ],
            "resolution": self.resolution,
            "delta_sep": self.delta_sep,
            "eps_col": self.eps_col,
        }


def _check_point(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("the criterion excludes z = 0")
    if np.any(np.abs(z) >= 1):
        raise DomainError("point outside the open unit disk")
    return z


def criterion_value_ph(spec: PolyharmonicSpec, z, t):
    z = _check_point(z)
    r2 = np.abs(z) ** 2
    out = 0j
    for j, layer in enumerate(spec.layers):
        w = r2**j if j else 1.0
        out = out + w * (layer.h.sine_transform(z, t) - np.conj(layer.g.sine_transform(z, t)))
    return out


def criterion_value_pa(spec: PolyanalyticSpec, z, t):
    z = _check_point(z)
    zb = np.conj(z)
    out = 0j
    for k, a in enumerate(spec.coeffs):
        out = out + zb**k * a.shifted_sine_transform(z, t, k)
    return out


def criterion_value(spec, z, t):
    if isinstance(spec, PolyanalyticSpec):
        return criterion_value_pa(spec, z, t)
    return criterion_value_ph(spec, z, t)


def evaluator(spec) -> Callable:
    if isinstance(spec, PolyanalyticSpec):
        return lambda z: eval_pa(spec, z)
    return lambda z: eval_ph(spec, z)


def jacobian_at_origin(spec):
    if isinstance(spec, PolyanalyticSpec):
        return float(wirtinger_jet_pa(spec, 0.0).jacobian)
    return float(wirtinger_jet(spec, 0.0).jacobian)


def _refine(spec, grid, ir, ith, it, coarse):
    radii, thetas, ts = grid.radii(), grid.thetas(), grid.ts()
    r0, th0, t0 = radii[ir], thetas[ith], ts[it]
    dlog = 0.5 * math.log(grid.r_max / grid.r_min) / (grid.n_r - 1)
    dth = 0.5 * (2 * math.pi / grid.n_theta)
    dt = 0.5 * (0.5 * math.pi / grid.n_t)
    rs = np.clip(r0 * np.exp(dlog * np.array([-1.0, 0.0, 1.0])), grid.r_min, grid.r_max)
    ths = th0 + dth * np.array([-1.0, 0.0, 1.0])
    tt = np.clip(t0 + dt * np.array([-1.0, 0.0, 1.0]), 1e-12, 0.5 * math.pi)
    R, TH, T = np.meshgrid(rs, ths, tt, indexing="ij")
    Z = R * np.cos(TH) + 1j * (R * np.sin(TH))
    vals = np.abs(criterion_value(spec, Z, T))
    k = int(np.argmin(vals))
    best = float(vals.reshape(-1)[k])
    if best < coarse:
        return best, complex(Z.reshape(-1)[k]), float(T.reshape(-1)[k])
    return coarse, complex(r0 * math.cos(th0) + 1j * (r0 * math.sin(th0))), float(t0)


def scan_univalence(spec, grid: GridSpec | None = None, refine=True, zero_threshold=1e-9, workers=None):
    """Scan the univalence criterion over a grid.

    The origin hypothesis is checked first: a nonzero Jacobian at 0
    settles it, otherwise the collision oracle runs on |z| <= 0.05.  The
    reported verdict is ``hypothesis-failed`` when the origin check
    fails, even if the scan also found a zero.
    """
    grid = grid or GridSpec()
    j0 = jacobian_at_origin(spec)
    local = None
    if abs(j0) < ORIGIN_JACOBIAN_TOL:
        rep = injectivity_oracle(
            evaluator(spec),
            ORIGIN_RESOLUTION,
            r_max=ORIGIN_RADIUS,
            delta_sep=ORIGIN_SEPARATION,
            eps_col=ORIGIN_COLLISION,
            max_pairs=1,
        )
        local = rep.empty

    prog = compile_spec(spec)
    coarse, ir, ith, it = backend.scan_min(prog, grid.radii(), grid.thetas(), grid.ts(), workers)
    r0, th0 = grid.radii()[ir], grid.thetas()[ith]
    best, zmin, tmin = coarse, complex(r0 * math.cos(th0) + 1j * (r0 * math.sin(th0))), float(grid.ts()[it])
    if refine:
        best, zmin, tmin = _refine(spec, grid, ir, ith, it, coarse)

    # a sub-threshold minimum counts when a node already sits on a zero
    # or when refinement at least halved the coarse minimum
    shrinks = coarse < zero_threshold or best < 0.5 * coarse
    violated = best < zero_threshold and (shrinks or not refine)
    if local is False:
        verdict = HYPOTHESIS_FAILED
    elif violated:
        verdict = VIOLATION
    else:
        verdict = NO_VIOLATION
    return ScanReport(
        verdict=verdict,
        min_modulus=best,
        argmin_z=zmin,
        argmin_t=tmin,
        grid=grid,
        zero_threshold=zero_threshold,
        coarse_min_modulus=coarse,
        refined=refine,
        jacobian_at_0=j0,
        local_injectivity_pass=local,
    )


def cartesian_disk_points(resolution, r_max):
    """Nodes of a resolution x resolution square grid on [-r_max, r_max]^2
    that lie in the closed disk of radius r_max."""
    x = np.linspace(-r_max, r_max, resolution)
    X, Y = np.meshgrid(x, x, indexing="ij")
    Z = (X + 1j * Y).reshape(-1)
    return Z[np.abs(Z) <= r_max]


def injectivity_oracle(
    func, resolution=128, r_max=0.99, delta_sep=1e-3, eps_col=None, max_pairs=1000
) -> CollisionReport:
    """Brute-force collision search among image points.

    Image points are hashed into square buckets of side ``eps_col``; each
    point is compared with the points in its own and the 8 neighbouring
    buckets.  A pair is reported when the preimages are more than
    ``delta_sep`` apart and the images less than ``eps_col`` apart.
    ``eps_col`` defaults to 1e-7 times the image diameter.
    """
    zs = cartesian_disk_points(resolution, r_max)
    ws = np.asarray(func(zs), dtype=complex)
    if eps_col is None:
        span = max(np.ptp(ws.real), np.ptp(ws.imag))
        eps_col = 1e-7 * span if span > 0 else 1e-12
    kx = np.floor(ws.real / eps_col).astype(np.int64)
    ky = np.floor(ws.imag / eps_col).astype(np.int64)
    buckets: dict = {}
    for i, key in enumerate(zip(kx.tolist(), ky.tolist())):
        buckets.setdefault(key, []).append(i)

    pairs = []
    truncated = False
    for i in range(len(zs)):
        cx, cy = int(kx[i]), int(ky[i])
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for j in buckets.get((cx + dx, cy + dy), ()):
                    if j <= i:
                        continue
                    gap = abs(ws[i] - ws[j])
                    if gap < eps_col and abs(zs[i] - zs[j]) > delta_sep:
                        pairs.append(((complex(zs[i]), complex(zs[j])), float(gap)))
                        if len(pairs) >= max_pairs:
                            truncated = True
                            break
                if truncated:
                    break
            if truncated:
                break
        if truncated:
            break
    return CollisionReport(pairs, resolution, delta_sep, eps_col, truncated)


def circle_image(func, r, n_theta):
    if not 0 < r < 1:
        raise DomainError("radius must lie in (0, 1)")
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    return np.asarray(func(r * np.cos(th) + 1j * (r * np.sin(th))), dtype=complex)


def circle_simplicity_oracle(func, r, n_theta=2048) -> bool:
    """Whether the closed polyline theta -> F(r e^{i theta}) is simple."""
    w = circle_image(func, r, n_theta)
    if np.any(np.abs(np.diff(np.append(w, w[0]))) < 1e-14):
        raise DegenerateCurveError(f"consecutive samples coincide on |z| = {r}")
    return backend.polyline_is_simple(w.real, w.imag)
