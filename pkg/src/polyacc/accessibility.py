"""Full alpha-accessibility of p-harmonic maps.

For Phi = sum_k |z|^{2(k-1)} (h_k + conj(g_k)) with Phi(0) = 0 and positive
Jacobian, Phi is fully alpha-accessible iff at every z

    lhs(z) = sum_k |z|^{2(k-1)} Re{z (h_k' conj(Phi) - g_k' Phi)}
           >= sin(alpha pi / 2) |Phi| L,

with L = sqrt(A^2 + B^2), A = Re{z sum_k |z|^{2(k-1)} (h_k' - g_k')} and
B = Im{z sum_k |z|^{2(k-1)} (h_k' + g_k')}.  ``margin(alpha)`` is the
signed slack of that inequality.

:func:`boundary_cone_oracle` checks the same property geometrically from
sampled image curves, without any derivative formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateCurveError,
    DomainError,
    HypothesisError,
    NormalizationError,
    SingularInputError,
    WrongOrderError,
)
from .polyharmonic import PolyharmonicSpec, eval_ph, jacobian
from .series import AnalyticSpec, _out

SKIP_THRESHOLD = 1e-14
SKIP_LHS_FLOOR = -1e-12
CLAMP_GUARD = 1e-12


@dataclass(frozen=True)
class AccessMargin:
    lhs: float
    A: float
    B: float
    L: float
    phi_abs: float

    def margin(self, alpha):
        return self.lhs - math.sin(alpha * math.pi / 2) * self.phi_abs * self.L

    @property
    def ratio(self):
        return self.lhs / (self.phi_abs * self.L)


@dataclass(frozen=True)
class DiskGrid:
    """Polar grid of nodes z = r e^{i theta}, radii geometric in [r_min, r_max]."""

    r_min: float = 0.01
    r_max: float = 0.99
    n_r: int = 100
    n_theta: int = 128

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max < 1:
            raise ValueError("grid needs 0 < r_min < r_max < 1")
        if min(self.n_r, self.n_theta) < 2:
            raise ValueError("grid counts must be >= 2")

    def nodes(self):
        r = np.geomspace(self.r_min, self.r_max, self.n_r)[:, None]
        th = (2 * np.pi * np.arange(self.n_theta) / self.n_theta)[None, :]
        return r * np.cos(th) + 1j * (r * np.sin(th))


@dataclass
class AccessReport:
    alpha_tested: float | None
    holds: bool | None
    hypothesis_ok: bool
    hypothesis_note: str
    min_margin: float
    argmin_z: complex
    ratio_inf: float
    ratio_argmin_z: complex
    alpha_sup_estimate: float | None
    skipped_nodes: int
    jacobian_min: float
    grid: DiskGrid
    alpha_bisection: float | None = None
    self_consistent: bool | None = None

    def _estimate_json(self):
        if self.alpha_sup_estimate is not None or self.alpha_tested is not None or not self.hypothesis_ok:
            return self.alpha_sup_estimate
        return "not alpha-accessible for any alpha >= 0 at resolution"

    def to_json(self):
        return {
            "alpha_tested": self.alpha_tested,
            "holds": self.holds,
            "hypothesis_ok": self.hypothesis_ok,
            "hypothesis_note": self.hypothesis_note,
            "min_margin": self.min_margin,
            "argmin": [self.argmin_z.real, self.argmin_z.imag],
            "ratio_inf": self.ratio_inf,
            "ratio_argmin": [self.ratio_argmin_z.real, self.ratio_argmin_z.imag],
            "alpha_sup_estimate": self._estimate_json(),
            "alpha_bisection": self.alpha_bisection,
            "self_consistent": self.self_consistent,
            "skipped_nodes": self.skipped_nodes,
            "jacobian_min": self.jacobian_min,
            "grid": {
                "r_min": self.grid.r_min,
                "r_max": self.grid.r_max,
                "n_r": self.grid.n_r,
                "n_theta": self.grid.n_theta,
            },
        }


def _require_normalized(spec):
    if abs(eval_ph(spec, 0.0)) != 0.0:
        raise NormalizationError("accessibility is defined for Phi(0) = 0")


def margin_fields(spec: PolyharmonicSpec, z):
    """Vectorized (lhs, A, B, L, Phi) at the points ``z``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("point outside the open unit disk")
    r2 = np.abs(z) ** 2
    phi = eval_ph(spec, z)
    lhs = np.zeros(z.shape)
    hsum = np.zeros(z.shape, dtype=complex)
    gsum = np.zeros(z.shape, dtype=complex)
    for j, layer in enumerate(spec.layers):
        w = r2**j if j else 1.0
        hd = layer.h.deriv(z)
        gd = layer.g.deriv(z)
        lhs = lhs + w * (z * (hd * np.conj(phi) - gd * phi)).real
        hsum = hsum + w * hd
        gsum = gsum + w * gd
    A = (z * (hsum - gsum)).real
    B = (z * (hsum + gsum)).imag
    return lhs, A, B, np.hypot(A, B), phi


def access_margin(spec: PolyharmonicSpec, z) -> AccessMargin:
    _require_normalized(spec)
    if z == 0:
        raise DomainError("z = 0 is excluded")
    lhs, A, B, L, phi = margin_fields(spec, complex(z))
    return AccessMargin(float(lhs), float(A), float(B), float(L), float(abs(phi)))


def _sin(alpha):
    return math.sin(alpha * math.pi / 2)


def _scan(spec, grid):
    Z = grid.nodes()
    lhs, _, _, L, phi = margin_fields(spec, Z)
    scale = np.abs(phi) * L
    return Z, lhs, scale


def _hypothesis(spec, Z):
    try:
        _require_normalized(spec)
    except NormalizationError as exc:
        return False, str(exc), float("nan")
    jac = jacobian(spec, Z)
    jmin = float(np.min(jac))
    if jmin <= 0:
        return False, "Jacobian is not positive on the grid", jmin
    return True, "", jmin


def _report_at(spec, grid, alpha, Z, lhs, scale, hyp, note, jmin):
    skipped = scale < SKIP_THRESHOLD
    valid = ~skipped
    margin = np.where(valid, lhs - _sin(alpha) * scale, np.inf) if alpha is not None else None
    ratio = np.where(valid, lhs / np.where(valid, scale, 1.0), np.inf)
    k = int(np.argmin(ratio))
    ratio_inf = float(ratio.reshape(-1)[k])
    if margin is not None:
        km = int(np.argmin(margin))
        min_margin = float(margin.reshape(-1)[km])
        arg = complex(Z.reshape(-1)[km])
        holds = hyp and min_margin >= 0 and bool(np.all(lhs[skipped] >= SKIP_LHS_FLOOR))
    else:
        min_margin, arg, holds = float("nan"), 0j, None
    return AccessReport(
        alpha_tested=alpha,
        holds=holds if hyp else False if alpha is not None else None,
        hypothesis_ok=hyp,
        hypothesis_note=note,
        min_margin=min_margin,
        argmin_z=arg,
        ratio_inf=ratio_inf,
        ratio_argmin_z=complex(Z.reshape(-1)[k]),
        alpha_sup_estimate=None,
        skipped_nodes=int(np.count_nonzero(skipped)),
        jacobian_min=jmin,
        grid=grid,
    )


def check_fully_accessible(spec: PolyharmonicSpec, alpha, grid: DiskGrid | None = None) -> AccessReport:
    """Test the accessibility inequality at level ``alpha`` on grid nodes.

    Nodes with |Phi| L below 1e-14 are skipped (counted) and only need
    lhs >= -1e-12.  A failed hypothesis (Phi(0) != 0 or a non-positive
    Jacobian at some node) is reported, not raised.
    """
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    grid = grid or DiskGrid()
    Z = grid.nodes()
    hyp, note, jmin = _hypothesis(spec, Z)
    if not hyp and note.startswith("accessibility"):
        return AccessReport(alpha, False, False, note, float("nan"), 0j, float("nan"), 0j, None, 0, jmin, grid)
    _, lhs, scale = _scan(spec, grid)
    return _report_at(spec, grid, alpha, Z, lhs, scale, hyp, note, jmin)


def _ratio_at(spec, z):
    lhs, _, _, L, phi = margin_fields(spec, z)
    scale = np.abs(phi) * L
    return np.where(scale >= SKIP_THRESHOLD, lhs / np.where(scale > 0, scale, 1.0), np.inf)


def alpha_from_ratio(ratio):
    if ratio < 0:
        return None
    s = min(1.0, max(-1.0, ratio))
    if s > 1 - CLAMP_GUARD:
        s = 1.0
    return 2 / math.pi * math.asin(s)


def estimate_alpha_sup(spec: PolyharmonicSpec, grid: DiskGrid | None = None, bisect_steps=20) -> AccessReport:
    """Estimate the largest alpha for which the inequality holds.

    The infimum of lhs / (|Phi| L) over the grid is refined once on a 3x3
    patch around its argmin and converted with (2/pi) arcsin.  A
    bisection on alpha against :func:`check_fully_accessible` on the same
    grid is recorded alongside, and ``self_consistent`` states whether
    the check passes at ``alpha_sup_estimate - 0.01``.
    """
    grid = grid or DiskGrid()
    Z = grid.nodes()
    hyp, note, jmin = _hypothesis(spec, Z)
    if not hyp:
        return AccessReport(None, None, False, note, float("nan"), 0j, float("nan"), 0j, None, 0, jmin, grid)
    _, lhs, scale = _scan(spec, grid)
    rep = _report_at(spec, grid, None, Z, lhs, scale, hyp, note, jmin)

    z0 = rep.ratio_argmin_z
    r0, th0 = abs(z0), math.atan2(z0.imag, z0.real)
    dlog = 0.5 * math.log(grid.r_max / grid.r_min) / (grid.n_r - 1)
    dth = 0.5 * 2 * math.pi / grid.n_theta
    rs = np.clip(r0 * np.exp(dlog * np.array([-1.0, 0.0, 1.0])), grid.r_min, grid.r_max)
    ths = th0 + dth * np.array([-1.0, 0.0, 1.0])
    patch = rs[:, None] * np.cos(ths)[None, :] + 1j * (rs[:, None] * np.sin(ths)[None, :])
    vals = _ratio_at(spec, patch)
    k = int(np.argmin(vals))
    if vals.reshape(-1)[k] < rep.ratio_inf:
        rep.ratio_inf = float(vals.reshape(-1)[k])
        rep.ratio_argmin_z = complex(patch.reshape(-1)[k])
    rep.alpha_sup_estimate = alpha_from_ratio(rep.ratio_inf)

    def passes(a):
        return bool(_report_at(spec, grid, a, Z, lhs, scale, hyp, note, jmin).holds)

    if passes(0.0):
        lo, hi = 0.0, 1.0
        if passes(1.0):
            lo = 1.0
        else:
            for _ in range(bisect_steps):
                mid = 0.5 * (lo + hi)
                lo, hi = (mid, hi) if passes(mid) else (lo, mid)
        rep.alpha_bisection = lo
    if rep.alpha_sup_estimate is not None:
        rep.self_consistent = passes(max(0.0, rep.alpha_sup_estimate - 0.01))
    return rep


def biharmonic_L2(spec: PolyharmonicSpec, z):
    """L^2 through the expanded biharmonic formula (p = 2 only).

    Layer 1 (weight 1) holds h_2, g_2; layer 2 (weight |z|^2) holds h_1, g_1.
    """
    if spec.p != 2:
        raise WrongOrderError(f"biharmonic formula needs p = 2, got p = {spec.p}")
    z = np.asarray(z, dtype=complex)
    h2, g2 = spec.layers[0].h.deriv(z), spec.layers[0].g.deriv(z)
    h1, g1 = spec.layers[1].h.deriv(z), spec.layers[1].g.deriv(z)
    a2 = np.abs(z) ** 2
    z2 = z * z
    out = (
        a2**3 * (np.abs(h1) ** 2 + np.abs(g1) ** 2)
        + a2 * (np.abs(h2) ** 2 + np.abs(g2) ** 2)
        + 2 * a2**2 * (h1 * np.conj(h2) + g1 * np.conj(g2)).real
        - 2 * (z2 * (h2 * g2 + a2**2 * h1 * g1)).real
        - 2 * a2 * (z2 * (h1 * g2 + g1 * h2)).real
    )
    return _out(out)


def harmonic_margin(h: AnalyticSpec, g: AnalyticSpec, z, alpha):
    """Margin for a harmonic Phi = h + conj(g) in quotient form.

    Falls back to the general p = 1 path where h or g vanishes.
    """
    z = complex(z)
    hv, gv = complex(h.value(z)), complex(g.value(z))
    hd, gd = complex(h.deriv(z)), complex(g.deriv(z))
    s = _sin(alpha)
    if hv == 0 or gv == 0:
        from .polyharmonic import HarmonicLayer

        spec = PolyharmonicSpec(1, (HarmonicLayer(h, g),))
        lhs, _, _, L, phi = margin_fields(spec, z)
        return float(lhs - s * abs(phi) * L)
    lhs = abs(hv) ** 2 * (z * hd / hv).real - abs(gv) ** 2 * (z * gd / gv).real - (z * (gd * hv - hd * gv)).real
    rhs = s * abs(z * hd - np.conj(z * gd)) * abs(hv + np.conj(gv))
    return float(lhs - rhs)


def analytic_alpha(spec: AnalyticSpec, z):
    """|arg(z Phi'(z) / Phi(z))| for analytic Phi with Phi(0) = 0.

    Phi is fully alpha-accessible iff the supremum over the disk is at
    most (pi/2)(1 - alpha).
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise SingularInputError("z = 0 is excluded")
    f = spec.value(z)
    if np.any(f == 0):
        raise SingularInputError("Phi vanishes at z")
    return _out(np.abs(np.angle(z * spec.deriv(z) / f)))


def _winding(w):
    d = np.angle(np.roll(w, -1) / w)
    return int(round(float(np.sum(d)) / (2 * np.pi)))


def cone_inner_products(spec: PolyharmonicSpec, r, n_theta=4096):
    """<outward unit normal, w/|w|> along w(theta) = Phi(r e^{i theta}).

    Tangents come from periodic central differences of the samples; the
    outward normal is the tangent turned by -pi/2 for a positively
    wound curve (+pi/2 otherwise).
    """
    if not 0 < r < 1:
        raise DomainError("radius must lie in (0, 1)")
    _require_normalized(spec)
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    zs = r * np.cos(th) + 1j * (r * np.sin(th))
    if np.any(jacobian(spec, zs) <= 0):
        raise HypothesisError(f"Jacobian is not positive on |z| = {r}")
    w = eval_ph(spec, zs)
    step = np.roll(w, -1) - w
    if np.any(np.abs(step) < 1e-14):
        raise DegenerateCurveError(f"consecutive samples coincide on |z| = {r}")
    tangent = np.roll(w, -1) - np.roll(w, 1)
    wind = _winding(w)
    if wind == 0:
        raise DegenerateCurveError("image curve does not wind around the origin")
    normal = -1j * tangent if wind > 0 else 1j * tangent
    normal = normal / np.abs(normal)
    return (np.conj(normal) * w).real / np.abs(w)


def boundary_cone_oracle(spec: PolyharmonicSpec, r, alpha, n_theta=4096, tol=1e-6) -> bool:
    """Discrete cone condition on the image of |z| = r at level ``alpha``."""
    return bool(np.all(cone_inner_products(spec, r, n_theta) >= _sin(alpha) - tol))


def circle_margin_verdict(spec: PolyharmonicSpec, r, alpha, n_theta=4096) -> bool:
    """Margin verdict restricted to the circle |z| = r."""
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    zs = r * np.cos(th) + 1j * (r * np.sin(th))
    lhs, _, _, L, phi = margin_fields(spec, zs)
    return bool(np.all(lhs - _sin(alpha) * np.abs(phi) * L >= 0))
