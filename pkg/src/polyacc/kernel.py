"""Poisson-type kernel K_alpha and the weighted Laplacian T_alpha.

    K_alpha(z) = c_alpha (1 - |z|^2)^{alpha+1} / |1 - z|^{alpha+2},
    c_alpha    = Gamma(alpha/2 + 1)^2 / Gamma(1 + alpha).

The Dirichlet problem T_alpha f = 0 in the disk, f = f* on the circle, is
solved by f(z) = (1/2pi) int K_alpha(z e^{-i tau}) f*(e^{i tau}) dtau,
evaluated here with the periodic trapezoid rule.  For alpha = 2(p-1) the
solutions are p-harmonic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridTooSmallError
from .series import _out

DEFAULT_NODES = 256
RESIDUAL_RADIUS = 0.8


def gamma_fn(s):
    """Gamma function on (0, 50]."""
    if not s > 0:
        raise DomainError(f"gamma_fn needs s > 0 (got {s})")
    if s > 50:
        raise DomainError(f"gamma_fn is supported on (0, 50] (got {s})")
    return math.gamma(s)


def c_alpha(alpha):
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1 (got {alpha})")
    # log form keeps large alpha finite
    return math.exp(2 * math.lgamma(alpha / 2 + 1) - math.lgamma(1 + alpha))


def k_alpha(z, alpha):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("K_alpha is evaluated inside the unit disk")
    a2 = np.abs(z) ** 2
    return _out(c_alpha(alpha) * (1 - a2) ** (alpha + 1) / np.abs(1 - z) ** (alpha + 2))


@dataclass(frozen=True)
class BoundaryData:
    """Boundary values theta -> f*(e^{i theta}).

    ``kind`` is one of ``const``, ``cos``, ``sin``, ``fourier`` or
    ``table``.  Fourier data maps k to the coefficient of e^{i k theta};
    a table holds values at theta_j = 2 pi j / M.
    """

    kind: str
    value: complex = 1.0
    k: int = 0
    fourier: tuple = ()
    table: tuple = ()

    @classmethod
    def const(cls, c=1.0):
        return cls("const", value=complex(c))

    @classmethod
    def cos(cls, k=1):
        return cls("cos", k=int(k))

    @classmethod
    def sin(cls, k=1):
        return cls("sin", k=int(k))

    @classmethod
    def from_fourier(cls, coeffs: dict):
        return cls("fourier", fourier=tuple(sorted((int(k), complex(v)) for k, v in coeffs.items())))

    @classmethod
    def from_table(cls, values):
        values = tuple(complex(v) for v in values)
        m = len(values)
        if m < 16 or m % 2:
            raise ValueError(f"a boundary table needs an even sample count >= 16 (got {m})")
        return cls("table", table=values)

    @classmethod
    def parse(cls, text: str):
        """Parse ``const:C``, ``cos:K``, ``sin:K`` or ``fourier:K=V,K=V``."""
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        if kind == "const":
            return cls.const(complex(arg or "1"))
        if kind in ("cos", "sin"):
            if not re.fullmatch(r"\s*\d+\s*", arg or ""):
                raise ValueError(f"boundary '{text}': expected a nonnegative integer frequency")
            return cls.cos(int(arg)) if kind == "cos" else cls.sin(int(arg))
        if kind == "fourier":
            coeffs = {}
            for item in arg.split(","):
                key, _, val = item.partition("=")
                coeffs[int(key)] = complex(val.replace(" ", ""))
            return cls.from_fourier(coeffs)
        raise ValueError(f"unknown boundary kind '{kind}' (const, cos, sin, fourier)")

    @property
    def n_samples(self):
        return len(self.table) if self.kind == "table" else None

    @property
    def is_real(self):
        if self.kind in ("cos", "sin"):
            return True
        if self.kind == "const":
            return self.value.imag == 0
        return False

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.kind == "const":
            return np.full(theta.shape, self.value)
        if self.kind == "cos":
            return np.cos(self.k * theta)
        if self.kind == "sin":
            return np.sin(self.k * theta)
        if self.kind == "fourier":
            out = np.zeros(theta.shape, dtype=complex)
            for k, c in self.fourier:
                out = out + c * np.exp(1j * k * theta)
            return out
        m = len(self.table)
        j = np.rint(theta * m / (2 * np.pi)).astype(int) % m
        if not np.allclose(theta, 2 * np.pi * np.rint(theta * m / (2 * np.pi)) / m, atol=1e-12):
            raise ValueError("tabulated boundary data is only defined at its sample angles")
        return np.asarray(self.table)[j]

    def to_json(self):
        if self.kind == "const":
            return {"kind": "const", "value": [self.value.real, self.value.imag]}
        if self.kind in ("cos", "sin"):
            return {"kind": self.kind, "k": self.k}
        if self.kind == "fourier":
            return {"kind": "fourier", "coeffs": [[k, [c.real, c.imag]] for k, c in self.fourier]}
        return {"kind": "table", "n": len(self.table)}


def node_count(z, nodes=DEFAULT_NODES):
    """Trapezoid node count for evaluation at ``z``.

    The trapezoid error for the kernel integral decays like |z|^M, so M
    is raised to the first even value with |z|^M < 1e-16 when the
    default is too small.
    """
    r = float(np.max(np.abs(z))) if np.size(z) else 0.0
    if r <= 0:
        return nodes
    need = math.ceil(math.log(1e-16) / math.log(r))
    need += need % 2
    return max(nodes, need)


def solve_dirichlet(f: BoundaryData, alpha, z, nodes=DEFAULT_NODES, adaptive=True):
    """Solution of T_alpha f = 0 with boundary values ``f`` at ``z``.

    ``nodes`` is the trapezoid node count; tabulated data fixes it to the
    table length.  With ``adaptive`` the count grows near the boundary
    (see :func:`node_count`).
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("solve_dirichlet is evaluated inside the unit disk")
    if f.kind == "table":
        m = f.n_samples
    else:
        m = node_count(z, nodes) if adaptive else nodes
    tau = 2 * np.pi * np.arange(m) / m
    fv = f(tau)
    rot = np.exp(-1j * tau)
    flat = z.reshape(-1)
    out = np.empty(flat.shape, dtype=complex)
    chunk = max(1, 2_000_000 // m)
    for s in range(0, len(flat), chunk):
        w = flat[s : s + chunk, None] * rot[None, :]
        out[s : s + chunk] = (k_alpha(w, alpha) * fv[None, :]).mean(axis=1)
    out = out.reshape(z.shape)
    if f.is_real:
        out = out.real
    return _out(out)


@dataclass(frozen=True)
class ResidualGrid:
    """Square grid of step h covering [-radius, radius]^2."""

    h: float
    radius: float = RESIDUAL_RADIUS

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("grid step must be positive")
        if not 0 < self.radius < 1:
            raise ValueError("grid radius must lie in (0, 1)")

    @property
    def n_half(self):
        return int(math.floor(self.radius / self.h + 1e-9))

    def axes(self):
        k = np.arange(-self.n_half, self.n_half + 1)
        return k * self.h

    def points(self):
        x = self.axes()
        X, Y = np.meshgrid(x, x, indexing="ij")
        return X + 1j * Y

    def interior(self, reach=1):
        """Nodes whose ``reach``-wide stencil stays inside |z| <= radius
        with a further 2h margin."""
        Z = self.points()
        mask = np.abs(Z) <= self.radius - (reach + 2) * self.h
        return mask


def _check_grid(grid, values, reach):
    n = 2 * grid.n_half + 1
    if values.shape != (n, n):
        raise ValueError(f"samples have shape {values.shape}, grid needs {(n, n)}")
    mask = grid.interior(reach)
    if mask.sum() < 9:
        raise GridTooSmallError(f"step h={grid.h} leaves too few interior nodes inside |z| <= {grid.radius}")
    return mask


def t_alpha_apply(values, alpha, grid: ResidualGrid):
    """T_alpha applied to grid samples with 5-point Laplacian and central
    first differences.  Returns (T f on interior nodes, interior mask)."""
    values = np.asarray(values)
    mask = _check_grid(grid, values, 1)
    h = grid.h
    f = values
    c = f[1:-1, 1:-1]
    lap = (f[2:, 1:-1] + f[:-2, 1:-1] + f[1:-1, 2:] + f[1:-1, :-2] - 4 * c) / h**2
    fx = (f[2:, 1:-1] - f[:-2, 1:-1]) / (2 * h)
    fy = (f[1:-1, 2:] - f[1:-1, :-2]) / (2 * h)
    Z = grid.points()[1:-1, 1:-1]
    x, y = Z.real, Z.imag
    w = 1 - (x * x + y * y)
    T = (-(alpha**2) / 4 * c + alpha / 2 * (x * fx + y * fy)) * w ** (-alpha - 1) + 0.25 * w ** (-alpha) * lap
    return T, mask[1:-1, 1:-1]


def t_alpha_residual(values, alpha, grid: ResidualGrid, eval_radius=None) -> float:
    """max |T_alpha f| over interior nodes of ``grid``.

    ``eval_radius`` restricts the maximum to |z| <= eval_radius, so that
    refinement studies compare the same nodes.
    """
    T, m = t_alpha_apply(values, alpha, grid)
    if eval_radius is not None:
        m = m & (np.abs(grid.points()[1:-1, 1:-1]) <= eval_radius + 1e-12)
    if not m.any():
        raise GridTooSmallError(f"no interior nodes within |z| <= {eval_radius}")
    return float(np.max(np.abs(T[m])))


def sample_on_grid(func, grid: ResidualGrid):
    return np.asarray(func(grid.points()))


def dirichlet_samples(f: BoundaryData, alpha, grid: ResidualGrid, nodes=DEFAULT_NODES):
    """Quadrature solution on the grid nodes inside |z| <= radius; NaN
    at the corners outside."""
    Z = grid.points()
    inside = np.abs(Z) <= grid.radius
    dtype = float if f.is_real else complex
    out = np.full(Z.shape, np.nan, dtype=dtype)
    out[inside] = solve_dirichlet(f, alpha, Z[inside], nodes=nodes)
    return out


def residual_study(f: BoundaryData, alpha, hs=(1 / 64, 1 / 128), radius=RESIDUAL_RADIUS, nodes=DEFAULT_NODES):
    """Residuals of the quadrature solution for each step in ``hs`` and
    the successive ratios residual(h) / residual(h/2).

    All residuals are taken over |z| <= radius - 3 max(hs), the interior
    of the coarsest grid; halving h keeps those nodes on the finer grids.
    """
    res = []
    inner = radius - 3 * max(hs)
    for h in hs:
        grid = ResidualGrid(h, radius)
        res.append(t_alpha_residual(dirichlet_samples(f, alpha, grid, nodes), alpha, grid, inner))
    ratios = [a / b if b > 0 else float("inf") for a, b in zip(res, res[1:])]
    return res, ratios


def bilaplacian_residual(values, grid: ResidualGrid, eval_radius=None) -> float:
    """max |Delta^2 f| over interior nodes with the 13-point stencil."""
    values = np.asarray(values)
    mask = _check_grid(grid, values, 2)
    if eval_radius is not None:
        mask = mask & (np.abs(grid.points()) <= eval_radius + 1e-12)
    f = values
    h = grid.h
    c = f[2:-2, 2:-2]
    n1 = f[3:-1, 2:-2] + f[1:-3, 2:-2] + f[2:-2, 3:-1] + f[2:-2, 1:-3]
    d1 = f[3:-1, 3:-1] + f[3:-1, 1:-3] + f[1:-3, 3:-1] + f[1:-3, 1:-3]
    n2 = f[4:, 2:-2] + f[:-4, 2:-2] + f[2:-2, 4:] + f[2:-2, :-4]
    b = (20 * c - 8 * n1 + 2 * d1 + n2) / h**4
    return float(np.max(np.abs(b[mask[2:-2, 2:-2]])))


def kernel_mean(alpha, r, nodes=DEFAULT_NODES):
    """(1/2pi) int K_alpha(r e^{i theta}) d theta by the trapezoid rule."""
    m = node_count(r, nodes)
    th = 2 * np.pi * np.arange(m) / m
    return float(np.mean(k_alpha(r * np.exp(1j * th), alpha)))


def boundary_gap(f: BoundaryData, alpha, r, n_theta=256, nodes=DEFAULT_NODES):
    """max over theta of |f(r e^{i theta}) - f*(e^{i theta})|."""
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    vals = solve_dirichlet(f, alpha, r * np.exp(1j * th), nodes=nodes)
    return float(np.max(np.abs(vals - f(th))))
