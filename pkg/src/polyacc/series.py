"""Analytic building blocks on the unit disk.

An :class:`AnalyticSpec` is the sum of closed-form atoms (monomials, disk
automorphisms, the half-plane map) and a finite power series.  Besides
values and derivatives, every spec supports the sine-kernel transform

    S_t[f](z) = sum_n c_n * sin(n t)/sin(t) * z**n

and its cosine companion ``C_t[f](z) = sum_n c_n cos(n t) z**n``.  Atoms
carry closed forms for both, so infinite-series examples need no
truncation.

All evaluators accept scalars or numpy arrays and broadcast ``z`` against
``t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, SchemaError

SMALL_T = 1e-7

MONOMIAL = "monomial"
MOEBIUS = "moebius"
HALFPLANE = "halfplane"
_KINDS = (MONOMIAL, MOEBIUS, HALFPLANE)


def _check_disk(z):
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("point outside the open unit disk")


def _out(x):
    # 0-d arrays back to Python scalars
    if isinstance(x, np.ndarray) and x.ndim == 0:
        return x[()]
    return x


def dirichlet_ratio(n, t):
    """sin(n t) / sin(t), with the limit value ``n`` for t < 1e-7.

    Near the other zeros of sin(t) (t close to k pi) the limit
    n cos(n t) / cos(t) is used instead of the roundoff-dominated quotient.
    Odd in ``n`` by construction and exactly zero at ``n = 0``.
    """
    n_arr = np.asarray(n)
    t_arr = np.asarray(t, dtype=float)
    sign = np.sign(n_arr)
    m = np.abs(n_arr)
    st = np.sin(t_arr)
    small = np.abs(t_arr) < SMALL_T
    near = ~small & (np.abs(st) < SMALL_T)
    denom = np.where(small | near, 1.0, st)
    ratio = sign * (np.sin(m * t_arr) / denom)
    ratio = np.where(near, n_arr * np.cos(m * t_arr) / np.cos(t_arr), ratio)
    res = np.where(small, n_arr.astype(float) + 0.0 * t_arr, ratio)
    return _out(res)


@dataclass(frozen=True)
class AnalyticAtom:
    """One closed-form term ``weight * f(z)``.

    ``kind`` is one of ``"monomial"`` (f = z**n), ``"moebius"``
    (f = (z + c)/(1 + conj(c) z), |c| < 1) or ``"halfplane"``
    (f = (1 + z)/(1 - z)).
    """

    kind: str
    weight: complex = 1.0
    n: int = 0
    c: complex = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        object.__setattr__(self, "weight", complex(self.weight))
        object.__setattr__(self, "c", complex(self.c))
        if self.kind == MONOMIAL:
            if int(self.n) != self.n or self.n < 0:
                raise ValueError("monomial degree must be a non-negative integer")
            object.__setattr__(self, "n", int(self.n))
        if self.kind == MOEBIUS and not abs(self.c) < 1.0:
            raise ValueError("Moebius parameter must satisfy |c| < 1")

    @classmethod
    def monomial(cls, n, weight=1.0):
        return cls(MONOMIAL, weight, n=n)

    @classmethod
    def moebius(cls, c, weight=1.0):
        return cls(MOEBIUS, weight, c=c)

    @classmethod
    def halfplane(cls, weight=1.0):
        return cls(HALFPLANE, weight)

    def value(self, z):
        w = self.weight
        if self.kind == MONOMIAL:
            return w * z**self.n
        if self.kind == MOEBIUS:
            c = self.c
            return w * (z + c) / (1 + np.conj(c) * z)
        return w * (1 + z) / (1 - z)

    def deriv(self, z):
        w = self.weight
        if self.kind == MONOMIAL:
            if self.n == 0:
                return 0.0 * z
            return w * self.n * z ** (self.n - 1)
        if self.kind == MOEBIUS:
            c = self.c
            return w * (1 - abs(c) ** 2) / (1 + np.conj(c) * z) ** 2
        return 2 * w / (1 - z) ** 2

    def sine_transform(self, z, t):
        w = self.weight
        ct = np.cos(t)
        if self.kind == MONOMIAL:
            return w * dirichlet_ratio(self.n, t) * z**self.n
        if self.kind == MOEBIUS:
            cb = np.conj(self.c)
            return w * (1 - abs(self.c) ** 2) * z / (1 + 2 * cb * z * ct + cb * cb * z * z)
        return 2 * w * z / (1 - 2 * z * ct + z * z)

    def cosine_transform(self, z, t):
        w = self.weight
        if self.kind == MONOMIAL:
            return w * np.cos(self.n * np.asarray(t)) * z**self.n
        if self.kind == MOEBIUS:
            e = np.exp(1j * np.asarray(t))
            return 0.5 * (self.value(z * e) + self.value(z / e))
        ct = np.cos(t)
        return w * (1 - z * z) / (1 - 2 * z * ct + z * z)

    def taylor(self, N):
        """Coefficients c_0..c_N of the Maclaurin expansion."""
        out = np.zeros(N + 1, dtype=complex)
        w = self.weight
        if self.kind == MONOMIAL:
            if self.n <= N:
                out[self.n] = w
        elif self.kind == MOEBIUS:
            c = self.c
            out[0] = w * c
            k = np.arange(1, N + 1)
            out[1:] = w * (1 - abs(c) ** 2) * (-np.conj(c)) ** (k - 1)
        else:
            out[0] = w
            out[1:] = 2 * w
        return out

    def to_json(self):
        d = {"kind": self.kind}
        if self.kind == MONOMIAL:
            d["n"] = self.n
        if self.kind == MOEBIUS:
            d["c"] = [self.c.real, self.c.imag]
        d["w"] = [self.weight.real, self.weight.imag]
        return d


@dataclass(frozen=True)
class AnalyticSpec:
    """Analytic function = sum of ``atoms`` plus polynomial ``series``.

    ``series[n]`` is the coefficient of z**n.
    """

    atoms: tuple = ()
    series: tuple = field(default=(0j,))

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        coeffs = tuple(complex(c) for c in self.series) or (0j,)
        object.__setattr__(self, "series", coeffs)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[complex]):
        return cls((), tuple(coeffs))

    @classmethod
    def monomial(cls, n, weight=1.0):
        return cls((AnalyticAtom.monomial(n, weight),))

    @property
    def is_zero(self):
        return not self.atoms and not any(self.series)

    def __add__(self, other):
        a, b = list(self.series), list(other.series)
        size = max(len(a), len(b))
        a += [0j] * (size - len(a))
        b += [0j] * (size - len(b))
        return AnalyticSpec(self.atoms + other.atoms, tuple(x + y for x, y in zip(a, b)))

    def _poly(self):
        return np.asarray(self.series, dtype=complex)

    def value(self, z):
        z = np.asarray(z, dtype=complex)
        _check_disk(z)
        out = np.polyval(self._poly()[::-1], z)
        for atom in self.atoms:
            out = out + atom.value(z)
        return _out(out)

    __call__ = value

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        _check_disk(z)
        c = self._poly()
        n = np.arange(len(c))
        dc = (c * n)[1:]
        out = np.polyval(dc[::-1], z) if len(dc) else 0.0 * z
        for atom in self.atoms:
            out = out + atom.deriv(z)
        return _out(out)

    def _series_transform(self, z, t, fn):
        out = 0.0 * z + 0.0 * np.asarray(t)
        zn = np.ones_like(z)
        for n, c in enumerate(self.series):
            if c != 0:
                out = out + c * fn(n, t) * zn
            zn = zn * z
        return out

    def sine_transform(self, z, t):
        z = np.asarray(z, dtype=complex)
        _check_disk(z)
        out = self._series_transform(z, t, dirichlet_ratio)
        for atom in self.atoms:
            out = out + atom.sine_transform(z, t)
        return _out(out)

    def cosine_transform(self, z, t):
        z = np.asarray(z, dtype=complex)
        _check_disk(z)
        out = self._series_transform(z, t, lambda n, tt: np.cos(n * np.asarray(tt)))
        for atom in self.atoms:
            out = out + atom.cosine_transform(z, t)
        return _out(out)

    def shifted_sine_transform(self, z, t, k):
        """sum_n c_n * sin((n - k) t)/sin(t) * z**n.

        Uses sin((n-k)t) = sin(nt)cos(kt) - cos(nt)sin(kt), which stays
        well conditioned as t -> 0.
        """
        if k == 0:
            return self.sine_transform(z, t)
        s = self.sine_transform(z, t)
        c = self.cosine_transform(z, t)
        return _out(np.cos(k * np.asarray(t)) * s - dirichlet_ratio(k, t) * c)

    def taylor_coefficients(self, N):
        out = np.zeros(N + 1, dtype=complex)
        s = self._poly()[: N + 1]
        out[: len(s)] += s
        for atom in self.atoms:
            out += atom.taylor(N)
        return out

    def to_json(self):
        return {
            "atoms": [a.to_json() for a in self.atoms],
            "series": [[c.real, c.imag] for c in self.series],
        }

    @classmethod
    def from_json(cls, data, path="$"):
        if not isinstance(data, dict):
            raise SchemaError(path, "expected an object")
        atoms = []
        for i, a in enumerate(data.get("atoms", [])):
            p = f"{path}.atoms[{i}]"
            kind = a.get("kind")
            w = _complex_from_json(a.get("w", [1.0, 0.0]), p + ".w")
            try:
                if kind == MONOMIAL:
                    atoms.append(AnalyticAtom.monomial(a["n"], w))
                elif kind == MOEBIUS:
                    atoms.append(AnalyticAtom.moebius(_complex_from_json(a["c"], p + ".c"), w))
                elif kind == HALFPLANE:
                    atoms.append(AnalyticAtom.halfplane(w))
                else:
                    raise SchemaError(p + ".kind", f"unknown atom kind {kind!r}")
            except (KeyError, ValueError) as exc:
                if isinstance(exc, SchemaError):
                    raise
                raise SchemaError(p, str(exc)) from None
        series = [
            _complex_from_json(c, f"{path}.series[{i}]")
            for i, c in enumerate(data.get("series", [[0.0, 0.0]]))
        ]
        return cls(tuple(atoms), tuple(series))


def _complex_from_json(v, path):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise SchemaError(path, "expected [re, im]")


def eval_analytic(spec: AnalyticSpec, z):
    return spec.value(z)


def deriv_analytic(spec: AnalyticSpec, z):
    return spec.deriv(z)


def sine_kernel_transform(spec: AnalyticSpec, z, t):
    return spec.sine_transform(z, t)
