"""p-harmonic and p-analytic functions on the unit disk.

A p-harmonic function is stored layer by layer,

    F(z) = sum_{k=1..p} |z|**(2(k-1)) * (h_k(z) + conj(g_k(z))),

where list position ``k`` (1-based) carries the weight |z|**(2(k-1)).  A
p-analytic function is ``F(z) = sum_{k=0..p-1} conj(z)**k * a_k(z)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SchemaError, SingularInputError
from .series import MONOMIAL, AnalyticSpec, _check_disk, _out


@dataclass(frozen=True)
class HarmonicLayer:
    h: AnalyticSpec
    g: AnalyticSpec = AnalyticSpec()

    @property
    def normalized(self):
        return self.h.value(0.0) == 0 and self.g.value(0.0) == 0

    def value(self, z):
        return self.h.value(z) + np.conj(self.g.value(z))

    def to_json(self):
        return {"h": self.h.to_json(), "g": self.g.to_json()}


@dataclass(frozen=True)
class PolyharmonicSpec:
    p: int
    layers: tuple

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if self.p < 1 or len(self.layers) != self.p:
            raise ValueError(f"expected {self.p} layers, got {len(self.layers)}")

    @classmethod
    def from_layers(cls, *layers):
        return cls(len(layers), layers)

    @property
    def vanishes_at_origin(self):
        return abs(eval_ph(self, 0.0)) == 0.0

    def __call__(self, z):
        return eval_ph(self, z)

    def to_json(self):
        return {"p": self.p, "layers": [lay.to_json() for lay in self.layers]}

    @classmethod
    def from_json(cls, data, path="$"):
        try:
            p = int(data["p"])
            raw = data["layers"]
        except (KeyError, TypeError, ValueError):
            raise SchemaError(path, "expected {p, layers}") from None
        layers = []
        for i, lay in enumerate(raw):
            lp = f"{path}.layers[{i}]"
            h = AnalyticSpec.from_json(lay.get("h", {}), lp + ".h")
            g = AnalyticSpec.from_json(lay.get("g", {}), lp + ".g")
            layers.append(HarmonicLayer(h, g))
        if len(layers) != p:
            raise SchemaError(path + ".layers", f"expected {p} layers, got {len(layers)}")
        return cls(p, tuple(layers))


@dataclass(frozen=True)
class PolyanalyticSpec:
    p: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.p < 1 or len(self.coeffs) != self.p:
            raise ValueError(f"expected {self.p} coefficient functions, got {len(self.coeffs)}")

    def __call__(self, z):
        return eval_pa(self, z)

    def to_json(self):
        return {"p": self.p, "coeffs": [a.to_json() for a in self.coeffs]}

    @classmethod
    def from_json(cls, data, path="$"):
        try:
            p = int(data["p"])
            raw = data["coeffs"]
        except (KeyError, TypeError, ValueError):
            raise SchemaError(path, "expected {p, coeffs}") from None
        coeffs = tuple(AnalyticSpec.from_json(a, f"{path}.coeffs[{i}]") for i, a in enumerate(raw))
        if len(coeffs) != p:
            raise SchemaError(path + ".coeffs", f"expected {p} entries, got {len(coeffs)}")
        return cls(p, coeffs)


@dataclass(frozen=True)
class WirtingerJet:
    value: complex
    dz: complex
    dzbar: complex

    @property
    def jacobian(self):
        return _out(np.abs(self.dz) ** 2 - np.abs(self.dzbar) ** 2)


def _weights(z, p):
    # |z|^{2(k-1)} for k = 1..p, with 0**0 = 1
    r2 = np.abs(z) ** 2
    return [r2**j if j else np.ones_like(r2) for j in range(p)]


def eval_ph(spec: PolyharmonicSpec, z):
    z = np.asarray(z, dtype=complex)
    _check_disk(z)
    out = np.zeros_like(z)
    for wk, layer in zip(_weights(z, spec.p), spec.layers):
        out = out + wk * layer.value(z)
    return _out(out)


def wirtinger_jet(spec: PolyharmonicSpec, z) -> WirtingerJet:
    """Value, d/dz and d/dzbar of a p-harmonic function (exact)."""
    z = np.asarray(z, dtype=complex)
    _check_disk(z)
    r2 = np.abs(z) ** 2
    zb = np.conj(z)
    val = np.zeros_like(z)
    dz = np.zeros_like(z)
    dzb = np.zeros_like(z)
    for j, layer in enumerate(spec.layers):
        wk = r2**j if j else np.ones_like(r2)
        fk = layer.value(z)
        val = val + wk * fk
        dz = dz + wk * layer.h.deriv(z)
        dzb = dzb + wk * np.conj(layer.g.deriv(z))
        if j:
            # d/dz (z^j zbar^j) = j |z|^{2(j-1)} zbar
            dw = j * (r2 ** (j - 1) if j > 1 else 1.0)
            dz = dz + dw * zb * fk
            dzb = dzb + dw * z * fk
    return WirtingerJet(_out(val), _out(dz), _out(dzb))


def jacobian(spec: PolyharmonicSpec, z):
    return wirtinger_jet(spec, z).jacobian


def eval_pa(spec: PolyanalyticSpec, z):
    z = np.asarray(z, dtype=complex)
    _check_disk(z)
    zb = np.conj(z)
    out = np.zeros_like(z)
    for k, a in enumerate(spec.coeffs):
        out = out + zb**k * a.value(z)
    return _out(out)


def wirtinger_jet_pa(spec: PolyanalyticSpec, z) -> WirtingerJet:
    z = np.asarray(z, dtype=complex)
    _check_disk(z)
    zb = np.conj(z)
    val = np.zeros_like(z)
    dz = np.zeros_like(z)
    dzb = np.zeros_like(z)
    for k, a in enumerate(spec.coeffs):
        ak = a.value(z)
        val = val + zb**k * ak
        dz = dz + zb**k * a.deriv(z)
        if k:
            dzb = dzb + k * zb ** (k - 1) * ak
    return WirtingerJet(_out(val), _out(dz), _out(dzb))


def jacobian_trichotomy(F1: AnalyticSpec, p: int, z, tol=1e-12):
    """Sign of the Jacobian of |z|^{2(p-1)} F1 from |z F1'/F1 + p - 1| vs p - 1.

    Returns ``"neg"``, ``"zero"`` or ``"pos"``; the zero band is
    ``tol * (p - 1)``.
    """
    if p < 2:
        raise ValueError("trichotomy needs p >= 2")
    if z == 0:
        raise SingularInputError("z = 0 is excluded")
    f = F1.value(z)
    if f == 0:
        raise SingularInputError("F1 vanishes at z")
    d = abs(z * F1.deriv(z) / f + (p - 1)) - (p - 1)
    if abs(d) <= tol * (p - 1):
        return "zero"
    return "pos" if d > 0 else "neg"


def weighted_analytic(F1: AnalyticSpec, p: int) -> PolyharmonicSpec:
    """The spec of |z|^{2(p-1)} F1(z)."""
    zero = HarmonicLayer(AnalyticSpec())
    return PolyharmonicSpec(p, (zero,) * (p - 1) + (HarmonicLayer(F1),))


def polyanalytic_to_polyharmonic(spec: PolyanalyticSpec) -> PolyharmonicSpec:
    """Rewrite conj(z)^k z^n terms as |z|^{2m} times z^a or conj(z)^a.

    Only monomial coefficient data (series coefficients and monomial
    atoms) can be converted; other atoms raise ``ValueError``.
    """
    h_terms = [dict() for _ in range(spec.p)]
    g_terms = [dict() for _ in range(spec.p)]

    def put(k, n, c):
        if n >= k:
            d = h_terms[k]
            d[n - k] = d.get(n - k, 0j) + c
        else:
            d = g_terms[n]
            d[k - n] = d.get(k - n, 0j) + np.conj(c)

    for k, a in enumerate(spec.coeffs):
        for atom in a.atoms:
            if atom.kind != MONOMIAL:
                raise ValueError("only monomial coefficient functions can be converted")
            put(k, atom.n, atom.weight)
        for n, c in enumerate(a.series):
            if c != 0:
                put(k, n, c)

    def to_spec(d):
        if not d:
            return AnalyticSpec()
        coeffs = np.zeros(max(d) + 1, dtype=complex)
        for n, c in d.items():
            coeffs[n] += c
        return AnalyticSpec.from_coeffs(coeffs)

    layers = tuple(HarmonicLayer(to_spec(h), to_spec(g)) for h, g in zip(h_terms, g_terms))
    return PolyharmonicSpec(spec.p, layers)


def fd_jet(func, z, h=1e-5) -> WirtingerJet:
    """Wirtinger derivatives by 4-point central differences in x and y."""
    z = complex(z)
    if abs(z) + 2 * h >= 1:
        raise DomainError("stencil leaves the disk")

    def d(step):
        return (-func(z + 2 * step) + 8 * func(z + step) - 8 * func(z - step) + func(z - 2 * step)) / (
            12 * h
        )

    fx = d(h)
    fy = d(1j * h)
    return WirtingerJet(complex(func(z)), 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy))
