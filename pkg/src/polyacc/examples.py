"""Named example families and control functions.

Each builder validates its parameters and raises
:class:`~polyacc.errors.ParameterError` naming the violated inequality.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .polyharmonic import HarmonicLayer, PolyanalyticSpec, PolyharmonicSpec, weighted_analytic
from .series import AnalyticAtom, AnalyticSpec

Z = AnalyticSpec.monomial(1)
ZERO = AnalyticSpec()


def _layers(p, first, last):
    """Layers with ``first`` at weight 1 and ``last`` at |z|^{2(p-1)}."""
    empty = HarmonicLayer(ZERO)
    mid = (empty,) * (p - 2)
    return PolyharmonicSpec(p, (first,) + mid + (last,))


def _need_p(name, p):
    if int(p) != p or p < 2:
        raise ParameterError(name, "integer p >= 2", p)


def shear_family(p, n, lam):
    """|z|^{2(p-1)} z + z + lam * conj(z)^n  (|lam| <= 1/n, n >= 2)."""
    _need_p("eg2", p)
    if int(n) != n or n < 2:
        raise ParameterError("eg2", "integer n >= 2", n)
    if abs(lam) > 1.0 / n:
        raise ParameterError("eg2", f"|lambda| <= 1/n = {1.0 / n}", abs(lam))
    g = AnalyticSpec.monomial(int(n), np.conj(lam))
    return _layers(int(p), HarmonicLayer(Z, g), HarmonicLayer(Z))


def moebius_family(p, a, b, c):
    """|z|^{2(p-1)} z + a (z + c)/(1 + conj(c) z) + b conj(z)."""
    _need_p("eg1", p)
    a, b, c = complex(a), complex(b), complex(c)
    if not abs(c) < 1:
        raise ParameterError("eg1", "|c| < 1", abs(c))
    if abs(b) == abs(a) * (1 - abs(c) ** 2):
        raise ParameterError("eg1", "|b| != |a|(1 - |c|^2)", abs(b))
    bound = (1 + abs(b)) * (1 + abs(c)) / (1 - abs(c))
    if abs(a) < bound:
        raise ParameterError("eg1", f"|a| >= (1 + |b|)(1 + |c|)/(1 - |c|) = {bound}", abs(a))
    h = AnalyticSpec((AnalyticAtom.moebius(c, a),))
    g = AnalyticSpec.monomial(1, np.conj(b))
    return _layers(int(p), HarmonicLayer(h, g), HarmonicLayer(Z))


def halfplane_family(p, mu):
    """|z|^{2(p-1)} mu conj(z) + (1 + z)/(1 - z)  (0 < |mu| <= 1/2)."""
    _need_p("eg3", p)
    if not 0 < abs(mu) <= 0.5:
        raise ParameterError("eg3", "0 < |mu| <= 1/2", abs(mu))
    k = HarmonicLayer(AnalyticSpec((AnalyticAtom.halfplane(),)))
    g = HarmonicLayer(ZERO, AnalyticSpec.monomial(1, np.conj(mu)))
    return _layers(int(p), k, g)


def weighted_starlike(p, n, lam):
    """|z|^{2(p-1)} (z + lam z^n)  (0 < |lam| <= 1/n)."""
    if int(p) != p or p < 1:
        raise ParameterError("weighted-starlike", "integer p >= 1", p)
    if int(n) != n or n < 2:
        raise ParameterError("weighted-starlike", "integer n >= 2", n)
    if not 0 < abs(lam) <= 1.0 / n:
        raise ParameterError("weighted-starlike", f"0 < |lambda| <= 1/n = {1.0 / n}", abs(lam))
    coeffs = np.zeros(int(n) + 1, dtype=complex)
    coeffs[1] = 1
    coeffs[int(n)] = lam
    return weighted_analytic(AnalyticSpec.from_coeffs(coeffs), int(p))


def shifted_identity(p, lam):
    """z - lam |z|^{2(p-1)}  (0 < |lam| < 1/(2(p-1)))."""
    _need_p("shifted-identity", p)
    bound = 1.0 / (2 * (p - 1))
    if not 0 < abs(lam) < bound:
        raise ParameterError("shifted-identity", f"0 < |lambda| < 1/(2(p-1)) = {bound}", abs(lam))
    const = HarmonicLayer(AnalyticSpec.from_coeffs([-lam]))
    return _layers(int(p), HarmonicLayer(Z), const)


def identity():
    return PolyharmonicSpec(1, (HarmonicLayer(Z),))


def fold():
    """z + conj(z): collapses the disk onto a segment."""
    return PolyharmonicSpec(1, (HarmonicLayer(Z, Z),))


def square():
    return PolyharmonicSpec(1, (HarmonicLayer(AnalyticSpec.monomial(2)),))


def cubic_radial():
    """|z|^2 z, univalent although its Jacobian vanishes at 0."""
    return weighted_analytic(Z, 2)


def one_minus_modulus_squared():
    """1 - |z|^2 as a bianalytic function: a_0 = 1, a_1 = -z."""
    return PolyanalyticSpec(2, (AnalyticSpec.from_coeffs([1.0]), AnalyticSpec.monomial(1, -1.0)))


def koebe(N=60):
    """Truncated Koebe function z/(1-z)^2 = sum n z^n, n <= N."""
    return AnalyticSpec.from_coeffs(np.arange(N + 1, dtype=float))


BUILDERS = {
    "eg1": moebius_family,
    "eg2": shear_family,
    "eg3": halfplane_family,
    "weighted-starlike": weighted_starlike,
    "shifted-identity": shifted_identity,
    "identity": identity,
    "fold": fold,
    "square": square,
    "cubic-radial": cubic_radial,
}


def make_example(name, **params) -> PolyharmonicSpec:
    """Build a named p-harmonic example.

    >>> make_example("eg2", p=2, n=2, lam=0.5).p
    2
    """
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown example {name!r}; choose from {sorted(BUILDERS)}") from None
    return builder(**params)
