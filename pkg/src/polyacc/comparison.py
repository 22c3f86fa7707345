"""Pointwise Lavrentiev-type sufficient condition for biharmonic maps.

For F = |z|^2 G + K with harmonic G and K, the comparison condition asks

    (2|G| + |G_z| + |G_zbar|) / (|K_z| - |K_zbar|) < 1/M

everywhere, M being the Lavrentiev constant of K(D).  :func:`lavrentiev_lhs`
evaluates the left side at a point.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateRatioError, WrongOrderError
from .polyharmonic import HarmonicLayer, PolyharmonicSpec


def _jet(layer: HarmonicLayer, z):
    return layer.value(z), layer.h.deriv(z), np.conj(layer.g.deriv(z))


def lavrentiev_lhs(G: HarmonicLayer, K: HarmonicLayer, z) -> float:
    z = complex(z)
    g, gz, gzb = (complex(v) for v in _jet(G, z))
    _, kz, kzb = (complex(v) for v in _jet(K, z))
    den = abs(kz) - abs(kzb)
    if not den > 0:
        raise DegenerateRatioError(f"|K_z| <= |K_zbar| at z = {z!r}; K is not sense-preserving there")
    return (2 * abs(g) + abs(gz) + abs(gzb)) / den


def split_biharmonic(spec: PolyharmonicSpec):
    """(G, K) with F = |z|^2 G + K."""
    if spec.p != 2:
        raise WrongOrderError(f"the comparison needs p = 2, got p = {spec.p}")
    return spec.layers[1], spec.layers[0]


def lavrentiev_profile(spec: PolyharmonicSpec, zs):
    G, K = split_biharmonic(spec)
    return [lavrentiev_lhs(G, K, z) for z in np.atleast_1d(zs)]


def halfplane_threshold_form(z) -> float:
    """|1 - z|^2 (2|z| + 1), compared with 4 in the half-plane example."""
    z = complex(z)
    return abs(1 - z) ** 2 * (2 * abs(z) + 1)
