"""Property-based checks of the numerical invariants."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyacc.accessibility import margin_fields
from polyacc.jsonio import dumps
from polyacc.polyharmonic import HarmonicLayer, PolyharmonicSpec, eval_ph, fd_jet, wirtinger_jet
from polyacc.series import AnalyticAtom, AnalyticSpec, dirichlet_ratio
from polyacc.univalence import criterion_value_ph

finite = st.floats(-1, 1, allow_nan=False)
cplx = st.builds(complex, finite, finite)
coeffs = st.lists(cplx, min_size=1, max_size=5)
unit = st.floats(0.05, 0.9)
angle = st.floats(0, 2 * math.pi)
ts = st.floats(1e-6, math.pi / 2)


def point(r, th):
    return complex(r * math.cos(th), r * math.sin(th))


@st.composite
def atoms(draw):
    kind = draw(st.sampled_from(["monomial", "moebius", "halfplane"]))
    w = draw(cplx)
    if kind == "monomial":
        return AnalyticAtom.monomial(draw(st.integers(0, 8)), w)
    if kind == "moebius":
        c = point(draw(st.floats(0, 0.5)), draw(angle))
        return AnalyticAtom.moebius(c, w)
    return AnalyticAtom.halfplane(w)


@st.composite
def analytic(draw):
    return AnalyticSpec(tuple(draw(st.lists(atoms(), max_size=2))), tuple(draw(coeffs)))


@st.composite
def polyharmonic(draw, p=None):
    p = p or draw(st.integers(1, 3))
    return PolyharmonicSpec(p, tuple(HarmonicLayer(draw(analytic()), draw(analytic())) for _ in range(p)))


@given(st.integers(-60, 60), st.floats(0, math.pi / 2))
def test_dirichlet_ratio_bounded(n, t):
    assert abs(dirichlet_ratio(n, t)) <= abs(n) + 1e-12


@given(st.integers(1, 40), st.floats(1e-7, math.pi / 2))
def test_dirichlet_ratio_is_chebyshev_sum(n, t):
    # sin(nt)/sin(t) = sum_{j} e^{i (n-1-2j) t}
    direct = sum(math.cos((n - 1 - 2 * j) * t) for j in range(n))
    assert dirichlet_ratio(n, t) == pytest.approx(direct, abs=1e-9 * n)


@settings(max_examples=60, deadline=None)
@given(polyharmonic(), unit, angle)
def test_jet_matches_fd(spec, r, th):
    z = point(r, th)
    jet = wirtinger_jet(spec, z)
    fd = fd_jet(lambda w: eval_ph(spec, w), z)
    scale = max(1.0, abs(jet.dz), abs(jet.dzbar), abs(jet.value))
    assert abs(jet.dz - fd.dz) <= 1e-5 * scale
    assert abs(jet.dzbar - fd.dzbar) <= 1e-5 * scale


@settings(max_examples=60, deadline=None)
@given(polyharmonic(), unit, angle, ts)
def test_criterion_is_linear(spec, r, th, t):
    z = point(r, th)
    doubled = PolyharmonicSpec(
        spec.p,
        tuple(HarmonicLayer(l.h + l.h, l.g + l.g) for l in spec.layers),
    )
    a = criterion_value_ph(spec, z, t)
    assert criterion_value_ph(doubled, z, t) == pytest.approx(2 * a, rel=1e-12, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(polyharmonic(), unit, angle)
def test_L_is_hypot_and_margin_monotone(spec, r, th):
    lhs, A, B, L, phi = (np.asarray(v).item() for v in margin_fields(spec, np.array([point(r, th)])))
    assert L >= 0
    assert L**2 == pytest.approx(A**2 + B**2, rel=1e-12, abs=1e-12)
    margins = [lhs - math.sin(a * math.pi / 2) * abs(phi) * L for a in np.linspace(0, 1, 7)]
    assert all(b <= a for a, b in zip(margins, margins[1:]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(cplx, cplx), min_size=1, max_size=3), st.floats(0.1, 10), unit, angle)
def test_margin_sign_scale_invariant(pairs, c, r, th):
    def spec(scale):
        layers = tuple(
            HarmonicLayer(AnalyticSpec.from_coeffs([0, scale * (1 + a)]), AnalyticSpec.from_coeffs([0, scale * b]))
            for a, b in pairs
        )
        return PolyharmonicSpec(len(layers), layers)

    z = np.array([point(r, th)])
    f1, f2 = margin_fields(spec(1.0), z), margin_fields(spec(c), z)
    for alpha in (0.0, 0.5):
        s = math.sin(alpha * math.pi / 2)
        m1 = f1[0] - s * np.abs(f1[4]) * f1[3]
        m2 = f2[0] - s * np.abs(f2[4]) * f2[3]
        if abs(m1[0]) > 1e-12:
            assert np.sign(m1[0]) == np.sign(m2[0])


@given(st.lists(st.one_of(st.floats(allow_nan=True, allow_infinity=True), cplx), max_size=6))
def test_json_output_is_strict_and_round_trips(values):
    text = dumps({"v": values})
    back = json.loads(text)["v"]
    for v, b in zip(values, back):
        if isinstance(v, complex):
            assert b == [v.real, v.imag]
        elif math.isnan(v):
            assert b is None
        elif math.isinf(v):
            assert b in ("inf", "-inf")
        else:
            assert b == v
