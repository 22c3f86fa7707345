import numpy as np
import pytest

from polyacc.comparison import halfplane_threshold_form, lavrentiev_lhs, lavrentiev_profile, split_biharmonic
from polyacc.errors import DegenerateRatioError, WrongOrderError
from polyacc.examples import halfplane_family, moebius_family, shear_family
from polyacc.polyharmonic import HarmonicLayer
from polyacc.series import AnalyticSpec

Z = AnalyticSpec.monomial(1)


def test_shear_family_value():
    (v,) = lavrentiev_profile(shear_family(2, 2, 0.5), 0.99)
    assert v == pytest.approx(298, abs=1e-9)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_shear_family_closed_form(n):
    spec = shear_family(2, n, 1 / n)
    for z in (0.5, 0.7j, -0.3 + 0.6j):
        r = abs(z)
        want = (2 * r + 1) / (1 - r ** (n - 1))
        assert lavrentiev_profile(spec, z)[0] == pytest.approx(want, rel=1e-12)


def test_moebius_family_reduced_form():
    a, b = 4.0, 1.0
    spec = moebius_family(2, a, b, 0)
    for z in (0.2, -0.5j, 0.9):
        assert lavrentiev_profile(spec, z)[0] == pytest.approx((2 * abs(z) + 1) / (a - b), rel=1e-12)


def test_halfplane_family_values():
    spec = halfplane_family(2, 0.5)
    G, K = split_biharmonic(spec)
    # |1 - z|^2 (2|z| + 1) / 4 = 1.999^2 * 2.998 / 4
    want = 1.999**2 * 2.998 / 4
    assert lavrentiev_lhs(G, K, -0.999) == pytest.approx(want, rel=1e-12)
    assert halfplane_threshold_form(-0.999) > 4
    assert halfplane_threshold_form(-0.999) == pytest.approx(4 * want, rel=1e-12)
    # the threshold form tends to 12 at z = -1 and vanishes at z = 1
    xs = np.linspace(-0.999, 0.999, 9)
    vals = [halfplane_threshold_form(x) for x in xs]
    assert vals[0] > 11.9 and vals[-1] < 1e-5


def test_degenerate_ratio():
    fold = HarmonicLayer(Z, Z)
    with pytest.raises(DegenerateRatioError):
        lavrentiev_lhs(HarmonicLayer(Z), fold, 0.3)


def test_split_needs_biharmonic():
    with pytest.raises(WrongOrderError):
        split_biharmonic(shear_family(3, 2, 0.5))
