import math

import numpy as np
import pytest

from polyacc.errors import DomainError, ParameterError, SingularInputError
from polyacc.examples import (
    cubic_radial,
    halfplane_family,
    make_example,
    moebius_family,
    one_minus_modulus_squared,
    shear_family,
    shifted_identity,
)
from polyacc.polyharmonic import (
    HarmonicLayer,
    PolyanalyticSpec,
    PolyharmonicSpec,
    eval_pa,
    eval_ph,
    fd_jet,
    jacobian,
    jacobian_trichotomy,
    polyanalytic_to_polyharmonic,
    weighted_analytic,
    wirtinger_jet,
    wirtinger_jet_pa,
)
from polyacc.series import AnalyticAtom, AnalyticSpec

Z = AnalyticSpec.monomial(1)


def disk(rng, n, r=0.9):
    return r * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def random_spec(rng, p):
    def f():
        c = 0.4 * (rng.standard_normal(4) + 1j * rng.standard_normal(4))
        atoms = (AnalyticAtom.moebius(0.5 * rng.random() * np.exp(2j * np.pi * rng.random()), rng.standard_normal()),)
        return AnalyticSpec(atoms, tuple(c))

    return PolyharmonicSpec(p, tuple(HarmonicLayer(f(), f()) for _ in range(p)))


def test_eval_examples():
    assert eval_ph(shear_family(2, 2, 0.5), 0.0) == 0
    assert eval_ph(halfplane_family(2, 0.5), 0.0) == 1
    assert eval_ph(cubic_radial(), 0.5) == pytest.approx(0.125)


def test_eval_is_layer_sum_bit_for_bit():
    rng = np.random.default_rng(1)
    spec = random_spec(rng, 3)
    z = disk(rng, 20)
    r2 = np.abs(z) ** 2
    direct = spec.layers[0].value(z)
    direct = direct + r2 * spec.layers[1].value(z)
    direct = direct + r2**2 * spec.layers[2].value(z)
    assert np.array_equal(eval_ph(spec, z), direct)


def test_jet_matches_finite_differences():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(500):
        spec = random_spec(rng, int(rng.integers(1, 4)))
        z = complex(disk(rng, 1)[0])
        jet = wirtinger_jet(spec, z)
        fd = fd_jet(lambda w: eval_ph(spec, w), z)
        scale = max(1.0, abs(jet.dz), abs(jet.dzbar))
        worst = max(worst, abs(jet.dz - fd.dz) / scale, abs(jet.dzbar - fd.dzbar) / scale)
    assert worst <= 1e-6


def test_polyanalytic_jet_matches_finite_differences():
    rng = np.random.default_rng(3)
    for _ in range(50):
        coeffs = tuple(AnalyticSpec.from_coeffs(rng.standard_normal(4) + 1j * rng.standard_normal(4)) for _ in range(3))
        spec = PolyanalyticSpec(3, coeffs)
        z = complex(disk(rng, 1)[0])
        jet = wirtinger_jet_pa(spec, z)
        fd = fd_jet(lambda w: eval_pa(spec, w), z)
        assert abs(jet.dz - fd.dz) <= 1e-6 * max(1, abs(jet.dz))
        assert abs(jet.dzbar - fd.dzbar) <= 1e-6 * max(1, abs(jet.dzbar))


def test_jacobian_examples():
    rng = np.random.default_rng(4)
    z = disk(rng, 100)
    assert np.max(np.abs(jacobian(cubic_radial(), z) - 3 * np.abs(z) ** 4)) <= 1e-12
    ident = PolyharmonicSpec(1, (HarmonicLayer(Z),))
    assert np.allclose(jacobian(ident, z), 1.0, atol=1e-15)
    for p, lam in ((2, 0.25), (3, 0.1 + 0.1j), (4, -0.05j)):
        want = 1 - 2 * (p - 1) * np.abs(z) ** (2 * (p - 2)) * (np.conj(lam) * z).real
        assert np.max(np.abs(jacobian(shifted_identity(p, lam), z) - want)) <= 1e-12


@pytest.mark.parametrize("p,n", [(2, 2), (3, 5), (5, 10)])
def test_shear_family_jacobian_at_origin(p, n):
    assert float(wirtinger_jet(shear_family(p, n, 1 / n), 0.0).jacobian) == pytest.approx(1.0, abs=1e-12)


def test_halfplane_family_jacobian_at_origin_is_four():
    # K = (1+z)/(1-z) has K'(0) = 2, so J(0) = |K'(0)|^2 = 4
    for p, mu in ((2, 0.25), (2, 0.5), (5, 0.5)):
        jet = wirtinger_jet(halfplane_family(p, mu), 0.0)
        assert jet.dz == pytest.approx(2.0)
        assert float(jet.jacobian) == pytest.approx(4.0, abs=1e-12)


def test_moebius_family_jacobian_at_origin():
    a, b, c = 3.0, 0.5, 0.2
    want = abs(a * (1 - abs(c) ** 2)) ** 2 - abs(b) ** 2
    assert float(wirtinger_jet(moebius_family(2, a, b, c), 0.0).jacobian) == pytest.approx(want, abs=1e-12)


def test_weighted_analytic_jacobian_formula():
    rng = np.random.default_rng(5)
    for _ in range(50):
        F1 = AnalyticSpec.from_coeffs(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        p = int(rng.integers(2, 5))
        z = complex(disk(rng, 1)[0])
        w = z * F1.deriv(z) / F1.value(z)
        want = abs(z) ** (4 * (p - 2) + 2) * abs(F1.value(z)) ** 2 * (abs(p - 1 + w) ** 2 - (p - 1) ** 2)
        assert float(jacobian(weighted_analytic(F1, p), z)) == pytest.approx(want, rel=1e-10, abs=1e-14)


def test_trichotomy_examples():
    assert jacobian_trichotomy(Z, 2, 0.5) == "pos"
    # z F1'/F1 = -2(p-1) at z = 1/2 for F1 = 1 - (4/3) z, p = 2
    F1 = AnalyticSpec.from_coeffs([1, -4 / 3])
    assert jacobian_trichotomy(F1, 2, 0.5) == "zero"
    assert abs(float(jacobian(weighted_analytic(F1, 2), 0.5))) < 1e-14
    # z F1'/F1 = -(p-1) lands inside the disk |w + p - 1| < p - 1
    F1 = AnalyticSpec.from_coeffs([1, -2])
    assert jacobian_trichotomy(F1, 2, 0.25) == "neg"
    assert float(jacobian(weighted_analytic(F1, 2), 0.25)) < 0


def test_trichotomy_agrees_with_direct_jacobian():
    rng = np.random.default_rng(6)
    for _ in range(100):
        F1 = AnalyticSpec.from_coeffs(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        p = int(rng.integers(2, 6))
        z = complex(disk(rng, 1)[0])
        jet = wirtinger_jet(weighted_analytic(F1, p), z)
        J = float(jet.jacobian)
        band = 1e-12 * (abs(jet.dz) ** 2 + abs(jet.dzbar) ** 2)
        sign = "pos" if J > band else "neg" if J < -band else "zero"
        assert jacobian_trichotomy(F1, p, z) == sign


def test_trichotomy_errors():
    with pytest.raises(SingularInputError):
        jacobian_trichotomy(Z, 2, 0.0)
    with pytest.raises(SingularInputError):
        jacobian_trichotomy(AnalyticSpec.from_coeffs([0.5, -1]), 2, 0.5)


def test_polyanalytic_examples():
    assert eval_pa(one_minus_modulus_squared(), 0.5) == pytest.approx(0.75)
    ident = PolyanalyticSpec(1, (Z,))
    assert eval_pa(ident, 0.3 + 0.2j) == pytest.approx(0.3 + 0.2j)
    zbar = PolyanalyticSpec(2, (AnalyticSpec(), AnalyticSpec.from_coeffs([1.0])))
    assert eval_pa(zbar, 0.3 + 0.4j) == pytest.approx(0.3 - 0.4j)


def test_polyanalytic_conversion_matches():
    rng = np.random.default_rng(8)
    for p in (1, 2, 3, 4):
        coeffs = tuple(
            AnalyticSpec(
                (AnalyticAtom.monomial(int(rng.integers(0, 6)), rng.standard_normal() + 1j),),
                tuple(rng.standard_normal(5) + 1j * rng.standard_normal(5)),
            )
            for _ in range(p)
        )
        spec = PolyanalyticSpec(p, coeffs)
        ph = polyanalytic_to_polyharmonic(spec)
        z = disk(rng, 200, 0.99)
        assert np.max(np.abs(eval_pa(spec, z) - eval_ph(ph, z))) <= 1e-12


def test_conversion_rejects_non_monomial_atoms():
    spec = PolyanalyticSpec(1, (AnalyticSpec((AnalyticAtom.halfplane(),)),))
    with pytest.raises(ValueError):
        polyanalytic_to_polyharmonic(spec)


def iterated_laplacian(f, h, times):
    for _ in range(times):
        f = (f[2:, 1:-1] + f[:-2, 1:-1] + f[1:-1, 2:] + f[1:-1, :-2] - 4 * f[1:-1, 1:-1]) / h**2
    return f


@pytest.mark.parametrize("p", [1, 2, 3])
def test_discrete_polylaplacian_vanishes(p):
    rng = np.random.default_rng(10 + p)
    layers = tuple(
        HarmonicLayer(
            AnalyticSpec((AnalyticAtom.moebius(0.3j, 1.0),), (0, 1, 0.5)),
            AnalyticSpec((AnalyticAtom.halfplane(0.2),), tuple(rng.standard_normal(3))),
        )
        for _ in range(p)
    )
    spec = PolyharmonicSpec(p, layers)
    res = []
    for h in (0.02, 0.01):
        x = 0.1 + h * np.arange(-p - 1, p + 2)
        X, Y = np.meshgrid(x, x + 0.05, indexing="ij")
        vals = eval_ph(spec, X + 1j * Y)
        res.append(abs(iterated_laplacian(vals, h, p).item(0)))
    # O(h^2): halving h quarters the residual (give or take)
    assert res[1] < 0.4 * res[0]


def test_example_builders_validate():
    spec = make_example("eg2", p=2, n=2, lam=0.5)
    assert spec.layers[0].h == Z and spec.layers[1].h == Z
    assert spec.layers[0].g == AnalyticSpec.monomial(2, 0.5)
    make_example("eg1", p=2, a=4, b=1, c=0)
    with pytest.raises(ParameterError, match="mu"):
        make_example("eg3", p=2, mu=0.6)
    with pytest.raises(ParameterError, match="1/n"):
        make_example("eg2", p=2, n=3, lam=0.5)
    with pytest.raises(ParameterError):
        make_example("eg1", p=2, a=1, b=1, c=0)
    with pytest.raises(ParameterError):
        make_example("shifted-identity", p=2, lam=0.5)
    with pytest.raises(ValueError):
        make_example("nope")


def test_domain_errors():
    with pytest.raises(DomainError):
        eval_ph(shear_family(2, 2, 0.5), 1.0)
    with pytest.raises(DomainError):
        wirtinger_jet(shear_family(2, 2, 0.5), math.sqrt(0.5) * (1 + 1j))
