import math

import numpy as np
import pytest
from scipy import integrate

from polyacc.errors import DomainError, GridTooSmallError
from polyacc.kernel import (
    BoundaryData,
    ResidualGrid,
    bilaplacian_residual,
    boundary_gap,
    c_alpha,
    dirichlet_samples,
    gamma_fn,
    k_alpha,
    kernel_mean,
    node_count,
    residual_study,
    sample_on_grid,
    solve_dirichlet,
    t_alpha_residual,
)


def gamma_by_quadrature(s):
    # split at 1 so the t^(s-1) endpoint singularity is handled by quad
    f = lambda t: t ** (s - 1) * math.exp(-t)
    return integrate.quad(f, 0, 1)[0] + integrate.quad(f, 1, math.inf)[0]


@pytest.mark.parametrize("s,want", [(1, 1.0), (3, 2.0), (0.5, math.sqrt(math.pi)), (5, 24.0)])
def test_gamma_values(s, want):
    assert gamma_fn(s) == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("s", [0.5, 1.7, 4.2, 12.5])
def test_gamma_matches_integral(s):
    assert gamma_fn(s) == pytest.approx(gamma_by_quadrature(s), rel=1e-9)


def test_gamma_domain():
    for s in (0, -1.5, 50.5):
        with pytest.raises(DomainError):
            gamma_fn(s)


def test_c_alpha_values():
    assert c_alpha(0) == pytest.approx(1.0, abs=1e-15)
    assert c_alpha(2) == pytest.approx(0.5, abs=1e-15)
    assert c_alpha(1) == pytest.approx(gamma_fn(1.5) ** 2 / gamma_fn(2), rel=1e-13)
    with pytest.raises(DomainError):
        c_alpha(-1)


def test_c_alpha_four_is_one_sixth():
    # Gamma(3)^2 / Gamma(5) = 4 / 24
    assert c_alpha(4) == pytest.approx(1 / 6, abs=1e-14)
    assert c_alpha(4) == pytest.approx(gamma_fn(3) ** 2 / gamma_fn(5), abs=1e-15)


def test_k_alpha_examples():
    for a in (0, 1, 2, 4):
        assert k_alpha(0, a) == pytest.approx(c_alpha(a))
    assert k_alpha(0.5, 0) == pytest.approx(3.0)
    assert k_alpha(-0.5, 0) == pytest.approx(1 / 3)
    with pytest.raises(DomainError):
        k_alpha(1.0, 0)


def test_k_alpha_positive():
    x = np.linspace(-0.95, 0.95, 41)
    Z = x[:, None] + 1j * x[None, :]
    Z = Z[np.abs(Z) < 0.99]
    for a in (0, 1, 2, 4):
        assert np.all(k_alpha(Z, a) > 0)


def test_solve_constant_is_one():
    rng = np.random.default_rng(0)
    z = 0.9 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
    assert np.max(np.abs(solve_dirichlet(BoundaryData.const(1.0), 0, z) - 1)) <= 1e-10


def test_solve_examples():
    assert solve_dirichlet(BoundaryData.const(1.0), 2, 0.0) == pytest.approx(0.5, abs=1e-15)
    for r in (0.2, 0.5, -0.7, 0.95):
        assert solve_dirichlet(BoundaryData.cos(1), 0, r) == pytest.approx(r, abs=1e-12)


def test_solve_complex_data():
    f = BoundaryData.from_fourier({1: 1.0})  # e^{i theta} -> z
    z = 0.3 + 0.4j
    assert solve_dirichlet(f, 0, z) == pytest.approx(z, abs=1e-12)


SMOOTH = (BoundaryData.cos(1), BoundaryData.cos(3), BoundaryData.parse("fourier:2=0.5,-1=0.25"))


def test_self_convergence_fixed_nodes():
    z = np.array([0.1, 0.5 + 0.3j, -0.8j, 0.8])
    for f in SMOOTH:
        for a in (0, 2):
            a256 = solve_dirichlet(f, a, z, nodes=256, adaptive=False)
            a512 = solve_dirichlet(f, a, z, nodes=512, adaptive=False)
            assert np.max(np.abs(a256 - a512)) < 1e-10


def test_adaptive_nodes_converge_near_boundary():
    # fixed M = 256 leaves ~1e-10 at |z| = 0.9 (error ~ |z|^M); the
    # adaptive count removes it
    z = np.array([0.9, -0.95j, 0.99])
    for f in SMOOTH:
        for a in (0, 2):
            assert np.max(np.abs(solve_dirichlet(f, a, z) - solve_dirichlet(f, a, z, nodes=4096))) < 1e-12


def test_node_count_grows_near_boundary():
    assert node_count(0.5) == 256
    m = node_count(0.999)
    assert m % 2 == 0 and 0.999**m < 1e-16


def test_table_data_matches_closed_form():
    th = 2 * np.pi * np.arange(64) / 64
    tab = BoundaryData.from_table(np.cos(2 * th))
    z = np.array([0.3, 0.2 + 0.5j])
    assert np.allclose(solve_dirichlet(tab, 2, z), solve_dirichlet(BoundaryData.cos(2), 2, z), atol=1e-10)
    with pytest.raises(ValueError):
        BoundaryData.from_table(np.ones(15))


def test_linear_function_residual_is_exact():
    grid = ResidualGrid(1 / 32)
    vals = sample_on_grid(lambda z: z.real, grid)
    assert t_alpha_residual(vals, 0, grid) <= 1e-10
    assert t_alpha_residual(vals, 2, grid) <= 1e-10


def test_cos_theta_solution_is_linear():
    # x is annihilated by T_0 and T_2, so the quadrature solution for
    # cos(theta) is x itself and its residual sits at roundoff level
    grid = ResidualGrid(1 / 32)
    for a in (0, 2):
        vals = dirichlet_samples(BoundaryData.cos(1), a, grid)
        inside = ~np.isnan(vals)
        assert np.max(np.abs(vals[inside] - grid.points()[inside].real)) <= 1e-13


@pytest.mark.parametrize("k,alpha", [(2, 2), (6, 0), (3, 1)])
def test_residual_second_order(k, alpha):
    res, ratios = residual_study(BoundaryData.cos(k), alpha)
    assert res[1] < res[0]
    assert 3.5 <= ratios[0] <= 4.5


def test_kernel_normalization():
    for a in (0, 2, 4):
        means = [kernel_mean(a, r) for r in (0.5, 0.9, 0.99)]
        assert means[0] <= means[1] + 1e-14 and means[1] <= means[2] + 1e-14
        assert abs(means[2] - 1) <= 0.05
        assert means[2] == pytest.approx(solve_dirichlet(BoundaryData.const(1.0), a, 0.99), abs=1e-12)
    assert kernel_mean(0, 0.7) == pytest.approx(1.0, abs=1e-14)


def test_boundary_convergence():
    for a in (0, 2):
        gaps = [boundary_gap(BoundaryData.cos(1), a, r) for r in (0.9, 0.99, 0.999)]
        assert gaps[0] > gaps[1] > gaps[2]


def test_biharmonic_trend_for_alpha_two():
    res = []
    for h in (1 / 32, 1 / 64, 1 / 128):
        grid = ResidualGrid(h)
        vals = dirichlet_samples(BoundaryData.cos(6), 2, grid)
        res.append(bilaplacian_residual(vals, grid, eval_radius=0.8 - 4 / 32))
    assert res[0] > res[1] > res[2]
    assert res[1] / res[2] == pytest.approx(4, abs=0.5)


def test_grid_too_small():
    grid = ResidualGrid(0.3)
    vals = sample_on_grid(lambda z: z.real, grid)
    with pytest.raises(GridTooSmallError):
        t_alpha_residual(vals, 0, grid)
    with pytest.raises(GridTooSmallError):
        bilaplacian_residual(vals, grid)


def test_boundary_data_parse():
    assert BoundaryData.parse("const:2.5")(0.3) == 2.5
    assert BoundaryData.parse("cos:3")(0.2) == pytest.approx(math.cos(0.6))
    assert BoundaryData.parse("sin:2")(0.2) == pytest.approx(math.sin(0.4))
    f = BoundaryData.parse("fourier:1=0.5,-1=0.5")
    assert f(0.7) == pytest.approx(math.cos(0.7))
    for bad in ("wave:1", "cos:x", "fourier:", ""):
        with pytest.raises(ValueError):
            BoundaryData.parse(bad)
