import math
import os
import subprocess
import sys

import numpy as np
import pytest

from polyacc import _scan_py, backend
from polyacc.examples import halfplane_family, moebius_family, one_minus_modulus_squared, shear_family
from polyacc.polyharmonic import PolyanalyticSpec
from polyacc.program import compile_spec
from polyacc.series import AnalyticAtom, AnalyticSpec
from polyacc.univalence import GridSpec, criterion_value

try:
    from polyacc import _scan_c
except ImportError:  # pragma: no cover
    _scan_c = None

needs_c = pytest.mark.skipif(_scan_c is None, reason="compiled kernel not built")

GRID = GridSpec(n_r=20, n_theta=32, n_t=8)


def mixed_pa():
    a0 = AnalyticSpec((AnalyticAtom.halfplane(0.2),), (0, 1))
    a1 = AnalyticSpec((AnalyticAtom.moebius(0.3 - 0.2j, 0.1j),), (0.05,))
    a2 = AnalyticSpec.monomial(3, 0.02 - 0.01j)
    return PolyanalyticSpec(3, (a0, a1, a2))


SPECS = [
    shear_family(3, 5, 0.2),
    moebius_family(2, 3, 0.5, 0.2),
    halfplane_family(5, 0.5),
    one_minus_modulus_squared(),
    mixed_pa(),
]


@pytest.mark.parametrize("spec", SPECS)
def test_program_matches_direct_criterion(spec):
    prog = compile_spec(spec)
    r = GRID.radii()[:, None, None]
    th = GRID.thetas()[None, :, None]
    z = r * np.exp(1j * th)
    t = GRID.ts()[None, None, :]
    got = _scan_py.eval_program(prog, z, t)
    want = criterion_value(spec, z, t)
    assert np.max(np.abs(got - want)) <= 1e-12 * max(1.0, np.max(np.abs(want)))


@needs_c
@pytest.mark.parametrize("spec", SPECS)
def test_compiled_and_numpy_agree(spec):
    prog = compile_spec(spec)
    args = (prog, GRID.radii(), GRID.thetas(), GRID.ts())
    mc, *ic = backend.scan_min(*args, workers=1, impl=_scan_c)
    mp, *ip = backend.scan_min(*args, workers=1, impl=_scan_py)
    assert mc == pytest.approx(mp, rel=1e-10, abs=1e-14)
    if mp > 1e-12:
        assert ic == ip


@pytest.mark.parametrize("impl", [_scan_py] + ([_scan_c] if _scan_c else []), ids=lambda m: m.__name__.split(".")[-1])
def test_result_independent_of_worker_count(impl):
    prog = compile_spec(halfplane_family(2, 0.25))
    args = (prog, GRID.radii(), GRID.thetas(), GRID.ts())
    ref = backend.scan_min(*args, workers=1, impl=impl)
    for w in (2, 3, 8):
        assert backend.scan_min(*args, workers=w, impl=impl) == ref


def test_ties_resolve_to_first_index():
    # 1 - |z|^2 gives U = 0 everywhere
    prog = compile_spec(one_minus_modulus_squared())
    for w in (1, 4):
        assert backend.scan_min(prog, GRID.radii(), GRID.thetas(), GRID.ts(), workers=w) == (0.0, 0, 0, 0)


def square_loop(n=64):
    th = 2 * math.pi * np.arange(n) / n
    return np.cos(th), np.sin(th)


def figure_eight(n=64):
    th = 2 * math.pi * np.arange(n) / n
    return np.sin(th), np.sin(2 * th)


@pytest.mark.parametrize("impl", [_scan_py] + ([_scan_c] if _scan_c else []), ids=lambda m: m.__name__.split(".")[-1])
def test_polyline_simplicity(impl):
    assert backend.polyline_is_simple(*square_loop(), impl=impl)
    assert not backend.polyline_is_simple(*figure_eight(), impl=impl)
    # touching at a vertex counts as a crossing
    x = np.array([0.0, 1.0, 1.0, 0.5, 0.0, 0.5])
    y = np.array([0.0, 0.0, 1.0, 0.0, 1.0, 0.0])
    assert not backend.polyline_is_simple(x, y, impl=impl)


@needs_c
def test_polyline_parity_random():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(4, 20))
        x, y = rng.random(n), rng.random(n)
        assert backend.polyline_is_simple(x, y, impl=_scan_c) == backend.polyline_is_simple(x, y, impl=_scan_py)


def test_pure_python_env_forces_fallback():
    env = dict(os.environ, POLYACC_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import polyacc; print(polyacc.BACKEND)"], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "python"


def test_threads_env(monkeypatch):
    monkeypatch.setenv("POLYACC_THREADS", "3")
    assert backend.default_workers() == 3
    monkeypatch.setenv("POLYACC_THREADS", "junk")
    assert backend.default_workers() == 1
