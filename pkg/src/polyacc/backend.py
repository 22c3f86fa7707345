"""Scan-kernel backend, chosen once at import.

The compiled module ``_scan_c`` is used when it was built; otherwise the
numpy module ``_scan_py`` takes over.  Setting ``POLYACC_PURE_PYTHON=1``
forces the fallback.  ``POLYACC_THREADS`` sets the default worker count.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _scan_py

if os.environ.get("POLYACC_PURE_PYTHON"):
    _impl = _scan_py
    BACKEND = "python"
else:
    try:
        from . import _scan_c as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _scan_py
        BACKEND = "python"


def default_workers():
    try:
        return max(1, int(os.environ.get("POLYACC_THREADS", "1")))
    except ValueError:
        return 1


def scan_min(prog, radii, thetas, ts, workers=None, impl=None):
    """Deterministic min-fold of |U| over the grid.

    The radius axis is cut into contiguous chunks; each chunk reports its
    first minimum and chunks are folded in order with a strict ``<``, so
    the argmin does not depend on the worker count.
    """
    impl = impl or _impl
    workers = workers or default_workers()
    radii = np.ascontiguousarray(radii, dtype=float)
    thetas = np.ascontiguousarray(thetas, dtype=float)
    ts = np.ascontiguousarray(ts, dtype=float)
    bounds = np.linspace(0, len(radii), min(len(radii), 4 * workers) + 1).astype(int)
    chunks = [(a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

    def run(ab):
        a, b = ab
        return impl.scan_rows(prog, radii[a:b], thetas, ts)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(ab) for ab in chunks]
    best = (float("inf"), 0, 0, 0)
    for (a, _), (m, ir, ith, it) in zip(chunks, results):
        if m < best[0]:
            best = (float(m), int(a + ir), int(ith), int(it))
    return best


def polyline_is_simple(x, y, impl=None):
    impl = impl or _impl
    return bool(impl.polyline_is_simple(np.ascontiguousarray(x, dtype=float), np.ascontiguousarray(y, dtype=float)))
