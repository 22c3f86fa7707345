"""Pure numpy implementation of the scan kernels (fallback backend)."""

import numpy as np

from .series import SMALL_T


def _ratio(n, t, st):
    small = t < SMALL_T
    m = abs(int(n))
    val = np.sin(m * t) / np.where(small, 1.0, st)
    if n < 0:
        val = -val
    return np.where(small, float(n), val)


def _moebius(u, c):
    return (u + c) / (1 + np.conj(c) * u)


def eval_program(prog, z, t):
    """Criterion value at broadcast points ``z`` and ``t``."""
    z, t = np.broadcast_arrays(np.asarray(z, dtype=complex), np.asarray(t, dtype=float))
    ct = np.cos(t)
    st = np.sin(t)
    r2 = (z * np.conj(z)).real
    zb = np.conj(z)
    out = np.zeros(z.shape, dtype=complex)
    for i in range(prog.n_terms):
        pref_kind, m, shift, conj = (int(v) for v in prog.terms[i])
        S = np.zeros_like(out)
        C = np.zeros_like(out)
        for a in range(prog.atom_ptr[i], prog.atom_ptr[i + 1]):
            kind = prog.atom_kind[a]
            w = prog.atom_w[a]
            if kind == 0:
                n = int(prog.atom_n[a])
                zn = z**n
                S += w * _ratio(n, t, st) * zn
                if shift:
                    C += w * np.cos(n * t) * zn
            elif kind == 1:
                c = prog.atom_c[a]
                cb = np.conj(c)
                S += w * (1 - abs(c) ** 2) * z / (1 + 2 * cb * z * ct + cb * cb * z * z)
                if shift:
                    e = np.exp(1j * t)
                    C += 0.5 * w * (_moebius(z * e, c) + _moebius(z / e, c))
            else:
                den = 1 - 2 * z * ct + z * z
                S += 2 * w * z / den
                if shift:
                    C += w * (1 - z * z) / den
        zn = np.ones_like(out)
        for s in range(prog.series_ptr[i], prog.series_ptr[i + 1]):
            n = s - prog.series_ptr[i]
            c = prog.series_coef[s]
            if c != 0:
                S += c * _ratio(n, t, st) * zn
                if shift:
                    C += c * np.cos(n * t) * zn
            zn = zn * z
        if shift:
            S = np.cos(shift * t) * S - _ratio(shift, t, st) * C
        if conj:
            S = -np.conj(S)
        pref = r2**m if pref_kind == 0 else zb**m
        out += pref * S
    return out


def scan_rows(prog, radii, thetas, ts):
    """Minimum |U| over the tensor grid and its (i_r, i_theta, i_t) index.

    Ties resolve to the lexicographically smallest index.
    """
    radii = np.asarray(radii, dtype=float)[:, None, None]
    thetas = np.asarray(thetas, dtype=float)[None, :, None]
    z = radii * np.cos(thetas) + 1j * (radii * np.sin(thetas))
    t = np.asarray(ts, dtype=float)[None, None, :]
    mod = np.abs(eval_program(prog, z, t))
    flat = int(np.argmin(mod))
    idx = np.unravel_index(flat, mod.shape)
    return float(mod.reshape(-1)[flat]), int(idx[0]), int(idx[1]), int(idx[2])


def _orient(ax, ay, bx, by, cx, cy):
    return np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def polyline_is_simple(x, y):
    """True iff the closed polyline through (x[i], y[i]) has no crossing
    or touching between non-adjacent segments."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    x2 = np.roll(x, -1)
    y2 = np.roll(y, -1)
    xmin, xmax = np.minimum(x, x2), np.maximum(x, x2)
    ymin, ymax = np.minimum(y, y2), np.maximum(y, y2)
    for i in range(n - 2):
        # segments j = i+2 .. n-1, skipping the wrap neighbour of segment 0
        j = np.arange(i + 2, n - 1 if i == 0 else n)
        if not len(j):
            continue
        box = (xmin[j] <= xmax[i]) & (xmax[j] >= xmin[i]) & (ymin[j] <= ymax[i]) & (ymax[j] >= ymin[i])
        if not box.any():
            continue
        j = j[box]
        o1 = _orient(x[i], y[i], x2[i], y2[i], x[j], y[j])
        o2 = _orient(x[i], y[i], x2[i], y2[i], x2[j], y2[j])
        o3 = _orient(x[j], y[j], x2[j], y2[j], x[i], y[i])
        o4 = _orient(x[j], y[j], x2[j], y2[j], x2[i], y2[i])
        # collinear pairs reach here only when bounding boxes overlap
        hit = (o1 * o2 <= 0) & (o3 * o4 <= 0)
        if hit.any():
            return False
    return True
