# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scan kernels.

Mirrors :mod:`polyacc._scan_py` loop for loop; both read a
:class:`polyacc.program.Program`.  The loops run without the GIL so
callers may split the radius axis across threads.
"""

from libc.math cimport sin, cos, hypot, fabs

cdef double SMALL_T = 1e-7

ctypedef long long i64


cdef inline double dratio(i64 n, double t, double st) noexcept nogil:
    if t < SMALL_T:
        return <double>n
    if n == 0:
        return 0.0
    if n < 0:
        return -sin((-n) * t) / st
    return sin(n * t) / st


cdef inline double complex cpow_int(double complex z, i64 n) noexcept nogil:
    cdef double complex out = 1.0
    cdef i64 k
    for k in range(n):
        out = out * z
    return out


cdef inline double complex moebius(double complex u, double complex c) noexcept nogil:
    return (u + c) / (1.0 + c.conjugate() * u)


cdef double complex eval_point(
    const i64[:, ::1] terms,
    const i64[::1] atom_ptr,
    const i64[::1] atom_kind,
    const i64[::1] atom_n,
    const double complex[::1] atom_c,
    const double complex[::1] atom_w,
    const i64[::1] series_ptr,
    const double complex[::1] series_coef,
    double complex z,
    double r2,
    double t,
    double ct,
    double st,
) noexcept nogil:
    cdef double complex U = 0.0
    cdef double complex S, C, w, c, cb, zn, den, e, pref, zb = z.conjugate()
    cdef i64 i, a, s, n, m, shift, kind
    cdef double cabs2
    for i in range(terms.shape[0]):
        m = terms[i, 1]
        shift = terms[i, 2]
        S = 0.0
        C = 0.0
        for a in range(atom_ptr[i], atom_ptr[i + 1]):
            kind = atom_kind[a]
            w = atom_w[a]
            if kind == 0:
                n = atom_n[a]
                zn = cpow_int(z, n)
                S = S + w * dratio(n, t, st) * zn
                if shift:
                    C = C + w * cos(n * t) * zn
            elif kind == 1:
                c = atom_c[a]
                cb = c.conjugate()
                cabs2 = c.real * c.real + c.imag * c.imag
                S = S + w * (1.0 - cabs2) * z / (1.0 + 2.0 * cb * z * ct + cb * cb * z * z)
                if shift:
                    e = ct + 1j * st
                    C = C + 0.5 * w * (moebius(z * e, c) + moebius(z / e, c))
            else:
                den = 1.0 - 2.0 * z * ct + z * z
                S = S + 2.0 * w * z / den
                if shift:
                    C = C + w * (1.0 - z * z) / den
        zn = 1.0
        for s in range(series_ptr[i], series_ptr[i + 1]):
            n = s - series_ptr[i]
            c = series_coef[s]
            if c != 0:
                S = S + c * dratio(n, t, st) * zn
                if shift:
                    C = C + c * cos(n * t) * zn
            zn = zn * z
        if shift:
            S = cos(shift * t) * S - dratio(shift, t, st) * C
        if terms[i, 3]:
            S = -S.conjugate()
        if terms[i, 0] == 0:
            pref = r2 ** m if m else 1.0
        else:
            pref = cpow_int(zb, m)
        U = U + pref * S
    return U


def scan_rows(prog, double[::1] radii, double[::1] thetas, double[::1] ts):
    """Minimum |U| over the tensor grid and its (i_r, i_theta, i_t) index."""
    cdef const i64[:, ::1] terms = prog.terms
    cdef const i64[::1] atom_ptr = prog.atom_ptr
    cdef const i64[::1] atom_kind = prog.atom_kind
    cdef const i64[::1] atom_n = prog.atom_n
    cdef const double complex[::1] atom_c = prog.atom_c
    cdef const double complex[::1] atom_w = prog.atom_w
    cdef const i64[::1] series_ptr = prog.series_ptr
    cdef const double complex[::1] series_coef = prog.series_coef
    cdef Py_ssize_t ir, ith, it
    cdef Py_ssize_t br = 0, bth = 0, bt = 0
    cdef double best = float("inf")
    cdef double r, mod, r2
    cdef double complex z, U
    cdef double[::1] cts = ts.copy()
    cdef double[::1] sts = ts.copy()
    for it in range(ts.shape[0]):
        cts[it] = cos(ts[it])
        sts[it] = sin(ts[it])
    with nogil:
        for ir in range(radii.shape[0]):
            r = radii[ir]
            for ith in range(thetas.shape[0]):
                z = r * cos(thetas[ith]) + 1j * (r * sin(thetas[ith]))
                r2 = z.real * z.real + z.imag * z.imag
                for it in range(ts.shape[0]):
                    U = eval_point(terms, atom_ptr, atom_kind, atom_n, atom_c, atom_w,
                                   series_ptr, series_coef, z, r2, ts[it], cts[it], sts[it])
                    mod = hypot(U.real, U.imag)
                    if mod < best:
                        best = mod
                        br = ir
                        bth = ith
                        bt = it
    return best, br, bth, bt


cdef inline double orient(double ax, double ay, double bx, double by, double cx, double cy) noexcept nogil:
    cdef double v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if v > 0:
        return 1.0
    if v < 0:
        return -1.0
    return 0.0


def polyline_is_simple(double[::1] x, double[::1] y):
    """True iff the closed polyline has no crossing or touching between
    non-adjacent segments."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i, j, i2, j2, jend
    cdef double o1, o2, o3, o4
    cdef bint simple = True
    with nogil:
        for i in range(n - 2):
            i2 = i + 1 if i + 1 < n else 0
            jend = n - 1 if i == 0 else n
            for j in range(i + 2, jend):
                j2 = j + 1 if j + 1 < n else 0
                if (max(x[j], x[j2]) < min(x[i], x[i2]) or min(x[j], x[j2]) > max(x[i], x[i2])
                        or max(y[j], y[j2]) < min(y[i], y[i2]) or min(y[j], y[j2]) > max(y[i], y[i2])):
                    continue
                o1 = orient(x[i], y[i], x[i2], y[i2], x[j], y[j])
                o2 = orient(x[i], y[i], x[i2], y[i2], x[j2], y[j2])
                o3 = orient(x[j], y[j], x[j2], y[j2], x[i], y[i])
                o4 = orient(x[j], y[j], x[j2], y[j2], x[i2], y[i2])
                if o1 * o2 <= 0 and o3 * o4 <= 0:
                    simple = False
                    break
            if not simple:
                break
    return simple
