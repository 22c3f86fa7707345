"""Flatten criterion functionals into arrays for the scan kernels.

Both univalence functionals are sums of terms

    prefactor(z) * [S^(k)_t f](z)      or      -prefactor(z) * conj([S_t f](z))

where ``prefactor`` is |z|^{2m} (p-harmonic layers) or conj(z)^m
(p-analytic coefficients) and ``S^(k)`` is the sine-kernel transform with
index shift ``k``.  A :class:`Program` stores these terms in CSR form so
that the compiled kernel and the numpy fallback read identical data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polyharmonic import PolyanalyticSpec, PolyharmonicSpec
from .series import HALFPLANE, MOEBIUS, MONOMIAL

PREF_MODULUS = 0
PREF_CONJ_POWER = 1
ATOM_CODES = {MONOMIAL: 0, MOEBIUS: 1, HALFPLANE: 2}


@dataclass(frozen=True)
class Program:
    terms: np.ndarray  # (T, 4) int64: pref_kind, m, shift, conj
    atom_ptr: np.ndarray
    atom_kind: np.ndarray
    atom_n: np.ndarray
    atom_c: np.ndarray
    atom_w: np.ndarray
    series_ptr: np.ndarray
    series_coef: np.ndarray

    @property
    def n_terms(self):
        return len(self.terms)

    def arrays(self):
        return (
            self.terms,
            self.atom_ptr,
            self.atom_kind,
            self.atom_n,
            self.atom_c,
            self.atom_w,
            self.series_ptr,
            self.series_coef,
        )


def _build(entries):
    terms, a_kind, a_n, a_c, a_w, coef = [], [], [], [], [], []
    a_ptr, s_ptr = [0], [0]
    for meta, spec in entries:
        if spec.is_zero:
            continue
        terms.append(meta)
        for atom in spec.atoms:
            a_kind.append(ATOM_CODES[atom.kind])
            a_n.append(atom.n)
            a_c.append(atom.c)
            a_w.append(atom.weight)
        a_ptr.append(len(a_kind))
        coef.extend(spec.series)
        s_ptr.append(len(coef))
    return Program(
        terms=np.asarray(terms, dtype=np.int64).reshape(-1, 4),
        atom_ptr=np.asarray(a_ptr, dtype=np.int64),
        atom_kind=np.asarray(a_kind, dtype=np.int64),
        atom_n=np.asarray(a_n, dtype=np.int64),
        atom_c=np.asarray(a_c, dtype=np.complex128),
        atom_w=np.asarray(a_w, dtype=np.complex128),
        series_ptr=np.asarray(s_ptr, dtype=np.int64),
        series_coef=np.asarray(coef, dtype=np.complex128),
    )


def compile_spec(spec) -> Program:
    if isinstance(spec, PolyharmonicSpec):
        entries = []
        for j, layer in enumerate(spec.layers):
            entries.append(((PREF_MODULUS, j, 0, 0), layer.h))
            entries.append(((PREF_MODULUS, j, 0, 1), layer.g))
        return _build(entries)
    if isinstance(spec, PolyanalyticSpec):
        return _build([((PREF_CONJ_POWER, k, k, 0), a) for k, a in enumerate(spec.coeffs)])
    raise TypeError(f"cannot compile {type(spec).__name__}")
