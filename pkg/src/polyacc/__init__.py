"""Numerical univalence and accessibility checks for p-harmonic maps of the disk."""

from .backend import BACKEND
from .polyharmonic import HarmonicLayer, PolyanalyticSpec, PolyharmonicSpec, eval_pa, eval_ph, jacobian, wirtinger_jet
from .series import AnalyticAtom, AnalyticSpec, dirichlet_ratio, sine_kernel_transform

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AnalyticAtom",
    "AnalyticSpec",
    "HarmonicLayer",
    "PolyanalyticSpec",
    "PolyharmonicSpec",
    "dirichlet_ratio",
    "eval_pa",
    "eval_ph",
    "jacobian",
    "sine_kernel_transform",
    "wirtinger_jet",
]
