"""Adaptive wavelet density estimation with data-driven resolution selection."""

from .basis import WaveletBasis, build_basis, eval_phi, eval_psi, scaled_phi
from .filters import daubechies_filter, qmf
from .models import parse_model
from .pyramid import CoefficientPyramid, fit_pyramid, fit_top_level, pyramid_down
from .selection import PcoConfig, SelectionReport, candidate_set, penalty, select
from .estimator import DensityEstimate
from .risk import RiskReport, ise, mise_study

__version__ = "0.1.0"

__all__ = [
    "WaveletBasis",
    "build_basis",
    "eval_phi",
    "eval_psi",
    "scaled_phi",
    "daubechies_filter",
    "qmf",
    "parse_model",
    "CoefficientPyramid",
    "fit_pyramid",
    "fit_top_level",
    "pyramid_down",
    "PcoConfig",
    "SelectionReport",
    "candidate_set",
    "penalty",
    "select",
    "DensityEstimate",
    "RiskReport",
    "ise",
    "mise_study",
    "__version__",
]
