"""Spectral constants and rigidity checks for rotationally symmetric metrics."""
from .closedform import ModelConstants, SpectralParams, constants_3d, constants_nd
from .errors import IncomparableDomains, InvalidInput, NumericalFailure, WarpspecError
from .geometry import Domination, WarpedMetric, make_model_metric, metric_dominates
from .profile import RadialProfile
from .spectral import EigenSolution, Schedule, lambda_c, scalar_inf

__all__ = [
    "Domination",
    "EigenSolution",
    "IncomparableDomains",
    "InvalidInput",
    "ModelConstants",
    "NumericalFailure",
    "RadialProfile",
    "Schedule",
    "SpectralParams",
    "WarpedMetric",
    "WarpspecError",
    "constants_3d",
    "constants_nd",
    "lambda_c",
    "make_model_metric",
    "metric_dominates",
    "scalar_inf",
]
