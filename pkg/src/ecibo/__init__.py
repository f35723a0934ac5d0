"""Bayesian optimization with expected coordinate improvement."""

__version__ = "0.1.0"

from .acquisition import Incumbent, eci, expected_improvement
from .benchmarks import Problem, make_problem
from .bo import (
    BoConfig,
    CoordinateOrder,
    RunRecord,
    compute_coordinate_order,
    run_coordinate_line_bo,
    run_eci_bo,
    run_standard_bo,
)
from .doe import latin_hypercube
from .ga import GaConfig, ga_maximize
from .gp import Dataset, GpModel, KernelParams, fit, predict, predict_many

__all__ = [
    "BoConfig",
    "CoordinateOrder",
    "Dataset",
    "GaConfig",
    "GpModel",
    "Incumbent",
    "KernelParams",
    "Problem",
    "RunRecord",
    "compute_coordinate_order",
    "eci",
    "expected_improvement",
    "fit",
    "ga_maximize",
    "latin_hypercube",
    "make_problem",
    "predict",
    "predict_many",
    "run_coordinate_line_bo",
    "run_eci_bo",
    "run_standard_bo",
]
