"""Optimal risk sharing under distortion risk measures.

Closed-form inf-convolutions (:mod:`riskshare.sharing`), Choquet integrals
(:mod:`riskshare.riskmeasure`), distortion transforms
(:mod:`riskshare.distortion`), optimal investment
(:mod:`riskshare.portfolio`) and a brute-force finite-space oracle
(:mod:`riskshare.oracle`).
"""

from .distortion import (
    DistortionFunction,
    ShapeClass,
    SubadditivityReport,
    check_dual_subadditivity,
    classify_shape,
    convex_envelope,
    counter_transform,
    custom_distortion,
    dual,
    identity,
    make_distortion,
    portfolio_transform,
)
from .errors import RiskShareError
from .finite import FiniteAllocation, FiniteRandomVariable, FiniteSpace
from .portfolio import CostModel, LambdaSolution, PortfolioProblem, optimal_lambda, sweep
from .riskmeasure import Distribution, QuadConfig, choquet, choquet_finite, es, var
from .sharing import (
    AllocationDescriptor,
    InfConvResult,
    infconv,
    optimal_allocation,
    realize_allocation,
    supconv,
    var_infconv,
)

__version__ = "0.1.0"

__all__ = [
    "AllocationDescriptor",
    "CostModel",
    "Distribution",
    "DistortionFunction",
    "FiniteAllocation",
    "FiniteRandomVariable",
    "FiniteSpace",
    "InfConvResult",
    "LambdaSolution",
    "PortfolioProblem",
    "QuadConfig",
    "RiskShareError",
    "ShapeClass",
    "SubadditivityReport",
    "check_dual_subadditivity",
    "choquet",
    "choquet_finite",
    "classify_shape",
    "convex_envelope",
    "counter_transform",
    "custom_distortion",
    "dual",
    "es",
    "identity",
    "infconv",
    "make_distortion",
    "optimal_allocation",
    "optimal_lambda",
    "portfolio_transform",
    "realize_allocation",
    "supconv",
    "sweep",
    "var",
    "var_infconv",
]
