"""Optimal risky proportion for a fund shared by ``n`` distortion agents.

The manager invests a fraction ``lam`` of the fund in a nonnegative risky
payoff ``X`` at cost ``c(lam)``. The optimum is

    lam* = min(c'^-1(rho_T(X)), c'^-1(W)),  clamped to [0, 1],

where ``T`` is the dual ``1 - h(1 - t)`` for concave ``h`` and the
normalised counter-monotonic transform for convex ``h``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .distortion import DistortionFunction, dual, make_distortion, portfolio_transform, shape_of
from .errors import InvalidParameter, MarginalNotInvertible, RiskShareError, ShapeMismatch
from .riskmeasure import Distribution, QuadConfig, choquet

INVERSE_TOL = 1e-10
BINDINGS = ("interior", "wealth_constrained", "boundary")


@dataclass(frozen=True, eq=False)
class CostModel:
    """Increasing convex cost with ``cost(0) = 0``."""

    cost: Callable[[float], float]
    marginal: Callable[[float], float]
    marginal_inverse: Optional[Callable[[float], float]] = None
    label: str = "custom"

    def __post_init__(self):
        if abs(self.cost(0.0)) > 1e-12:
            raise InvalidParameter("cost(0) must be 0")
        grid = np.linspace(0.0, 1.0, 101)
        d = np.array([self.marginal(x) for x in grid])
        if np.any(np.diff(d) < -1e-12):
            raise InvalidParameter("marginal cost must be nondecreasing (convex cost)")

    @classmethod
    def quadratic(cls, a: float = 1.0) -> "CostModel":
        """``c(lam) = a lam^2 / 2``."""
        if not a > 0:
            raise InvalidParameter("quadratic cost needs a > 0")
        return cls(lambda x: 0.5 * a * x * x, lambda x: a * x, lambda y: y / a, f"quadratic(a={a:g})")

    @classmethod
    def power(cls, p: float, a: float = 1.0) -> "CostModel":
        """``c(lam) = a lam^p / p`` for ``p > 1``."""
        if not (p > 1 and a > 0):
            raise InvalidParameter("power cost needs p > 1 and a > 0")
        return cls(
            lambda x: a * x**p / p,
            lambda x: a * x ** (p - 1),
            lambda y: (max(y, 0.0) / a) ** (1.0 / (p - 1)),
            f"power(p={p:g},a={a:g})",
        )

    def inverse(self, y: float) -> float:
        """``c'^-1(y)``; analytic when supplied, else bisection on [0, 1].

        Bisection cannot see past the interval, so values of ``y`` outside
        ``[c'(0), c'(1)]`` map to the nearer endpoint.
        """
        if self.marginal_inverse is not None:
            return float(self.marginal_inverse(y))
        lo, hi = 0.0, 1.0
        if not (math.isfinite(y)):
            raise MarginalNotInvertible(f"cannot invert the marginal cost at {y}")
        if y <= self.marginal(lo):
            return lo
        if y >= self.marginal(hi):
            return hi
        while hi - lo > INVERSE_TOL:
            mid = 0.5 * (lo + hi)
            if self.marginal(mid) < y:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)


@dataclass(frozen=True, eq=False)
class PortfolioProblem:
    h: DistortionFunction
    n: int
    X: Distribution
    cost: CostModel
    W: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvalidParameter("need an integer n >= 2")
        if self.X.support_lo < 0:
            raise InvalidParameter("the risky payoff must be nonnegative")
        if not self.W > 0:
            raise InvalidParameter("initial endowment W must be positive")


@dataclass(frozen=True)
class LambdaSolution:
    lambda_star: float
    binding: str
    objective_value: float
    target_value: float
    branch: str


def target_distortion(h: DistortionFunction, n: int) -> tuple[DistortionFunction, str]:
    tag = shape_of(h).tag
    if tag in ("concave", "linear"):
        return dual(h), "concave"
    if tag == "convex":
        return portfolio_transform(h, n), "convex"
    raise ShapeMismatch(f"no optimal-investment formula for {tag} distortions")


def optimal_lambda(p: PortfolioProblem, q: Optional[QuadConfig] = None) -> LambdaSolution:
    """Closed-form ``lam*`` (the payoff is assumed to admit an independent uniform)."""
    T, branch = target_distortion(p.h, p.n)
    rho = choquet(T, p.X, q)
    a = p.cost.inverse(rho)
    b = p.cost.inverse(p.W)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise MarginalNotInvertible("marginal cost inverse is not finite")
    lam, binding = (b, "wealth_constrained") if b < a else (a, "interior")
    if lam > 1.0:
        lam, binding = 1.0, "boundary"
    elif lam < 0.0:
        lam, binding = 0.0, "boundary"
    obj = -lam * rho + p.cost.cost(lam) - p.W
    return LambdaSolution(lam, binding, obj, rho, branch)


@dataclass(frozen=True)
class SweepRow:
    param: float
    n: int
    lambda_star: Optional[float]
    binding: str
    error: str = ""


_SWEEP_PARAM = {"power": "alpha", "dual_power": "alpha", "wang": "lambda", "appendix_a": "alpha", "kt": "gamma"}


def sweep(
    family_tag: str,
    param_grid: Sequence[float],
    n_list: Sequence[int],
    X: Distribution,
    cost: CostModel,
    W: float,
    fixed: Optional[Mapping[str, float]] = None,
    q: Optional[QuadConfig] = None,
) -> list[SweepRow]:
    """``lam*`` over ``(param, n)`` in lexicographic order.

    A row whose problem fails keeps its place with an empty ``lambda_star``.
    """
    name = _SWEEP_PARAM.get(family_tag)
    if name is None:
        raise InvalidParameter(f"no sweep parameter defined for family {family_tag!r}")
    rows = []
    for param in sorted(param_grid):
        for n in sorted(n_list):
            try:
                h = make_distortion(family_tag, {name: param, **dict(fixed or {})})
                sol = optimal_lambda(PortfolioProblem(h, n, X, cost, W), q)
                rows.append(SweepRow(float(param), int(n), sol.lambda_star, sol.binding))
            except RiskShareError as exc:
                rows.append(SweepRow(float(param), int(n), None, "", f"{type(exc).__name__}: {exc}"))
    return rows


def write_sweep_csv(rows: Iterable[SweepRow], fh, digits: int = 6) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["param", "n", "lambda_star", "binding"])
    for r in rows:
        lam = "" if r.lambda_star is None else f"{r.lambda_star:.{digits}g}"
        w.writerow([f"{r.param:.{digits}g}", r.n, lam, r.binding])
