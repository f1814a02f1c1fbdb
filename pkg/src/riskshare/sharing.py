"""Closed-form inf-convolutions for homogeneous distortion agents.

:func:`infconv` dispatches on the shape of ``h`` and the space class and
never falls back to approximation: cases without a closed form raise
:class:`~riskshare.errors.UnsupportedCase`, pointing to the brute-force
oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .distortion import (
    DistortionFunction,
    convex_envelope,
    counter_transform,
    is_dually_subadditive,
    shape_of,
)
from .errors import IncompatibleSignClass, InvalidParameter, ShapeMismatch, UnsupportedCase
from .finite import FiniteAllocation, FiniteRandomVariable, FiniteSpace
from .riskmeasure import Distribution, QuadConfig, choquet, var

REGIMES = ("unconstrained", "comonotonic", "counter_monotonic")
SPACE_CLASSES = ("Lplus", "Lminus", "Linf")
PROVENANCE = (
    "three_inequality",
    "concave_all_equal",
    "var_formula",
    "convex_Lplus",
    "convex_Lminus",
    "convex_Linf_minus_infinity",
    "dual_subadditive_identity",
    "envelope_Lminus",
    "oracle",
)


@dataclass(frozen=True)
class InfConvResult:
    value: float
    regime: str
    provenance: str
    transform: Optional[DistortionFunction] = field(default=None, compare=False)

    def __post_init__(self):
        if self.value == -math.inf and self.provenance not in ("convex_Linf_minus_infinity", "oracle"):
            raise ValueError(f"-inf is not a valid value under provenance {self.provenance}")


@dataclass(frozen=True)
class AllocationDescriptor:
    """Symbolic optimal allocation.

    ``uniform_counter``: ``X_i = (X - m) 1_{A_i} + m_i`` with ``P(A_i) = 1/n``
    and the partition independent of ``X``. ``proportional_comonotonic``:
    ``X_i = w_i X``. ``var_tail_split``: the tail above ``VaR_{n alpha}`` is
    cut into ``n`` pieces of probability at most ``alpha``. ``degenerate``:
    ``(X, 0, ..., 0)``.
    """

    kind: str
    n: int
    side_payments: tuple
    regime: str
    weights: Optional[tuple] = None
    cell_probs: Optional[tuple] = None
    branch: Optional[str] = None
    threshold: Optional[float] = None

    def __post_init__(self):
        if self.kind == "uniform_counter":
            if self.cell_probs is None or any(abs(p - 1.0 / self.n) > 1e-15 for p in self.cell_probs):
                raise InvalidParameter("uniform_counter cells must all have probability 1/n")
        if self.kind == "proportional_comonotonic":
            w = self.weights or ()
            if len(w) != self.n or any(x < 0 for x in w) or abs(sum(w) - 1.0) > 1e-12:
                raise InvalidParameter("comonotonic weights must be nonnegative and sum to 1")

    @property
    def m(self) -> float:
        return float(sum(self.side_payments))


def _check_sign(d: Distribution, space_class: str):
    if space_class not in SPACE_CLASSES:
        raise InvalidParameter(f"unknown space class {space_class!r}")
    if space_class == "Lplus" and d.support_lo < 0:
        raise IncompatibleSignClass(f"{d.describe()} takes negative values but the space is Lplus")
    if space_class == "Lminus" and d.support_hi > 0:
        raise IncompatibleSignClass(f"{d.describe()} takes positive values but the space is Lminus")


def _check_common(n, regime):
    if int(n) != n or n < 2:
        raise InvalidParameter("need an integer n >= 2")
    if regime not in REGIMES:
        raise InvalidParameter(f"unknown regime {regime!r}")


def var_infconv(alpha: float, n: int, d: Distribution, regime: str) -> InfConvResult:
    """Unconstrained and counter-monotonic: ``VaR_{n alpha}``; comonotonic: ``VaR_alpha``."""
    _check_common(n, regime)
    if not 0 <= alpha < 1:
        raise InvalidParameter("VaR level must lie in [0, 1)")
    level = alpha if regime == "comonotonic" else n * alpha
    return InfConvResult(var(d, level), regime, "var_formula")


def infconv(
    h: DistortionFunction,
    n: int,
    d: Distribution,
    regime: str,
    space_class: str,
    q: Optional[QuadConfig] = None,
) -> InfConvResult:
    """Value of the ``n``-fold inf-convolution of ``rho_h`` at ``X ~ d``.

    Continuous laws are taken to admit an independent uniform, so the
    convex-case formulas apply as stated.
    """
    _check_common(n, regime)
    _check_sign(d, space_class)
    if h.family_tag == "var_step":
        return var_infconv(h.params["alpha"], n, d, regime)
    if regime == "comonotonic":
        return InfConvResult(choquet(h, d, q), regime, "three_inequality")
    shape = shape_of(h)
    if shape.tag in ("linear", "concave"):
        return InfConvResult(choquet(h, d, q), regime, "concave_all_equal")
    if regime == "counter_monotonic" and is_dually_subadditive(h):
        return InfConvResult(choquet(h, d, q), regime, "dual_subadditive_identity")
    if shape.tag == "convex":
        if space_class == "Linf":
            return InfConvResult(-math.inf, regime, "convex_Linf_minus_infinity")
        g = counter_transform(h, n, space_class)
        return InfConvResult(choquet(g, d, q), regime, f"convex_{space_class}", g)
    if shape.tag == "concave_convex" and regime == "counter_monotonic" and space_class == "Lminus":
        env, t0 = convex_envelope(h)
        threshold = 1.0 / (1.0 - t0) if t0 < 1 else math.inf
        if n >= threshold:
            g = counter_transform(env, n, "Lminus")
            return InfConvResult(choquet(g, d, q), regime, "envelope_Lminus", g)
        raise UnsupportedCase(f"n={n} is below 1/(1-t0) = {threshold:.4g}; use riskshare.oracle")
    raise UnsupportedCase(
        f"no closed form for {shape.tag} {h.describe()} under {regime} on {space_class}; use riskshare.oracle"
    )


def supconv(h: DistortionFunction, n: int, d: Distribution, q: Optional[QuadConfig] = None) -> float:
    """For convex ``h`` the supremum over both constrained sets is ``rho_h(X)``."""
    if int(n) != n or n < 2:
        raise InvalidParameter("need an integer n >= 2")
    tag = shape_of(h).tag
    if tag not in ("convex", "linear"):
        raise ShapeMismatch(f"sup-convolution formula needs a convex distortion, got {tag}")
    return choquet(h, d, q)


def optimal_allocation(h: DistortionFunction, n: int, d: Distribution, space_class: str) -> AllocationDescriptor:
    """One optimal allocation named by the closed-form results."""
    if int(n) != n or n < 2:
        raise InvalidParameter("need an integer n >= 2")
    _check_sign(d, space_class)
    zeros = (0.0,) * n
    if h.family_tag == "var_step":
        alpha = h.params["alpha"]
        if n * alpha >= 1:
            return AllocationDescriptor("degenerate", n, zeros, "unconstrained")
        return AllocationDescriptor(
            "var_tail_split", n, zeros, "counter_monotonic", cell_probs=(alpha,) * n, threshold=var(d, n * alpha)
        )
    tag = shape_of(h).tag
    if tag in ("concave", "linear"):
        return AllocationDescriptor("proportional_comonotonic", n, zeros, "comonotonic", weights=(1.0 / n,) * n)
    if tag == "convex":
        if space_class == "Linf":
            raise UnsupportedCase("convex h on Linf: the infimum is -inf and no optimum exists")
        branch = "jackpot" if space_class == "Lplus" else "scapegoat"
        return AllocationDescriptor(
            "uniform_counter", n, zeros, "counter_monotonic", cell_probs=(1.0 / n,) * n, branch=branch
        )
    raise UnsupportedCase(f"no named optimal allocation for {tag} distortions")


def realize_allocation(desc: AllocationDescriptor, X: FiniteRandomVariable):
    """Concrete allocation of a finite ``X``.

    Counter-monotonic kinds need a partition independent of ``X``, so they are
    built on ``X.space x coin(n)`` with ``X`` lifted; the other kinds stay on
    ``X.space``. Returns ``(allocation, X_on_that_space)``.
    """
    n = desc.n
    if desc.kind == "proportional_comonotonic":
        rows = [w * X.values for w in desc.weights]
        return FiniteAllocation.from_matrix(X.space, rows), X
    if desc.kind == "degenerate":
        rows = [X.values] + [np.zeros_like(X.values)] * (n - 1)
        return FiniteAllocation.from_matrix(X.space, rows), X
    coin = FiniteSpace.uniform(n, "c")
    space = X.space.product(coin)
    Xl = X.lift(space, coin)
    cell = np.tile(np.arange(n), X.space.size)
    if desc.kind == "uniform_counter":
        m = desc.m
        rows = [np.where(cell == i, Xl.values - m, 0.0) + desc.side_payments[i] for i in range(n)]
        return FiniteAllocation.from_matrix(space, rows), Xl
    if desc.kind == "var_tail_split":
        v = desc.threshold
        tail = Xl.values > v
        rows = [np.where(tail & (cell == i), Xl.values - v, 0.0) for i in range(n)]
        rows[0] = rows[0] + np.minimum(Xl.values, v)
        return FiniteAllocation.from_matrix(space, rows), Xl
    raise InvalidParameter(f"unknown allocation kind {desc.kind!r}")
