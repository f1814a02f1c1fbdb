"""Choquet integrals, VaR and ES for laws given by quantile and survival.

Continuous laws are integrated adaptively (QUADPACK through
``scipy.integrate.quad``) on the survival form

    rho_g(X) = int_0^inf g(S(x)) dx - int_-inf^0 (g(1) - g(S(x))) dx,

which stays correct for maps with ``g(1) != 1``. Finite random variables are
evaluated exactly by sorted accumulation in :func:`choquet_finite`.
"""

from __future__ import annotations

import logging
import math
import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

import numpy as np
from scipy import integrate
from scipy.integrate import IntegrationWarning
from scipy.special import ndtr, ndtri

from .distortion import DistortionFunction
from .errors import DivergentIntegral, InvalidParameter, UnknownFamily
from .finite import FiniteRandomVariable, _as_fraction

log = logging.getLogger(__name__)

SIGN_CLASSES = ("Lplus", "Lminus", "Linf")
# cumulative-probability comparisons on finite laws
_PROB_EPS = 1e-12


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-8
    max_subdivisions: int = 1 << 16
    tail_cut: float = 1e-9

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise InvalidParameter("abs_tol must be positive")
        if not 0 < self.tail_cut <= 1e-3:
            raise InvalidParameter("tail_cut must lie in (0, 1e-3]")
        if self.max_subdivisions < 1:
            raise InvalidParameter("max_subdivisions must be positive")

    @classmethod
    def default(cls) -> "QuadConfig":
        """Defaults, with ``RISKSHARE_TOL`` overriding ``abs_tol``."""
        env = os.environ.get("RISKSHARE_TOL", "").strip()
        if env:
            try:
                return cls(abs_tol=float(env))
            except ValueError as exc:
                raise InvalidParameter(f"RISKSHARE_TOL={env!r} is not a positive real") from exc
        return cls()


def sign_class_of(lo: float, hi: float) -> str:
    if lo >= 0:
        return "Lplus"
    if hi <= 0:
        return "Lminus"
    return "Linf"


@dataclass(frozen=True, eq=False)
class Distribution:
    """A law on the real line.

    ``quantile`` is the left-continuous inverse of the CDF on ``(0, 1)``;
    ``survival(x) = P(X > x)``. Finite laws also carry ``atoms`` as sorted
    ``(value, probability)`` pairs with exact probabilities.
    """

    quantile: Callable[[np.ndarray], np.ndarray]
    survival: Callable[[np.ndarray], np.ndarray]
    support_lo: float
    support_hi: float
    family_tag: str
    params: Mapping[str, float] = field(default_factory=dict)
    atoms: Optional[tuple] = None

    def __post_init__(self):
        if not self.support_lo <= self.support_hi:
            raise InvalidParameter("support_lo exceeds support_hi")

    @property
    def sign_class(self) -> str:
        return sign_class_of(self.support_lo, self.support_hi)

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.support_lo) and math.isfinite(self.support_hi)

    def describe(self) -> str:
        if self.family_tag == "negated":
            return f"negated({self.params['of']})"
        inner = " ".join(f"{k}={v:g}" for k, v in self.params.items() if not isinstance(v, str))
        return f"{self.family_tag}({inner})" if inner else self.family_tag

    def __repr__(self):
        return f"Distribution({self.describe()})"

    # factories -------------------------------------------------------------

    @classmethod
    def uniform(cls, a: float = 0.0, b: float = 1.0) -> "Distribution":
        a, b = float(a), float(b)
        if not a < b:
            raise InvalidParameter("uniform needs a < b")
        w = b - a
        return cls(
            lambda p: a + w * np.asarray(p, dtype=float),
            lambda x: np.clip((b - np.asarray(x, dtype=float)) / w, 0.0, 1.0),
            a,
            b,
            "uniform",
            {"a": a, "b": b},
        )

    @classmethod
    def pareto(cls, shape: float, scale: float) -> "Distribution":
        """Pareto Type I: ``P(X > x) = (scale / x)^shape`` for ``x >= scale``."""
        shape, scale = float(shape), float(scale)
        if not (shape > 0 and scale > 0):
            raise InvalidParameter("pareto needs shape > 0 and scale > 0")
        return cls(
            lambda p: scale * np.power(1.0 - np.asarray(p, dtype=float), -1.0 / shape),
            lambda x: np.where(
                np.asarray(x) < scale, 1.0, np.power(scale / np.maximum(np.asarray(x, dtype=float), scale), shape)
            ),
            scale,
            math.inf,
            "pareto",
            {"shape": shape, "scale": scale},
        )

    @classmethod
    def lomax(cls, shape: float, scale: float) -> "Distribution":
        """Pareto Type II: ``P(X > x) = (1 + x / scale)^-shape`` for ``x >= 0``."""
        shape, scale = float(shape), float(scale)
        if not (shape > 0 and scale > 0):
            raise InvalidParameter("lomax needs shape > 0 and scale > 0")
        return cls(
            lambda p: scale * (np.power(1.0 - np.asarray(p, dtype=float), -1.0 / shape) - 1.0),
            lambda x: np.power(1.0 + np.maximum(np.asarray(x, dtype=float), 0.0) / scale, -shape),
            0.0,
            math.inf,
            "custom",
            {"lomax_shape": shape, "lomax_scale": scale},
        )

    @classmethod
    def lognormal(cls, mu: float = 0.0, sigma: float = 1.0) -> "Distribution":
        mu, sigma = float(mu), float(sigma)
        if not sigma > 0:
            raise InvalidParameter("lognormal needs sigma > 0")

        def surv(x):
            x = np.asarray(x, dtype=float)
            with np.errstate(divide="ignore", invalid="ignore"):
                z = (np.log(np.maximum(x, 0.0)) - mu) / sigma
            return np.where(x <= 0, 1.0, ndtr(-z))

        return cls(
            lambda p: np.exp(mu + sigma * ndtri(np.asarray(p, dtype=float))),
            surv,
            0.0,
            math.inf,
            "lognormal",
            {"mu": mu, "sigma": sigma},
        )

    @classmethod
    def finite(cls, values: Sequence[float], probs: Sequence, family_tag: str = "finite", params=None) -> "Distribution":
        """Discrete law; repeated values are merged, probabilities kept exact."""
        if len(values) != len(probs) or not values:
            raise InvalidParameter("finite law needs matching, non-empty values and probs")
        merged: dict[float, Fraction] = {}
        for v, p in zip(values, probs):
            p = _as_fraction(p)
            if p < 0:
                raise InvalidParameter("probabilities must be nonnegative")
            if p > 0:
                merged[float(v)] = merged.get(float(v), Fraction(0)) + p
        if sum(merged.values()) != 1:
            raise InvalidParameter(f"probabilities sum to {sum(merged.values())}, not 1")
        atoms = tuple(sorted(merged.items()))
        vals = np.array([v for v, _ in atoms])
        cum = np.cumsum([float(p) for _, p in atoms])
        cum[-1] = 1.0

        def quantile(p):
            p = np.asarray(p, dtype=float)
            k = np.searchsorted(cum, p - _PROB_EPS, side="left")
            return vals[np.clip(k, 0, vals.size - 1)]

        def survival(x):
            x = np.asarray(x, dtype=float)
            k = np.searchsorted(vals, x, side="right")
            below = np.concatenate(([0.0], cum))[k]
            return np.clip(1.0 - below, 0.0, 1.0)

        return cls(quantile, survival, float(vals[0]), float(vals[-1]), family_tag, dict(params or {}), atoms)

    @classmethod
    def bernoulli_scaled(cls, p, scale: float = 1.0) -> "Distribution":
        """``scale`` with probability ``p``, else 0."""
        p = _as_fraction(p)
        if not 0 <= p <= 1:
            raise InvalidParameter("bernoulli_scaled needs p in [0, 1]")
        return cls.finite([0.0, float(scale)], [1 - p, p], "bernoulli_scaled", {"p": float(p), "scale": float(scale)})

    @classmethod
    def point_mass(cls, c: float) -> "Distribution":
        return cls.finite([float(c)], [1], "point_mass", {"c": float(c)})

    @classmethod
    def custom(cls, quantile, survival, support_lo, support_hi, params=None) -> "Distribution":
        return cls(quantile, survival, float(support_lo), float(support_hi), "custom", dict(params or {}))

    def negated(self) -> "Distribution":
        """Law of ``-X``."""
        if self.atoms is not None:
            return Distribution.finite(
                [-v for v, _ in self.atoms], [p for _, p in self.atoms], "negated", {"of": self.describe()}
            )
        q, s = self.quantile, self.survival
        # continuous laws: the left/right limits at jumps coincide
        return Distribution(
            lambda p: -q(1.0 - np.asarray(p, dtype=float)),
            lambda x: 1.0 - s(-np.asarray(x, dtype=float)),
            -self.support_hi,
            -self.support_lo,
            "negated",
            {"of": self.describe()},
        )


def make_distribution(family_tag: str, params: Optional[Mapping] = None, **kw) -> Distribution:
    p = dict(params or {})
    p.update(kw)
    builders = {
        "uniform": (Distribution.uniform, ("a", "b")),
        "pareto": (Distribution.pareto, ("shape", "scale")),
        "lomax": (Distribution.lomax, ("shape", "scale")),
        "lognormal": (Distribution.lognormal, ("mu", "sigma")),
        "bernoulli_scaled": (Distribution.bernoulli_scaled, ("p", "scale")),
        "point_mass": (Distribution.point_mass, ("c",)),
    }
    if family_tag not in builders:
        raise UnknownFamily(f"unknown distribution family {family_tag!r}")
    fn, names = builders[family_tag]
    extra = set(p) - set(names)
    if extra:
        raise InvalidParameter(f"{family_tag} does not accept {', '.join(sorted(extra))}")
    missing = [k for k in names if k not in p]
    if missing:
        raise InvalidParameter(f"{family_tag} needs parameter(s) {', '.join(missing)}")
    return fn(*(p[k] for k in names))


# quadrature ----------------------------------------------------------------


@dataclass
class ChoquetDetail:
    value: float
    abserr: float
    tail_mass: float = 0.0
    notes: list = field(default_factory=list)


def _quad(f, a, b, q: QuadConfig, points=None):
    if a == b:
        return 0.0, 0.0
    kwargs = dict(epsabs=q.abs_tol, epsrel=1e-12, limit=q.max_subdivisions, full_output=1)
    if points is not None and math.isfinite(a) and math.isfinite(b):
        pts = [p for p in points if a < p < b]
        if pts:
            kwargs["points"] = pts
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        res = integrate.quad(lambda x: float(f(x)), a, b, **kwargs)
    val, err = res[0], res[1]
    # with full_output, a fourth entry is QUADPACK's warning text
    msg = res[3] if len(res) > 3 else ""
    if not math.isfinite(val) or (msg and err > math.sqrt(q.abs_tol)):
        first = msg.split(".")[0].strip()
        raise DivergentIntegral(f"quadrature on [{a:g}, {b:g}] did not settle ({first}; err={err:.3g})")
    return val, err


_TAIL_GROWTH = 4.0
_TAIL_REACH = 1e300


def _tail_quad(f, start: float, direction: int, q: QuadConfig):
    """``int f`` from ``start`` to ``direction * inf`` for a nonnegative ``f``.

    QUADPACK's infinite-range rule cannot tell slow decay from divergence, so
    the tail is cut into geometrically growing blocks. Once the block sums
    shrink geometrically, the rest is bounded by the ratio series; if the
    blocks never settle before ``1e300`` the integral is reported divergent.
    """
    width = max(abs(start), 1.0)
    x0, total, err, prev = start, 0.0, 0.0, None
    while abs(x0) < _TAIL_REACH:
        x1 = x0 + direction * width
        a, b = (x0, x1) if direction > 0 else (x1, x0)
        v, e = _quad(f, a, b, q)
        total += v
        err += e
        if prev is not None:
            if v == 0.0:
                return total, err
            r = v / prev if prev > 0 else math.inf
            if r < 1.0 and v * r / (1.0 - r) < 0.01 * q.abs_tol:
                return total, err + v * r / (1.0 - r)
        prev = v
        x0 = x1
        width *= _TAIL_GROWTH
    raise DivergentIntegral(f"tail integral from {start:g} does not settle (partial sum {total:.6g})")


def _segments(lo, hi, d: Distribution, q: QuadConfig):
    """Integration pieces of ``[lo, hi]``; tails beyond the cut quantiles are separate."""
    cuts = []
    if d.atoms is not None:
        cuts = [v for v, _ in d.atoms]
    pieces = []
    inner_lo, inner_hi = lo, hi
    if not math.isfinite(lo):
        inner_lo = min(float(d.quantile(q.tail_cut)), hi)
        pieces.append((lo, inner_lo, True))
    if not math.isfinite(hi):
        inner_hi = max(float(d.quantile(1.0 - q.tail_cut)), inner_lo)
    edges = [inner_lo] + sorted(c for c in cuts if inner_lo < c < inner_hi) + [inner_hi]
    for a, b in zip(edges[:-1], edges[1:]):
        pieces.append((a, b, False))
    if not math.isfinite(hi):
        pieces.append((inner_hi, hi, True))
    return [(a, b, t) for a, b, t in pieces if a < b]


def choquet_detail(h: DistortionFunction, d: Distribution, q: Optional[QuadConfig] = None) -> ChoquetDetail:
    """Choquet integral with error estimate and tail bookkeeping."""
    q = q or QuadConfig.default()
    if h.family_tag == "var_step":
        return ChoquetDetail(var(d, h.params["alpha"]), 0.0, notes=["var_step: quantile, no quadrature"])
    g1 = h.total_mass
    lo, hi = d.support_lo, d.support_hi
    S = d.survival
    total, err, tail = 0.0, 0.0, 0.0
    notes = []

    def run(f, a, b):
        nonlocal total, err, tail
        for x0, x1, is_tail in _segments(a, b, d, q):
            if x1 == math.inf:
                v, e = _tail_quad(f, x0, 1, q)
            elif x0 == -math.inf:
                v, e = _tail_quad(f, x1, -1, q)
            else:
                v, e = _quad(f, x0, x1, q)
            total += v
            err += e
            if is_tail:
                tail += abs(v)

    # positive part
    if hi > 0:
        a = max(lo, 0.0)
        total += g1 * a
        run(lambda x: h.eval(S(x)), a, hi)
    # negative part, subtracted
    if lo < 0:
        b = min(hi, 0.0)
        before = total
        run(lambda x: g1 - h.eval(S(x)), lo, b)
        neg = total - before
        total = before - neg
        if hi < 0:
            total -= g1 * (0.0 - hi)
    if tail > 0:
        notes.append(f"tails beyond quantile levels {q.tail_cut:g} integrated separately: {tail:.3g}")
        log.info("choquet %s on %s: %s", h.describe(), d.describe(), notes[-1])
    return ChoquetDetail(total, err, tail, notes)


def choquet(h: DistortionFunction, d: Distribution, q: Optional[QuadConfig] = None) -> float:
    """``rho_h(X)`` for ``X ~ d``."""
    return choquet_detail(h, d, q).value


def choquet_quantile(h: DistortionFunction, d: Distribution, q: Optional[QuadConfig] = None) -> float:
    """Second route: ``int_0^1 Q(1 - t) h'(t) dt`` (needs an absolutely continuous ``h``)."""
    q = q or QuadConfig.default()
    if h.derivative is None:
        raise InvalidParameter("quantile route needs an analytic derivative")
    hd = h.derivative
    val, _ = _quad(lambda t: d.quantile(1.0 - t) * hd(t), 0.0, 1.0, q)
    return val


def var(d: Distribution, alpha: float) -> float:
    """``inf{x : P(X <= x) >= 1 - alpha}``; levels ``alpha >= 1`` give ``support_lo``."""
    if alpha < 0:
        raise InvalidParameter("VaR level must be nonnegative")
    if alpha >= 1:
        return float(d.support_lo)
    if alpha == 0:
        return float(d.support_hi)
    return float(d.quantile(1.0 - alpha))


def es(d: Distribution, beta: float, q: Optional[QuadConfig] = None) -> float:
    """``(1/beta) int_0^beta VaR_g dg``."""
    if not 0 < beta < 1:
        raise InvalidParameter("ES level must lie in (0, 1)")
    q = q or QuadConfig.default()
    if d.atoms is not None:
        # integrate piecewise between the levels where the quantile jumps
        cum = np.cumsum([float(p) for _, p in d.atoms])
        pts = sorted({1.0 - c for c in cum if 0 < 1.0 - c < beta})
        edges = [0.0] + pts + [beta]
        total = sum(_quad(lambda g: var(d, g), a, b, q)[0] for a, b in zip(edges[:-1], edges[1:]))
        return total / beta
    val, _ = _quad(lambda g: d.quantile(1.0 - g), 0.0, beta, q)
    return val / beta


def choquet_finite(h: DistortionFunction, x) -> float:
    """Exact Choquet sum for a finite random variable (or a finite law).

    Values are visited in decreasing order; each contributes its value times
    the increment of ``h`` at the exact cumulative probability.
    """
    if isinstance(x, FiniteRandomVariable):
        law = x.law()
    elif isinstance(x, Distribution) and x.atoms is not None:
        law = dict(x.atoms)
    else:
        raise InvalidParameter("choquet_finite needs a finite random variable")
    cum = Fraction(0)
    prev = 0.0
    acc = 0.0
    for v in sorted(law, reverse=True):
        cum += law[v]
        cur = float(h(float(cum)))
        acc += v * (cur - prev)
        prev = cur
    return acc
