"""Distortion functions: construction, duality, shape tests and transforms.

A distortion is an increasing map ``h: [0, 1] -> [0, 1]`` with ``h(0) = 0``
and ``h(1) = 1``. The transforms at the bottom of the module (``g`` maps used
by the sharing and portfolio formulas) return the same type but need not
satisfy ``g(1) = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Optional

import numpy as np
from scipy.special import ndtr, ndtri

from . import _kernels
from .errors import (
    DegenerateDenominator,
    DegenerateGrid,
    InvalidParameter,
    RootNotFound,
    ShapeMismatch,
    UnknownFamily,
)

FAMILIES = (
    "power",
    "dual_power",
    "wang",
    "kt",
    "var_step",
    "es_cap",
    "appendix_a",
    "piecewise_linear",
    "composite",
    "custom",
)

DEFAULT_GRID = 1001
SHAPE_TOL = 1e-9
SUBADDITIVITY_TOL = 1e-9
ROOT_TOL = 1e-10
DERIV_STEP = 1e-6


@dataclass(frozen=True, eq=False)
class DistortionFunction:
    """Vectorised distortion ``eval`` plus its family metadata."""

    eval: Callable[[np.ndarray], np.ndarray]
    family_tag: str
    params: Mapping[str, float] = field(default_factory=dict)
    derivative: Optional[Callable[[np.ndarray], np.ndarray]] = None
    label: str = ""

    def __call__(self, t):
        out = self.eval(np.asarray(t, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    def __repr__(self):
        return f"DistortionFunction({self.describe()})"

    def describe(self) -> str:
        if self.label:
            return self.label
        inner = " ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family_tag}({inner})" if inner else self.family_tag

    @property
    def total_mass(self) -> float:
        """``g(1)``; equals 1 for members of the distortion class."""
        return float(self.eval(np.asarray(1.0)))

    @cached_property
    def _shape(self) -> "ShapeClass":
        return classify_shape(self)

    @cached_property
    def _subadditivity(self) -> "SubadditivityReport":
        return check_dual_subadditivity(self)

    def grid(self, n: int = DEFAULT_GRID) -> tuple[np.ndarray, np.ndarray]:
        t = np.linspace(0.0, 1.0, n)
        return t, np.asarray(self.eval(t), dtype=float)

    def slope(self, t):
        """Analytic derivative if known, else central differences."""
        t = np.asarray(t, dtype=float)
        if self.derivative is not None:
            return self.derivative(t)
        return _numeric_derivative(self.eval, t)


@dataclass(frozen=True)
class ShapeClass:
    tag: str
    t0: Optional[float] = None


@dataclass(frozen=True)
class SubadditivityReport:
    dually_subadditive: bool
    witness: Optional[tuple[float, float]]
    max_violation: float


def _numeric_derivative(f, t, step=DERIV_STEP):
    t = np.asarray(t, dtype=float)
    lo = np.clip(t - step, 0.0, 1.0)
    hi = np.clip(t + step, 0.0, 1.0)
    return (f(hi) - f(lo)) / (hi - lo)


def _pinned(fn):
    """Force exact endpoint values h(0)=0, h(1)=1 outside the open interval."""

    def wrapped(t):
        t = np.asarray(t, dtype=float)
        inner = np.clip(t, 0.0, 1.0)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = fn(inner)
        out = np.where(t <= 0.0, 0.0, np.where(t >= 1.0, 1.0, out))
        return out

    return wrapped


# family builders -----------------------------------------------------------


def _power(alpha):
    if not alpha > 0:
        raise InvalidParameter("power family needs alpha > 0")
    return _pinned(lambda t: t**alpha), lambda t: alpha * np.power(t, alpha - 1.0)


def _dual_power(alpha):
    if not alpha > 0:
        raise InvalidParameter("dual_power family needs alpha > 0")
    return (
        _pinned(lambda t: 1.0 - (1.0 - t) ** alpha),
        lambda t: alpha * np.power(1.0 - t, alpha - 1.0),
    )


def _wang(lam):
    if not math.isfinite(lam):
        raise InvalidParameter("wang family needs a finite lambda")

    def deriv(t):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            z = ndtri(t)
            return np.exp(-lam * z - 0.5 * lam * lam)

    return _pinned(lambda t: ndtr(ndtri(t) + lam)), deriv


def _kt(gamma):
    if not 0 < gamma < 1:
        raise InvalidParameter("kt family needs gamma in (0, 1)")

    def h(t):
        return t**gamma / (t**gamma + (1.0 - t) ** gamma) ** (1.0 / gamma)

    def deriv(t):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            s = t**gamma + (1.0 - t) ** gamma
            logd = gamma / t - (t ** (gamma - 1.0) - (1.0 - t) ** (gamma - 1.0)) / s
            return h(t) * logd

    return _pinned(h), deriv


def _var_step(alpha):
    if not 0 <= alpha < 1:
        raise InvalidParameter("var_step family needs alpha in [0, 1)")
    return _pinned(lambda t: (t > alpha).astype(float)), None


def _es_cap(beta):
    if not 0 < beta < 1:
        raise InvalidParameter("es_cap family needs beta in (0, 1)")
    return (
        _pinned(lambda t: np.minimum(t / beta, 1.0)),
        lambda t: np.where(t < beta, 1.0 / beta, 0.0),
    )


def appendix_dual(alpha: float, k: int):
    """Dual ``ht`` of the appendix family: power piece up to 1/k, then linear."""
    den = 1.0 + (k - 1) * alpha
    a = k**alpha / den
    b = k * alpha / den
    c = (1.0 - alpha) / den
    cut = 1.0 / k

    def ht(t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= cut, a * np.power(np.maximum(t, 0.0), alpha), b * t + c)

    def dht(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return np.where(t <= cut, a * alpha * np.power(np.maximum(t, 0.0), alpha - 1.0), b)

    return ht, dht


def _appendix_a(alpha, k):
    if not alpha > 0:
        raise InvalidParameter("appendix_a family needs alpha > 0")
    if k != int(k) or k < 1:
        raise InvalidParameter("appendix_a family needs a positive integer k")
    ht, dht = appendix_dual(alpha, int(k))
    return _pinned(lambda t: 1.0 - ht(1.0 - t)), lambda t: dht(1.0 - np.asarray(t))


def _piecewise_linear(xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
        raise InvalidParameter("piecewise_linear needs matching knot arrays")
    if xs[0] != 0 or xs[-1] != 1 or ys[0] != 0 or ys[-1] != 1:
        raise InvalidParameter("piecewise_linear knots must run from (0,0) to (1,1)")
    if np.any(np.diff(xs) <= 0) or np.any(np.diff(ys) < 0):
        raise InvalidParameter("piecewise_linear knots must be increasing")
    slopes = np.diff(ys) / np.diff(xs)

    def deriv(t):
        # right derivative; left one at t = 1
        seg = np.clip(np.searchsorted(xs, t, side="right") - 1, 0, slopes.size - 1)
        return slopes[seg]

    return _pinned(lambda t: np.interp(t, xs, ys)), deriv


def make_distortion(family_tag: str, params: Optional[Mapping[str, float]] = None, **kw) -> DistortionFunction:
    """Build a member of a named family.

    ``params`` keys follow the config syntax (``alpha``, ``lambda``,
    ``gamma``, ``beta``, ``k``); ``lam`` is accepted for ``lambda``. The
    piecewise-linear family takes ``knots`` as a sequence of ``(t, h)`` pairs.
    """
    p = dict(params or {})
    p.update(kw)
    if "lam" in p:
        p["lambda"] = p.pop("lam")

    def need(*names):
        missing = [nm for nm in names if nm not in p]
        if missing:
            raise InvalidParameter(f"{family_tag} needs parameter(s) {', '.join(missing)}")
        extra = set(p) - set(names)
        if extra:
            raise InvalidParameter(f"{family_tag} does not accept {', '.join(sorted(extra))}")
        return [p[nm] for nm in names]

    if family_tag == "power":
        (alpha,) = need("alpha")
        fn, d = _power(float(alpha))
    elif family_tag == "dual_power":
        (alpha,) = need("alpha")
        fn, d = _dual_power(float(alpha))
    elif family_tag == "wang":
        (lam,) = need("lambda")
        fn, d = _wang(float(lam))
    elif family_tag == "kt":
        (gamma,) = need("gamma")
        fn, d = _kt(float(gamma))
    elif family_tag == "var_step":
        (alpha,) = need("alpha")
        fn, d = _var_step(float(alpha))
    elif family_tag == "es_cap":
        (beta,) = need("beta")
        fn, d = _es_cap(float(beta))
    elif family_tag == "appendix_a":
        alpha, k = need("alpha", "k")
        fn, d = _appendix_a(float(alpha), k)
        p["k"] = int(k)
    elif family_tag == "piecewise_linear":
        (knots,) = need("knots")
        knots = [(float(a), float(b)) for a, b in knots]
        fn, d = _piecewise_linear([a for a, _ in knots], [b for _, b in knots])
        label = "piecewise_linear(" + ",".join(f"{a:g}:{b:g}" for a, b in knots) + ")"
        return DistortionFunction(fn, family_tag, {}, d, label)
    elif family_tag in ("composite", "custom"):
        raise InvalidParameter(f"{family_tag} distortions are built with custom_distortion()")
    else:
        raise UnknownFamily(f"unknown distortion family {family_tag!r}")
    params_out = {k: (int(v) if k == "k" else float(v)) for k, v in p.items()}
    return DistortionFunction(fn, family_tag, params_out, d)


def identity() -> DistortionFunction:
    return make_distortion("power", alpha=1.0)


def custom_distortion(fn, derivative=None, label="custom", check=True) -> DistortionFunction:
    """Wrap a user callable; endpoints are pinned and monotonicity checked."""
    h = DistortionFunction(_pinned(fn), "custom", {}, derivative, label)
    if check:
        _, H = h.grid()
        if np.any(np.diff(H) < -1e-12):
            raise InvalidParameter("custom distortion is not nondecreasing")
    return h


def dual(h: DistortionFunction) -> DistortionFunction:
    """``t -> 1 - h(1 - t)``."""
    f = h.eval

    def ht(t):
        return 1.0 - f(1.0 - np.asarray(t, dtype=float))

    d = None
    if h.derivative is not None:
        hd = h.derivative

        def d(t):
            return hd(1.0 - np.asarray(t, dtype=float))

    return DistortionFunction(ht, "composite", {}, d, f"dual({h.describe()})")


# shape ---------------------------------------------------------------------


def _check_grid(grid_n):
    if grid_n < 101:
        raise DegenerateGrid(f"grid_n={grid_n} is below the minimum of 101")


def _tangency_root(h: DistortionFunction, tol: float = ROOT_TOL, grid_n: int = DEFAULT_GRID):
    """Root of ``h'(t) t - h(t)`` where it turns from negative to positive.

    Returns ``None`` when no sign change exists on the open interval.
    """

    def d(t):
        return float(h.slope(np.asarray(t)) * t - h(t))

    ts = np.linspace(0.0, 1.0, grid_n)[1:-1]
    vals = np.asarray(h.slope(ts)) * ts - np.asarray(h(ts))
    finite = np.isfinite(vals)
    ts, vals = ts[finite], vals[finite]
    pos = np.nonzero(vals > 0)[0]
    if pos.size == 0:
        return None
    k = pos[0]
    if k == 0:
        return None
    a, b = float(ts[k - 1]), float(ts[k])
    if not d(a) <= 0:
        return None
    while b - a > tol:
        mid = 0.5 * (a + b)
        if d(mid) > 0:
            b = mid
        else:
            a = mid
    return 0.5 * (a + b)


def classify_shape(h: DistortionFunction, grid_n: int = DEFAULT_GRID, tol: float = SHAPE_TOL) -> ShapeClass:
    """Classify by the signs of discrete second differences on a uniform grid."""
    _check_grid(grid_n)
    t, H = h.grid(grid_n)
    if np.max(np.abs(H - t)) <= 1e-12:
        return ShapeClass("linear")
    d2 = H[:-2] - 2.0 * H[1:-1] + H[2:]
    if np.all(d2 <= tol):
        return ShapeClass("concave")
    if np.all(d2 >= -tol):
        return ShapeClass("convex")
    signs = np.sign(d2[np.abs(d2) > tol])
    changes = np.nonzero(np.diff(signs))[0]
    if changes.size == 1 and signs[0] < 0 < signs[-1]:
        t0 = _tangency_root(h, grid_n=grid_n)
        return ShapeClass("concave_convex", 1.0 if t0 is None else t0)
    return ShapeClass("other")


def shape_of(h: DistortionFunction) -> ShapeClass:
    """Cached :func:`classify_shape` with default grid and tolerance."""
    return h._shape


def check_dual_subadditivity(
    h: DistortionFunction, grid_n: int = DEFAULT_GRID, tol: float = SUBADDITIVITY_TOL
) -> SubadditivityReport:
    """Scan all grid pairs ``x + y <= 1`` for violations of either inequality.

    A grid scan cannot see violations between grid points; it is a check,
    not a proof.
    """
    _check_grid(grid_n)
    t, H = h.grid(grid_n)
    sub, si, sj, sup, ui, uj = _kernels.pair_violation(np.ascontiguousarray(H))
    worst = max(sub, sup)
    witness = None
    if worst > tol:
        i, j = (si, sj) if sub >= sup else (ui, uj)
        witness = (float(t[i]), float(t[j]))
    return SubadditivityReport(worst <= tol, witness, float(max(worst, 0.0)))


def is_dually_subadditive(h: DistortionFunction) -> bool:
    return h._subadditivity.dually_subadditive


def convex_envelope(h: DistortionFunction, tol: float = ROOT_TOL) -> tuple[DistortionFunction, float]:
    """Chord ``h(t0)/t0 * t`` on ``[0, t0]`` glued to ``h`` on ``[t0, 1]``."""
    shape = shape_of(h)
    if shape.tag != "concave_convex":
        raise ShapeMismatch(f"convex envelope needs a concave-convex distortion, got {shape.tag}")
    t0 = _tangency_root(h, tol=tol)
    if t0 is None:
        raise RootNotFound("h'(t) t - h(t) has no sign change on (0, 1)")
    slope = float(h(t0)) / t0
    f, fd = h.eval, h.slope

    def env(t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= t0, slope * t, f(t))

    def denv(t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= t0, slope, fd(t))

    label = f"envelope({h.describe()}, t0={t0:.6g})"
    return DistortionFunction(env, "composite", {"t0": t0}, denv, label), t0


# transforms ----------------------------------------------------------------


def _require_convex(h: DistortionFunction, what: str):
    tag = shape_of(h).tag
    if tag not in ("convex", "linear"):
        raise ShapeMismatch(f"{what} needs a convex distortion, got {tag}")


def counter_transform(h: DistortionFunction, n: int, space_class: str) -> DistortionFunction:
    """Riskmetric distortion of the uniform counter-monotonic allocation.

    ``Lplus``: ``g(t) = n h(t/n)``.
    ``Lminus``: ``g(t) = n h(1 - (1-t)/n) - n h(1 - 1/n)``.
    """
    if n < 2:
        raise InvalidParameter("need n >= 2 agents")
    _require_convex(h, "counter_transform")
    f = h.eval
    if space_class == "Lplus":

        def g(t):
            return n * f(np.asarray(t, dtype=float) / n)

        d = None if h.derivative is None else (lambda t, hd=h.derivative: hd(np.asarray(t) / n))
    elif space_class == "Lminus":
        base = float(f(np.asarray(1.0 - 1.0 / n)))

        def g(t):
            # vectorised and scalar evaluations of h can differ by an ulp near 1 - 1/n
            return np.maximum(n * (f(1.0 - (1.0 - np.asarray(t, dtype=float)) / n) - base), 0.0)

        d = None if h.derivative is None else (lambda t, hd=h.derivative: hd(1.0 - (1.0 - np.asarray(t)) / n))
    else:
        raise InvalidParameter(f"counter_transform needs Lplus or Lminus, got {space_class!r}")
    return DistortionFunction(g, "composite", {"n": float(n)}, d, f"counter_{space_class}({h.describe()}, n={n})")


def portfolio_transform(h: DistortionFunction, n: int) -> DistortionFunction:
    """``g(t) = (1 - h(1 - t/n)) / (1 - h(1 - 1/n))``, a member of the class."""
    if n < 2:
        raise InvalidParameter("need n >= 2 agents")
    _require_convex(h, "portfolio_transform")
    f = h.eval
    den = 1.0 - float(f(np.asarray(1.0 - 1.0 / n)))
    if not den > 0:
        raise DegenerateDenominator(f"h(1 - 1/{n}) = 1")

    def g(t):
        return (1.0 - f(1.0 - np.asarray(t, dtype=float) / n)) / den

    d = None
    if h.derivative is not None:
        hd = h.derivative

        def d(t):
            return hd(1.0 - np.asarray(t, dtype=float) / n) / (n * den)

    return DistortionFunction(g, "composite", {"n": float(n)}, d, f"portfolio({h.describe()}, n={n})")
