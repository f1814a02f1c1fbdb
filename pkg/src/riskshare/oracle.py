"""Brute-force ground truth on small finite probability spaces.

Allocations are enumerated on a value grid (every agent but the last picks a
grid value per atom; the last absorbs the remainder), filtered by the
dependence constraint of the regime, and scored by the agents' risk
functionals. For ``n >= 3`` homogeneous Choquet agents under counter-
monotonicity the search runs over the indicator representation
``X_i = (X - m) 1_{A_i} + m_i`` instead, with set partitions in canonical
(restricted growth) form, plus a sweep over allocations with at most two
non-constant components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .distortion import DistortionFunction
from .errors import InvalidParameter, NotRepresentable, TooLarge, UsageError
from .finite import FiniteAllocation, FiniteRandomVariable, FiniteSpace, _as_fraction
from .riskmeasure import choquet_finite

BUDGET = 10**7
MAX_ATOMS = 20
TIE_EPS = 1e-12
DEP_TOL = 1e-12
_MODES = {"unconstrained": 0, "counter_monotonic": 1, "comonotonic": 2, "sequential": 3}


# risk functionals on finite spaces -----------------------------------------


class ChoquetMeasure:
    """``rho_h`` on a finite space, evaluated through a subset table."""

    def __init__(self, h: DistortionFunction):
        self.h = h
        self._tables: dict = {}

    def __repr__(self):
        return f"ChoquetMeasure({self.h.describe()})"

    def table(self, space: FiniteSpace) -> np.ndarray:
        if space not in self._tables:
            probs = space.subset_probabilities()
            self._tables[space] = np.asarray(self.h(np.array([float(p) for p in probs])), dtype=float)
        return self._tables[space]

    def __call__(self, x: FiniteRandomVariable) -> float:
        return choquet_finite(self.h, x)

    def evaluate_rows(self, V: np.ndarray, space: FiniteSpace) -> np.ndarray:
        return _kernels.choquet_rows(np.ascontiguousarray(V, dtype=float), self.table(space))


class LawIndicatorMeasure:
    """``1 - 1{X ~ F}``: zero exactly when the law of ``X`` is ``F``."""

    def __init__(self, law: dict):
        self.law = {round(float(v), 12) + 0.0: _as_fraction(p) for v, p in law.items()}
        if sum(self.law.values()) != 1:
            raise InvalidParameter("target law must sum to 1")

    def __repr__(self):
        inner = ",".join(f"{v:g}:{p}" for v, p in sorted(self.law.items()))
        return f"LawIndicatorMeasure({inner})"

    def _matches(self, values, probs) -> bool:
        got: dict = {}
        for v, p in zip(values, probs):
            key = round(float(v), 12) + 0.0
            got[key] = got.get(key, Fraction(0)) + p
        return got == self.law

    def __call__(self, x: FiniteRandomVariable) -> float:
        return 0.0 if self._matches(x.values, x.space.probs) else 1.0

    def evaluate_rows(self, V: np.ndarray, space: FiniteSpace) -> np.ndarray:
        probs = space.probs
        if len(set(probs)) == 1:
            # equiprobable atoms: compare sorted value vectors
            target = []
            unit = probs[0]
            for v, p in sorted(self.law.items()):
                k = p / unit
                if k.denominator != 1:
                    return np.ones(V.shape[0])
                target.extend([v] * int(k))
            target = np.array(target)
            if target.size != V.shape[1]:
                return np.ones(V.shape[0])
            ok = np.all(np.abs(np.sort(V, axis=1) - target) <= 1e-12, axis=1)
            return np.where(ok, 0.0, 1.0)
        return np.array([0.0 if self._matches(row, probs) else 1.0 for row in V])


def _homogeneous_choquet(measures) -> bool:
    if not all(isinstance(m, ChoquetMeasure) for m in measures):
        return False
    first = measures[0].h
    return all(m.h is first or m.h.describe() == first.describe() for m in measures)


# dependence ----------------------------------------------------------------


@dataclass(frozen=True)
class DependenceReport:
    ok: bool
    witness: Optional[tuple] = None  # (component i, component j, atom p, atom q)

    def __bool__(self):
        return self.ok


def dependence_check(a: FiniteAllocation, mode: str, tol: float = DEP_TOL) -> DependenceReport:
    """Pairwise (counter-)comonotonicity over every component and atom pair.

    ``mode="sequential"`` checks each partial sum against the next component.
    """
    V = a.matrix()
    n = V.shape[0]
    if n < 2:
        raise InvalidParameter("need at least two components")
    if mode not in ("comonotonic", "counter_monotonic", "sequential"):
        raise InvalidParameter(f"unknown dependence mode {mode!r}")
    D = V[:, :, None] - V[:, None, :]
    if mode == "sequential":
        S = D[0].copy()
        for c in range(1, n):
            bad = np.argwhere(np.triu(S * D[c] > tol, 1))
            if bad.size:
                p, q = bad[0]
                return DependenceReport(False, (c - 1, c, int(p), int(q)))
            S += D[c]
        return DependenceReport(True)
    sgn = 1.0 if mode == "counter_monotonic" else -1.0
    for i in range(n):
        for j in range(i + 1, n):
            bad = np.argwhere(np.triu(sgn * D[i] * D[j] > tol, 1))
            if bad.size:
                p, q = bad[0]
                return DependenceReport(False, (i, j, int(p), int(q)))
    return DependenceReport(True)


# indicator representation --------------------------------------------------


@dataclass(frozen=True)
class RepresentationWitness:
    side_payments: tuple
    partition: tuple  # atom index -> agent index
    branch: str

    @property
    def m(self) -> float:
        return float(sum(self.side_payments))


def _try_branch(V, X, branch, atol):
    n, k = V.shape
    mi = V.min(axis=1) if branch == "jackpot" else V.max(axis=1)
    active = np.abs(V - mi[:, None]) > atol
    if np.any(active.sum(axis=0) > 1):
        return None
    m = float(mi.sum())
    part = np.where(active.any(axis=0), active.argmax(axis=0), 0)
    R = np.where(part[None, :] == np.arange(n)[:, None], (X - m)[None, :], 0.0) + mi[:, None]
    if not np.allclose(R, V, rtol=0.0, atol=atol):
        return None
    if branch == "jackpot" and m > X.min() + atol:
        return None
    if branch == "scapegoat" and m < X.max() - atol:
        return None
    return RepresentationWitness(tuple(float(v) for v in mi), tuple(int(p) for p in part), branch)


def representation_decompose(a: FiniteAllocation, atol: float = 1e-12) -> RepresentationWitness:
    """Recover ``m_i`` and ``(A_i)`` with ``X_i = (X - m) 1_{A_i} + m_i``.

    Atoms on which ``X = m`` could join any cell; they go to the lowest agent
    index.
    """
    V = a.matrix()
    X = V.sum(axis=0)
    for branch in ("jackpot", "scapegoat"):
        w = _try_branch(V, X, branch, atol)
        if w is not None:
            return w
    raise NotRepresentable("allocation is not of the form (X - m) 1_{A_i} + m_i")


def construct_representation(X: FiniteRandomVariable, partition: Sequence[int], side_payments: Sequence[float]) -> FiniteAllocation:
    """Inverse of :func:`representation_decompose`."""
    part = np.asarray(partition)
    mi = np.asarray(side_payments, dtype=float)
    m = float(mi.sum())
    rows = [np.where(part == i, X.values - m, 0.0) + mi[i] for i in range(mi.size)]
    return FiniteAllocation.from_matrix(X.space, rows)


def set_partitions(m: int, k: int) -> np.ndarray:
    """Restricted growth strings of length ``m`` with labels below ``k``."""
    rows = np.zeros((1, 1), dtype=np.int64)
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    top = np.zeros(1, dtype=np.int64)
    for _ in range(1, m):
        parts = []
        tops = []
        for label in range(k):
            sel = label <= top + 1
            if not sel.any():
                continue
            r = rows[sel]
            parts.append(np.hstack([r, np.full((r.shape[0], 1), label)]))
            tops.append(np.maximum(top[sel], label))
        rows = np.vstack(parts)
        top = np.concatenate(tops)
    return rows


# enumeration ---------------------------------------------------------------


@dataclass(frozen=True)
class BruteForceResult:
    value: float
    allocation: Optional[FiniteAllocation]
    candidates: int
    method: str


def _value_grid(X: FiniteRandomVariable, levels: int, space_class: str, value_grid):
    if value_grid is not None:
        G = np.unique(np.asarray(value_grid, dtype=float))
        explicit = True
    else:
        if levels < 2:
            raise InvalidParameter("levels must be at least 2")
        lo, hi = min(0.0, X.ess_inf), max(0.0, X.ess_sup)
        if hi == lo:
            hi = lo + 1.0
        if space_class == "Linf":
            span = hi - lo
            lo, hi = lo - span, hi + span
        G = np.unique(np.concatenate([np.linspace(lo, hi, levels + 1), X.values, [0.0]]))
        explicit = False
    if space_class == "Lplus":
        G = G[G >= 0]
    elif space_class == "Lminus":
        G = G[G <= 0]
    elif space_class != "Linf":
        raise InvalidParameter(f"unknown space class {space_class!r}")
    if G.size == 0:
        raise InvalidParameter("value grid is empty after the sign restriction")
    return G, explicit


def _atom_tuples(x, n, G, explicit):
    lo, hi = G[0], G[-1]
    if n == 1:
        heads = np.zeros((1, 0))
    else:
        heads = np.stack(np.meshgrid(*([G] * (n - 1)), indexing="ij"), axis=-1).reshape(-1, n - 1)
    last = x - heads.sum(axis=1)
    if explicit:
        pos = np.clip(np.searchsorted(G, last), 0, G.size - 1)
        pos_lo = np.clip(pos - 1, 0, G.size - 1)
        near = np.where(np.abs(G[pos] - last) <= np.abs(G[pos_lo] - last), pos, pos_lo)
        ok = np.abs(G[near] - last) <= 1e-12
        last = np.where(ok, G[near], last)
    else:
        ok = (last >= lo - 1e-12) & (last <= hi + 1e-12)
    return np.hstack([heads[ok], last[ok, None]])


def _grid_tables(X, n, G, explicit, budget):
    tuples = [_atom_tuples(x, n, G, explicit) for x in X.values]
    radix = np.array([t.shape[0] for t in tuples], dtype=np.int64)
    total = 1
    for r in radix:
        total *= int(r)
    if total == 0:
        raise InvalidParameter("no grid allocation sums to X on some atom")
    if total > budget:
        raise TooLarge(f"{total} grid allocations exceed the budget of {budget}")
    off = np.concatenate([[0], np.cumsum(radix)[:-1]]).astype(np.int64)
    T = np.ascontiguousarray(np.vstack(tuples))
    return T, off, radix, total


def _lex_pick(A, val, tie_eps):
    best = val.min()
    cand = np.nonzero(val <= best + tie_eps)[0]
    flat = A[cand].reshape(cand.size, -1)
    k = cand[np.lexsort(flat.T[::-1])[0]]
    return float(val[k]), A[k]


def _grid_minimise(measures, X, mode, G, explicit, budget, tie_eps):
    n = len(measures)
    space = X.space
    T, off, radix, total = _grid_tables(X, n, G, explicit, budget)
    if all(isinstance(m, ChoquetMeasure) for m in measures):
        H = np.ascontiguousarray(np.vstack([m.table(space) for m in measures]))
        best, A, nfeas = _kernels.grid_search(T, off, radix, H, mode, DEP_TOL, tie_eps)
        if nfeas == 0:
            return math.inf, None, 0
        return float(best), np.array(A), int(nfeas)
    digits, count = _kernels.grid_collect(T, off, radix, mode, DEP_TOL, max(total, 1))
    if count == 0:
        return math.inf, None, 0
    rows = off[None, :] + digits
    A = np.transpose(T[rows], (0, 2, 1))
    val = np.zeros(A.shape[0])
    for i, meas in enumerate(measures):
        val += meas.evaluate_rows(A[:, i, :], space)
    best, Ab = _lex_pick(A, val, tie_eps)
    return best, Ab, int(count)


def _side_payment_grid(X, G, levels):
    lo, hi = G[0], G[-1]
    cand = np.concatenate([np.linspace(lo, hi, max(levels, 2) + 1), X.values, [0.0]])
    branch = (cand <= X.ess_inf + 1e-12) | (cand >= X.ess_sup - 1e-12)
    inside = (cand >= lo - 1e-12) & (cand <= hi + 1e-12)
    return np.unique(cand[branch & inside])


def brute_force_infconv(
    measures: Sequence,
    X: FiniteRandomVariable,
    regime: str,
    levels: int = 8,
    space_class: str = "Linf",
    value_grid=None,
    budget: int = BUDGET,
    tie_eps: float = TIE_EPS,
) -> BruteForceResult:
    """Minimal aggregate risk over the discretised allocations of ``X``.

    Components live on ``levels + 1`` equally spaced values (plus the values
    of ``X`` and 0) or on ``value_grid`` when given, restricted to the sign
    of ``space_class``. Raises :class:`TooLarge` past ``budget`` candidates.
    """
    measures = list(measures)
    n = len(measures)
    if n < 2:
        raise InvalidParameter("need at least two agents")
    if regime not in ("unconstrained", "comonotonic", "counter_monotonic"):
        raise InvalidParameter(f"unknown regime {regime!r}")
    if X.space.size > MAX_ATOMS:
        raise TooLarge(f"{X.space.size} atoms exceed the limit of {MAX_ATOMS}")
    G, explicit = _value_grid(X, levels, space_class, value_grid)
    space = X.space

    if regime == "counter_monotonic" and n >= 3 and _homogeneous_choquet(measures) and not explicit:
        assigns = set_partitions(space.size, n)
        mvals = _side_payment_grid(X, G, levels)
        if assigns.shape[0] * mvals.size > budget:
            raise TooLarge(f"{assigns.shape[0] * mvals.size} candidates exceed the budget of {budget}")
        H = np.ascontiguousarray(np.vstack([m.table(space) for m in measures]))
        sign_mode = {"Linf": 0, "Lplus": 1, "Lminus": 2}[space_class]
        best, A, nfeas = _kernels.prop1_search(
            np.ascontiguousarray(X.values, dtype=float), assigns, n, mvals, H, sign_mode, tie_eps
        )
        best, A = float(best), np.array(A)
        # allocations with at most two non-constant parts: a two-agent
        # counter-monotonic split padded with zeros (constants move freely
        # between components without changing the sum of Choquet values)
        pair = pair_counter_exact(measures[:2], X, space_class, budget, tie_eps)
        v2, n2 = pair.value, pair.candidates
        if pair.allocation is not None:
            A2 = np.vstack([pair.allocation.matrix(), np.zeros((n - 2, space.size))])
            if v2 < best - tie_eps or (abs(v2 - best) <= tie_eps and tuple(A2.ravel()) < tuple(A.ravel())):
                best, A = v2, A2
        elif v2 == -math.inf:
            best, A = v2, None
        alloc = FiniteAllocation.from_matrix(space, A) if math.isfinite(best) else None
        return BruteForceResult(best, alloc, int(nfeas) + n2, "indicator_representation+pair_exact")

    best, A, nfeas = _grid_minimise(measures, X, _MODES[regime], G, explicit, budget, tie_eps)
    alloc = FiniteAllocation.from_matrix(space, A) if A is not None else None
    return BruteForceResult(best, alloc, nfeas, "value_grid")


def pair_counter_exact(
    measures: Sequence,
    X: FiniteRandomVariable,
    space_class: str = "Linf",
    budget: int = BUDGET,
    tie_eps: float = TIE_EPS,
) -> BruteForceResult:
    """Exact two-agent counter-monotonic minimum for Choquet agents.

    Every counter-monotonic pair orders the atoms so that the first
    component rises and the second falls. For a fixed ordering the sum of
    Choquet values is linear in the rises of the first component, so one
    vertex of the feasible set is optimal; all ``m!`` orderings are visited.
    """
    measures = list(measures)
    if len(measures) != 2 or not all(isinstance(mm, ChoquetMeasure) for mm in measures):
        raise InvalidParameter("pair_counter_exact needs exactly two Choquet agents")
    m = X.space.size
    if math.factorial(m) > budget:
        raise TooLarge(f"{math.factorial(m)} atom orderings exceed the budget of {budget}")
    sign_mode = {"Linf": 0, "Lplus": 1, "Lminus": 2}.get(space_class)
    if sign_mode is None:
        raise InvalidParameter(f"unknown space class {space_class!r}")
    if (sign_mode == 1 and X.ess_inf < 0) or (sign_mode == 2 and X.ess_sup > 0):
        return BruteForceResult(math.inf, None, 0, "pair_exact")
    H1, H2 = (mm.table(X.space) for mm in measures)
    best, A, count = _kernels.pair_counter_exact(
        np.ascontiguousarray(X.values, dtype=float), H1, H2, sign_mode, tie_eps
    )
    alloc = FiniteAllocation.from_matrix(X.space, np.array(A)) if math.isfinite(best) else None
    return BruteForceResult(float(best), alloc, int(count), "pair_exact")


def sequential_counter_infconv(
    measures: Sequence,
    X: FiniteRandomVariable,
    levels: int = 8,
    space_class: str = "Linf",
    value_grid=None,
    budget: int = BUDGET,
    tie_eps: float = TIE_EPS,
) -> BruteForceResult:
    """Nested two-agent counter-monotonic minimisation, left to right.

    Enumerates allocations in which every partial sum
    ``X_1 + ... + X_{j-1}`` is counter-monotonic with ``X_j``.
    """
    measures = list(measures)
    if len(measures) < 2:
        raise InvalidParameter("need at least two agents")
    G, explicit = _value_grid(X, levels, space_class, value_grid)
    best, A, nfeas = _grid_minimise(measures, X, _MODES["sequential"], G, explicit, budget, tie_eps)
    alloc = FiniteAllocation.from_matrix(X.space, A) if A is not None else None
    return BruteForceResult(best, alloc, nfeas, "value_grid_sequential")


# the three-agent counterexample ---------------------------------------------


@dataclass(frozen=True)
class CounterexampleReport:
    joint_value: float
    sequential_value: float
    gap_confirmed: bool
    joint_allocation: Optional[FiniteAllocation]
    sequential_allocation: Optional[FiniteAllocation]
    zero_joint_attainable: bool
    zero_sequential_attainable: bool
    grid: tuple


def counterexample_instance():
    """The 4-atom space, ``X = 1_{w1,w2,w3}`` and three law-indicator agents."""
    space = FiniteSpace.uniform(4)
    X = space.variable([1.0, 1.0, 1.0, 0.0])
    F1 = {0.0: Fraction(1, 2), 1.0: Fraction(1, 2)}
    F23 = {0.0: Fraction(3, 4), 0.5: Fraction(1, 4)}
    measures = [LawIndicatorMeasure(F1), LawIndicatorMeasure(F23), LawIndicatorMeasure(F23)]
    return space, X, measures


def _zero_attainable(measures, X, mode):
    # a zero total needs every component to follow its target law, so each
    # component only takes values in the support of that law
    supports = [np.array(sorted(m.law)) for m in measures]
    tuples = []
    for x in X.values:
        grids = np.stack(np.meshgrid(*supports, indexing="ij"), axis=-1).reshape(-1, len(measures))
        tuples.append(grids[np.abs(grids.sum(axis=1) - x) <= 1e-12])
    radix = np.array([t.shape[0] for t in tuples], dtype=np.int64)
    if np.any(radix == 0):
        return False
    off = np.concatenate([[0], np.cumsum(radix)[:-1]]).astype(np.int64)
    T = np.ascontiguousarray(np.vstack(tuples))
    total = int(np.prod(radix))
    digits, count = _kernels.grid_collect(T, off, radix, mode, DEP_TOL, total)
    if count == 0:
        return False
    A = np.transpose(T[off[None, :] + digits], (0, 2, 1))
    val = sum(m.evaluate_rows(A[:, i, :], X.space) for i, m in enumerate(measures))
    return bool(np.any(val == 0))


def appendix_counterexample(grid=(-1.0, -0.5, 0.0, 0.5, 1.0)) -> CounterexampleReport:
    """Sequential versus joint counter-monotonic sharing for three agents.

    Both minima are taken over allocations with values in ``grid``. The
    ``zero_*`` flags are exact: they enumerate every allocation whose
    components stay in the supports of the target laws, which is the only
    way to reach a total of zero.
    """
    _, X, measures = counterexample_instance()
    seq = sequential_counter_infconv(measures, X, space_class="Linf", value_grid=grid)
    joint = brute_force_infconv(measures, X, "counter_monotonic", space_class="Linf", value_grid=grid)
    return CounterexampleReport(
        joint_value=joint.value,
        sequential_value=seq.value,
        gap_confirmed=joint.value > seq.value,
        joint_allocation=joint.allocation,
        sequential_allocation=seq.allocation,
        zero_joint_attainable=_zero_attainable(measures, X, _MODES["counter_monotonic"]),
        zero_sequential_attainable=_zero_attainable(measures, X, _MODES["sequential"]),
        grid=tuple(grid),
    )


# scenario files ------------------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    X: FiniteRandomVariable
    measures: tuple
    regime: str
    levels: int
    space_class: str
    value_grid: Optional[tuple]
    sequential: bool


def _parse_law(text: str) -> dict:
    law = {}
    for item in text.split(","):
        v, sep, p = item.partition(":")
        if not sep:
            raise UsageError(f"law entry {item!r} is not value:probability")
        law[float(v)] = law.get(float(v), Fraction(0)) + Fraction(p.strip())
    return law


def parse_scenario(text: str) -> Scenario:
    """Plain-text scenario: one ``key = value`` per line, ``#`` comments.

    Keys: ``probs`` (comma list, rationals allowed), ``X`` (comma list),
    ``coin`` (optional: multiply by an independent uniform with that many
    atoms), ``measure`` (repeatable: ``choquet family=... <params>`` or
    ``law v:p,v:p``), ``regime``, ``levels``, ``space``, ``grid``,
    ``sequential`` (true/false).
    """
    from .config import parse_distortion

    fields: dict = {}
    measures = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"line {lineno}: expected key = value")
        key, value = key.strip(), value.strip()
        if key == "measure":
            kind, _, rest = value.partition(" ")
            if kind == "choquet":
                measures.append(ChoquetMeasure(parse_distortion(rest.split())))
            elif kind == "law":
                measures.append(LawIndicatorMeasure(_parse_law(rest.strip())))
            else:
                raise UsageError(f"line {lineno}: unknown measure kind {kind!r}")
        elif key in ("probs", "X", "coin", "regime", "levels", "space", "grid", "sequential"):
            if key in fields:
                raise UsageError(f"line {lineno}: duplicate key {key!r}")
            fields[key] = value
        else:
            raise UsageError(f"line {lineno}: unknown key {key!r}")
    for need in ("X",):
        if need not in fields:
            raise UsageError(f"scenario is missing {need!r}")
    if len(measures) < 2:
        raise UsageError("scenario needs at least two measure lines")
    values = [float(v) for v in fields["X"].split(",")]
    if "probs" in fields:
        space = FiniteSpace.from_probs([Fraction(p.strip()) for p in fields["probs"].split(",")])
    else:
        space = FiniteSpace.uniform(len(values))
    X = space.variable(values)
    if "coin" in fields:
        coin = FiniteSpace.uniform(int(fields["coin"]), "c")
        prod = space.product(coin)
        X = X.lift(prod, coin)
    grid = tuple(float(v) for v in fields["grid"].split(",")) if "grid" in fields else None
    return Scenario(
        X=X,
        measures=tuple(measures),
        regime=fields.get("regime", "counter_monotonic"),
        levels=int(fields.get("levels", 8)),
        space_class=fields.get("space", "Linf"),
        value_grid=grid,
        sequential=fields.get("sequential", "false").lower() in ("1", "true", "yes"),
    )


def run_scenario(sc: Scenario) -> BruteForceResult:
    if sc.sequential:
        return sequential_counter_infconv(list(sc.measures), sc.X, sc.levels, sc.space_class, sc.value_grid)
    return brute_force_infconv(list(sc.measures), sc.X, sc.regime, sc.levels, sc.space_class, sc.value_grid)


def choquet_agents(h: DistortionFunction, n: int) -> list:
    """``n`` identical Choquet agents sharing one subset-table cache."""
    m = ChoquetMeasure(h)
    return [m] * n


__all__ = [
    "BruteForceResult",
    "ChoquetMeasure",
    "CounterexampleReport",
    "DependenceReport",
    "LawIndicatorMeasure",
    "RepresentationWitness",
    "Scenario",
    "appendix_counterexample",
    "brute_force_infconv",
    "choquet_agents",
    "construct_representation",
    "counterexample_instance",
    "dependence_check",
    "pair_counter_exact",
    "parse_scenario",
    "representation_decompose",
    "run_scenario",
    "sequential_counter_infconv",
    "set_partitions",
]
