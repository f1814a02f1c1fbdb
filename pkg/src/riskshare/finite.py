"""Atomic probability spaces with exact (rational) weights.

Probabilities are :class:`fractions.Fraction` so that partition identities
and dependence checks never depend on rounding; values stay float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameter


def _as_fraction(p) -> Fraction:
    if isinstance(p, Fraction):
        return p
    if isinstance(p, str):
        return Fraction(p)
    if isinstance(p, int):
        return Fraction(p)
    # floats: recover short decimals such as 0.25 or 0.1 exactly
    return Fraction(p).limit_denominator(10**9)


@dataclass(frozen=True)
class FiniteSpace:
    atoms: tuple
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(_as_fraction(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if len(self.atoms) != len(probs):
            raise InvalidParameter("atoms and probs differ in length")
        if any(p <= 0 for p in probs):
            raise InvalidParameter("atom probabilities must be positive")
        if sum(probs) != 1:
            raise InvalidParameter(f"probabilities sum to {sum(probs)}, not 1")

    @classmethod
    def uniform(cls, k: int, label: str = "w") -> "FiniteSpace":
        if k < 1:
            raise InvalidParameter("need at least one atom")
        return cls(tuple(f"{label}{i + 1}" for i in range(k)), (Fraction(1, k),) * k)

    @classmethod
    def from_probs(cls, probs: Sequence) -> "FiniteSpace":
        return cls(tuple(f"w{i + 1}" for i in range(len(probs))), tuple(probs))

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def float_probs(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs])

    def product(self, other: "FiniteSpace") -> "FiniteSpace":
        """Independent product; atom ``(a, b)`` has index ``i * other.size + j``."""
        atoms = tuple(_cartesian(self.atoms, other.atoms))
        probs = tuple(p * q for p in self.probs for q in other.probs)
        return FiniteSpace(atoms, probs)

    def subset_probabilities(self) -> list[Fraction]:
        """Exact probability of every subset of atoms, indexed by bitmask."""
        m = self.size
        out = [Fraction(0)] * (1 << m)
        for mask in range(1, 1 << m):
            low = mask & -mask
            j = low.bit_length() - 1
            out[mask] = out[mask ^ low] + self.probs[j]
        return out

    def variable(self, values: Iterable[float]) -> "FiniteRandomVariable":
        return FiniteRandomVariable(self, values)


class FiniteRandomVariable:
    """A real-valued map on the atoms of a :class:`FiniteSpace`."""

    __slots__ = ("space", "values")

    def __init__(self, space: FiniteSpace, values):
        vals = np.array(values, dtype=float).reshape(-1)
        if vals.shape[0] != space.size:
            raise InvalidParameter(
                f"expected {space.size} values, got {vals.shape[0]}"
            )
        vals.setflags(write=False)
        self.space = space
        self.values = vals

    def __repr__(self):
        return f"FiniteRandomVariable({self.values.tolist()})"

    def _coerce(self, other):
        if isinstance(other, FiniteRandomVariable):
            if other.space != self.space:
                raise InvalidParameter("random variables live on different spaces")
            return other.values
        return float(other)

    def __add__(self, other):
        return FiniteRandomVariable(self.space, self.values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return FiniteRandomVariable(self.space, self.values - self._coerce(other))

    def __rsub__(self, other):
        return FiniteRandomVariable(self.space, self._coerce(other) - self.values)

    def __mul__(self, c):
        return FiniteRandomVariable(self.space, self.values * self._coerce(c))

    __rmul__ = __mul__

    def __neg__(self):
        return FiniteRandomVariable(self.space, -self.values)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteRandomVariable)
            and other.space == self.space
            and np.array_equal(other.values, self.values)
        )

    def __hash__(self):
        return hash((self.space, self.values.tobytes()))

    @property
    def ess_inf(self) -> float:
        return float(self.values.min())

    @property
    def ess_sup(self) -> float:
        return float(self.values.max())

    def is_degenerate(self) -> bool:
        return bool(np.all(self.values == self.values[0]))

    def law(self) -> dict[float, Fraction]:
        """Distribution as ``{value: probability}`` with exact probabilities."""
        out: dict[float, Fraction] = {}
        for v, p in zip(self.values.tolist(), self.space.probs):
            out[v] = out.get(v, Fraction(0)) + p
        return dict(sorted(out.items()))

    def lift(self, product_space: FiniteSpace, factor: FiniteSpace) -> "FiniteRandomVariable":
        """Same variable viewed on ``self.space.product(factor)``."""
        return FiniteRandomVariable(product_space, np.repeat(self.values, factor.size))

    def to_distribution(self):
        from .riskmeasure import Distribution

        law = self.law()
        return Distribution.finite(list(law.keys()), list(law.values()))


@dataclass(frozen=True)
class FiniteAllocation:
    """Components ``(X_1, ..., X_n)`` on one shared space."""

    components: tuple[FiniteRandomVariable, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise InvalidParameter("an allocation needs at least one component")
        space = comps[0].space
        if any(c.space != space for c in comps):
            raise InvalidParameter("allocation components must share one space")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_matrix(cls, space: FiniteSpace, matrix) -> "FiniteAllocation":
        return cls(tuple(FiniteRandomVariable(space, row) for row in np.asarray(matrix)))

    @property
    def space(self) -> FiniteSpace:
        return self.components[0].space

    @property
    def n(self) -> int:
        return len(self.components)

    def total(self) -> FiniteRandomVariable:
        return FiniteRandomVariable(self.space, self.matrix().sum(axis=0))

    def matrix(self) -> np.ndarray:
        return np.vstack([c.values for c in self.components])

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]
