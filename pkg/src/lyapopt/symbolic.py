"""Words, cylinders, and locally constant potentials on the full shift.

The one-sided full shift on p symbols is handled through finite words.  A
depth-k potential is a function on the shift space that depends only on the
first k symbols; it is stored as a table of p**k values on the log-derivative
scale.  The cylinder statistics (E, F, V) are exponentials of the extrema of
the potential over a cylinder, which is the form every construction
downstream consumes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Protocol, Sequence

import numpy as np

__all__ = [
    "Word",
    "PotentialTable",
    "CylinderStats",
    "ThetaMetric",
    "GeneralPotential",
    "cylinder_stats",
    "sup_abs",
    "sup_abs_exp_diff",
    "variation_inequality_check",
    "theta_distance",
    "lipschitz_constant",
    "snapshot",
]


def _check_symbols(symbols: Sequence[int], p: int) -> tuple[int, ...]:
    w = tuple(int(s) for s in symbols)
    for s in w:
        if not 0 <= s < p:
            raise ValueError(f"symbol {s} out of range for alphabet size {p}")
    return w


@dataclass(frozen=True)
class Word:
    """A finite word over the alphabet {0, ..., p-1}."""

    symbols: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", _check_symbols(self.symbols, self.p))

    @classmethod
    def from_string(cls, s: str, p: int) -> "Word":
        return cls(tuple(int(c) for c in s), p)

    @property
    def string(self) -> str:
        return "".join(str(s) for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)


def words_of_length(p: int, n: int) -> Iterator[tuple[int, ...]]:
    """All words of length n in lexicographic order."""
    return itertools.product(range(p), repeat=n)


def word_index(w: Sequence[int], p: int) -> int:
    """Lexicographic rank of a word among words of its length (base-p digits)."""
    idx = 0
    for s in w:
        idx = idx * p + s
    return idx


@dataclass(frozen=True)
class PotentialTable:
    """Depth-k locally constant potential, one value per word of length k.

    Values live on the log scale: for a realized map the table entry at w is
    the log of the absolute derivative on the cylinder coded by w.
    """

    p: int
    depth: int
    values: Mapping[tuple[int, ...], float]

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError("alphabet size must be at least 2")
        if self.depth < 1:
            raise ValueError("depth must be at least 1")
        vals = {}
        for w, v in self.values.items():
            w = _check_symbols(w, self.p)
            if len(w) != self.depth:
                raise ValueError(f"word {w} has length {len(w)}, expected {self.depth}")
            v = float(v)
            if not math.isfinite(v):
                raise ValueError("potential values must be finite")
            vals[w] = v
        if len(vals) != self.p**self.depth:
            raise ValueError(
                f"table needs {self.p ** self.depth} entries, got {len(vals)}"
            )
        object.__setattr__(self, "values", vals)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_function(
        cls, p: int, depth: int, fn: Callable[[tuple[int, ...]], float]
    ) -> "PotentialTable":
        return cls(p, depth, {w: fn(w) for w in words_of_length(p, depth)})

    @classmethod
    def constant(cls, p: int, depth: int, value: float) -> "PotentialTable":
        return cls.from_function(p, depth, lambda _w: value)

    @classmethod
    def from_array(cls, p: int, depth: int, arr: Sequence[float]) -> "PotentialTable":
        arr = list(arr)
        if len(arr) != p**depth:
            raise ValueError("array length does not match p**depth")
        return cls(
            p, depth, {w: arr[i] for i, w in enumerate(words_of_length(p, depth))}
        )

    # -- access -------------------------------------------------------

    def value(self, w: Sequence[int]) -> float:
        """Value on the cylinder of w; w must have at least `depth` symbols."""
        w = _check_symbols(w, self.p)
        if len(w) < self.depth:
            raise ValueError(f"need at least {self.depth} symbols, got {len(w)}")
        return self.values[w[: self.depth]]

    def words(self) -> Iterator[tuple[int, ...]]:
        return words_of_length(self.p, self.depth)

    def as_array(self) -> np.ndarray:
        """Values in lexicographic word order."""
        return np.array([self.values[w] for w in self.words()], dtype=float)

    @property
    def vmin(self) -> float:
        return min(self.values.values())

    @property
    def vmax(self) -> float:
        return max(self.values.values())

    def extend(self, depth: int) -> "PotentialTable":
        """The same potential re-tabulated at a larger depth."""
        if depth < self.depth:
            raise ValueError("can only extend to a larger depth")
        if depth == self.depth:
            return self
        return PotentialTable.from_function(self.p, depth, lambda w: self.value(w))

    def shifted(self, c: float) -> "PotentialTable":
        return PotentialTable(self.p, self.depth, {w: v + c for w, v in self.values.items()})

    # -- serialization ------------------------------------------------

    def to_json_obj(self) -> dict:
        if self.p > 10:
            raise ValueError("digit-string serialization requires p <= 10")
        return {
            "p": self.p,
            "depth": self.depth,
            "values": {
                "".join(str(s) for s in w): self.values[w] for w in self.words()
            },
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "PotentialTable":
        p = int(obj["p"])
        depth = int(obj["depth"])
        values = {
            tuple(int(c) for c in key): float(v) for key, v in obj["values"].items()
        }
        return cls(p, depth, values)


def aligned(
    phi: PotentialTable, psi: PotentialTable
) -> tuple[PotentialTable, PotentialTable]:
    """Re-tabulate two potentials on a common depth."""
    if phi.p != psi.p:
        raise ValueError("alphabet sizes differ")
    k = max(phi.depth, psi.depth)
    return phi.extend(k), psi.extend(k)


@dataclass(frozen=True)
class CylinderStats:
    """exp of the min (E) and max (F) of a potential over a cylinder; V = F - E."""

    E: float
    F: float
    V: float

    def __post_init__(self) -> None:
        if not (self.E > 0 and self.F > 0):
            raise ValueError("E and F must be positive")
        if self.E > self.F:
            raise ValueError("E must not exceed F")


def cylinder_stats(phi: PotentialTable, w: Sequence[int]) -> CylinderStats:
    """Cylinder statistics of a potential over the cylinder of the word w.

    For len(w) >= depth the potential is constant on the cylinder, so
    E = F and V = 0; for shorter words the extrema range over all
    depth-length extensions of w.
    """
    w = _check_symbols(w, phi.p)
    if len(w) < 1:
        raise ValueError("cylinder words must have length at least 1")
    if len(w) >= phi.depth:
        v = phi.value(w)
        e = math.exp(v)
        return CylinderStats(e, e, 0.0)
    lo = math.inf
    hi = -math.inf
    for tail in words_of_length(phi.p, phi.depth - len(w)):
        v = phi.values[w + tail]
        lo = min(lo, v)
        hi = max(hi, v)
    E, F = math.exp(lo), math.exp(hi)
    return CylinderStats(E, F, F - E)


def sup_abs(phi: PotentialTable) -> float:
    """Sup norm of the potential, max |phi| over the table."""
    return max(abs(v) for v in phi.values.values())


def sup_abs_exp_diff(phi: PotentialTable, psi: PotentialTable) -> float:
    """max |e^phi - e^psi| over the shift space, for same-alphabet tables."""
    a, b = aligned(phi, psi)
    return max(
        abs(math.exp(a.values[w]) - math.exp(b.values[w])) for w in a.words()
    )


def variation_inequality_check(
    phi: PotentialTable, psi: PotentialTable, w: Sequence[int]
) -> bool:
    """Check |E_w(phi)-E_w(psi)| and |F_w(phi)-F_w(psi)| <= V_w(phi) + max|e^phi-e^psi|.

    This inequality holds for every pair of potentials and every word, so the
    function is a property check that must always return True.
    """
    if phi.p != psi.p:
        raise ValueError("alphabet sizes differ")
    s1 = cylinder_stats(phi, w)
    s2 = cylinder_stats(psi, w)
    bound = s1.V + sup_abs_exp_diff(phi, psi)
    slack = 4.0 * np.finfo(float).eps * (s1.F + s2.F)
    return abs(s1.E - s2.E) <= bound + slack and abs(s1.F - s2.F) <= bound + slack


@dataclass(frozen=True)
class ThetaMetric:
    """The metric d(a, b) = theta^s(a, b), s = index of first disagreement."""

    theta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.theta < 1.0:
            raise ValueError("theta must lie strictly between 0 and 1")


def theta_distance(m: ThetaMetric, a: Sequence[int], b: Sequence[int]) -> float:
    """theta^s over the first disagreement index s; 0 for equal words."""
    a = tuple(a)
    b = tuple(b)
    if len(a) != len(b):
        raise ValueError("theta_distance compares words of equal length")
    for s, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return m.theta**s
    return 0.0


def lipschitz_constant(phi: PotentialTable, m: ThetaMetric) -> float:
    """Smallest L with |phi(a)-phi(b)| <= L * d_theta(a, b).

    For a depth-k table this is the max over word pairs that first disagree
    at index j < k of |delta phi| / theta^j.
    """
    best = 0.0
    table = list(phi.words())
    vals = phi.values
    for i, a in enumerate(table):
        va = vals[a]
        for b in table[i + 1 :]:
            s = next(j for j, (x, y) in enumerate(zip(a, b)) if x != y)
            best = max(best, abs(va - vals[b]) / m.theta**s)
    return best


class GeneralPotential(Protocol):
    """A potential known only through finite-word evaluations.

    value(w) returns the potential at some point of the cylinder of w, and
    variation(n) bounds the oscillation of the potential over any depth-n
    cylinder.  That pair is all the finite-depth snapshot needs.
    """

    def value(self, w: Sequence[int]) -> float: ...

    def variation(self, n: int) -> float: ...


def snapshot(
    phi: GeneralPotential, p: int, depth: int
) -> tuple[PotentialTable, float]:
    """Depth-k table of a general potential plus its tail-variation bound."""
    table = PotentialTable.from_function(p, depth, lambda w: float(phi.value(w)))
    return table, float(phi.variation(depth))
