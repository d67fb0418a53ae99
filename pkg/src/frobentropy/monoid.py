"""Grading monoids and their translation-closed exponent sets.

Supported monoids are numerical semigroups (cofinite in Z_>=0), free
commutative monoids Z_>=0^d, and products of one numerical factor with a
free factor.  Vectors put the numerical coordinate first.  An ExponentSet
denotes the union of translated copies g + Gamma and stands in for a
monomial ideal; quotient lengths are complements of such sets.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .errors import EnumerationCapError, UnsupportedOperationError

ENUMERATION_CAP = 10_000_000  # hard cap on lattice points per enumeration


@functools.lru_cache(maxsize=None)
def _numerical_data(generators: tuple) -> tuple:
    """(gaps, frobenius_number, conductor) for a gcd-1 generator tuple.

    Sieves reachability until min(generators) consecutive members appear;
    from there on every integer belongs to the semigroup.
    """
    gens = sorted(generators)
    a_min = gens[0]
    if a_min == 1:
        return ((), -1, 0)
    bound = gens[0] * gens[-1] + 1  # generous; loop exits on the first run
    reachable = bytearray(bound)
    reachable[0] = 1
    run = 0
    last = 0
    for n in range(1, bound):
        if any(n >= a and reachable[n - a] for a in gens):
            reachable[n] = 1
            run += 1
            last = n
            if run == a_min:
                break
        else:
            run = 0
    gaps = tuple(n for n in range(last + 1) if not reachable[n])
    frob = gaps[-1] if gaps else -1
    return (gaps, frob, frob + 1)


def _minimalize_numerical(generators: Sequence[int]) -> tuple:
    """Drop duplicates and generators reachable from the others."""
    gens = sorted(set(generators))
    keep = []
    for i, a in enumerate(gens):
        others = [b for j, b in enumerate(gens) if j != i]
        if not others or not _reachable(a, others):
            keep.append(a)
    return tuple(keep)


def _reachable(n: int, gens: Sequence[int]) -> bool:
    ok = bytearray(n + 1)
    ok[0] = 1
    for x in range(1, n + 1):
        ok[x] = any(x >= a and ok[x - a] for a in gens)
    return bool(ok[n])


@dataclass(frozen=True)
class MonoidSpec:
    """A grading monoid: numerical, free, or numerical x free product."""

    kind: str
    generators: tuple = ()
    rank: int = 0

    def __post_init__(self):
        if self.kind not in ("numerical", "free", "product"):
            raise UnsupportedOperationError(f"unknown monoid kind {self.kind!r}")
        if self.kind in ("numerical", "product"):
            gens = tuple(self.generators)
            if not gens or any(a <= 0 for a in gens):
                raise UnsupportedOperationError(
                    "numerical factor needs positive generators")
            if math.gcd(*gens) != 1:
                raise UnsupportedOperationError(
                    "numerical generators must have gcd 1")
            object.__setattr__(self, "generators", _minimalize_numerical(gens))
        else:
            if self.generators:
                raise UnsupportedOperationError("free kind takes no generators")
        if self.kind == "numerical" and self.rank != 0:
            raise UnsupportedOperationError("numerical kind has rank 0")
        if self.kind == "free" and self.rank < 0:
            raise UnsupportedOperationError("free rank must be >= 0")
        if self.kind == "product" and self.rank < 1:
            raise UnsupportedOperationError("product kind needs free rank >= 1")

    @classmethod
    def numerical(cls, *generators: int) -> "MonoidSpec":
        return cls("numerical", tuple(generators))

    @classmethod
    def free(cls, rank: int) -> "MonoidSpec":
        return cls("free", rank=rank)

    @classmethod
    def product(cls, generators: Iterable[int], rank: int) -> "MonoidSpec":
        return cls("product", tuple(generators), rank)

    @property
    def dim(self) -> int:
        if self.kind == "numerical":
            return 1
        if self.kind == "free":
            return self.rank
        return 1 + self.rank

    @property
    def has_numerical_axis(self) -> bool:
        return self.kind in ("numerical", "product")

    @property
    def free_axes(self) -> range:
        start = 1 if self.has_numerical_axis else 0
        return range(start, self.dim)

    @property
    def is_free_like(self) -> bool:
        """True when the monoid is a free monoid, possibly presented as <1>."""
        if self.kind == "free":
            return True
        return self.generators == (1,)

    # -- numerical data --------------------------------------------------

    def _gap_data(self):
        if not self.has_numerical_axis:
            raise UnsupportedOperationError("no numerical axis")
        return _numerical_data(self.generators)

    @property
    def gap_set(self) -> frozenset:
        return frozenset(self._gap_data()[0])

    @property
    def conductor(self) -> int:
        return self._gap_data()[2]

    @property
    def frobenius_number(self) -> int:
        return self._gap_data()[1]

    # -- membership --------------------------------------------------------

    def normalize_vector(self, gamma) -> tuple:
        if isinstance(gamma, int):
            if self.dim != 1:
                raise UnsupportedOperationError(
                    f"scalar degree for monoid of dim {self.dim}")
            return (gamma,)
        v = tuple(gamma)
        if len(v) != self.dim:
            raise UnsupportedOperationError(
                f"degree {v} has dim {len(v)}, monoid has dim {self.dim}")
        return v

    def member(self, gamma) -> bool:
        v = self.normalize_vector(gamma)
        if self.has_numerical_axis:
            n = v[0]
            if n < 0:
                return False
            if n < self.conductor and n in self.gap_set:
                return False
            free_part = v[1:]
        else:
            free_part = v
        return all(x >= 0 for x in free_part)

    def maximal_ideal_generators(self) -> tuple:
        """Minimal generators of the ideal of positive-degree elements."""
        gens = []
        if self.has_numerical_axis:
            zeros = (0,) * (self.dim - 1)
            gens.extend((a,) + zeros for a in self.generators)
        for i in self.free_axes:
            v = [0] * self.dim
            v[i] = 1
            gens.append(tuple(v))
        return tuple(gens)

    @property
    def embedding_dimension(self) -> int:
        return len(self.maximal_ideal_generators())


@dataclass(frozen=True)
class ExponentSet:
    """Finite generator list for the translation-closed set U (g + Gamma)."""

    monoid: MonoidSpec
    generators: tuple = dc_field(default=())

    def __post_init__(self):
        gens = sorted({self.monoid.normalize_vector(g) for g in self.generators})
        object.__setattr__(self, "generators", _minimalize(self.monoid, gens))

    def member(self, gamma) -> bool:
        v = self.monoid.normalize_vector(gamma)
        return any(
            self.monoid.member(tuple(x - y for x, y in zip(v, g)))
            for g in self.generators
        )

    def is_empty(self) -> bool:
        return not self.generators

    def union(self, other: "ExponentSet") -> "ExponentSet":
        if other.monoid != self.monoid:
            raise UnsupportedOperationError("union across different monoids")
        return ExponentSet(self.monoid, self.generators + other.generators)

    def translate(self, gamma) -> "ExponentSet":
        v = self.monoid.normalize_vector(gamma)
        return ExponentSet(
            self.monoid,
            tuple(tuple(x + y for x, y in zip(g, v)) for g in self.generators),
        )


def _minimalize(monoid: MonoidSpec, gens) -> tuple:
    keep = []
    for g in gens:
        covered = any(
            monoid.member(tuple(x - y for x, y in zip(g, h)))
            for h in keep
        )
        if not covered:
            keep.append(g)
    return tuple(keep)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def contains(monoid: MonoidSpec, gamma) -> bool:
    return monoid.member(gamma)


@dataclass(frozen=True)
class GapData:
    gaps: tuple
    frobenius_number: int
    conductor: int


def gaps(monoid: MonoidSpec) -> GapData:
    """Gap list of a numerical monoid; conductor = largest gap + 1."""
    if monoid.kind != "numerical":
        raise UnsupportedOperationError("gaps only defined for numerical kind")
    g, f, c = monoid._gap_data()
    return GapData(g, f, c)


def _pure_axis_bounds(monoid: MonoidSpec, exps: ExponentSet):
    """Per-axis bound from pure-power generators, or None if some axis escapes.

    The complement of the set is finite exactly when every axis carries a
    pure generator; the returned box then contains the whole complement.
    """
    dim = monoid.dim
    bounds = [None] * dim
    for g in exps.generators:
        for axis in range(dim):
            if all(g[i] == 0 for i in range(dim) if i != axis):
                b = g[axis]
                if bounds[axis] is None or b < bounds[axis]:
                    bounds[axis] = b
    if any(b is None for b in bounds):
        return None
    if monoid.has_numerical_axis:
        bounds[0] += monoid.conductor
    return bounds


def complement_count(monoid: MonoidSpec, exps: ExponentSet, cap: int = ENUMERATION_CAP):
    """#(Gamma \\ U(g + Gamma)), or math.inf when the complement is infinite."""
    if exps.monoid != monoid:
        raise UnsupportedOperationError("exponent set over a different monoid")
    if exps.is_empty():
        return 1 if monoid.dim == 0 else math.inf
    if monoid.dim == 0:
        return 0

    if monoid.kind == "numerical":
        return _complement_count_numerical(monoid, exps, cap)

    bounds = _pure_axis_bounds(monoid, exps)
    if bounds is None:
        return math.inf

    # fast path: the generators are exactly one pure power per axis
    if len(exps.generators) == monoid.dim and monoid.kind == "free":
        pure = sorted(exps.generators)
        expected = sorted(
            tuple(b if i == axis else 0 for i in range(monoid.dim))
            for axis, b in enumerate(bounds)
        )
        if pure == expected:
            out = 1
            for b in bounds:
                out *= b
            return out

    total = 1
    for b in bounds:
        total *= max(b, 1)
    if total > cap:
        raise EnumerationCapError(
            f"complement box of {total} points exceeds cap {cap}",
            stage="complement_count")
    count = 0
    for v in _box_points(bounds):
        if monoid.member(v) and not exps.member(v):
            count += 1
    return count


def _complement_count_numerical(monoid, exps, cap):
    gens = [g[0] for g in exps.generators]
    g_min = min(gens)
    conductor = monoid.conductor
    if conductor == 0:
        return g_min  # <1> is Z_>=0: the complement is an initial segment
    bound = g_min + conductor  # beyond here everything lies in the ideal
    if bound > cap:
        raise EnumerationCapError(
            f"complement scan of {bound} points exceeds cap {cap}",
            stage="complement_count")
    gap_set = monoid.gap_set
    count = 0
    for n in range(bound):
        if n in gap_set:
            continue
        hit = False
        for g in gens:
            d = n - g
            if d >= 0 and (d >= conductor or d not in gap_set):
                hit = True
                break
        if not hit:
            count += 1
    return count


def _box_points(bounds):
    if not bounds:
        yield ()
        return
    head, *tail = bounds
    for x in range(head):
        for rest in _box_points(tail):
            yield (x,) + rest


def scale(monoid: MonoidSpec, m: int, exps: ExponentSet) -> ExponentSet:
    """Multiply every generator by m and re-minimalize."""
    if m < 1:
        raise UnsupportedOperationError("scale factor must be >= 1")
    return ExponentSet(
        monoid,
        tuple(tuple(m * x for x in g) for g in exps.generators),
    )


# ---------------------------------------------------------------------------
# order function (largest k with gamma in m^k), used for sandwich checks
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _numerical_order_table(generators: tuple, bound: int) -> tuple:
    """ord[n] = max summands expressing n, or -1 when n is a gap."""
    gens = generators
    ord_ = [-1] * (bound + 1)
    ord_[0] = 0
    for n in range(1, bound + 1):
        best = -1
        for a in gens:
            if n >= a and ord_[n - a] >= 0:
                best = max(best, ord_[n - a] + 1)
        ord_[n] = best
    return tuple(ord_)


def order_of(monoid: MonoidSpec, gamma) -> int:
    """Largest k with gamma in the k-th power of the maximal ideal; -1 outside."""
    v = monoid.normalize_vector(gamma)
    if not monoid.member(v):
        return -1
    total = 0
    if monoid.has_numerical_axis:
        n = v[0]
        bound = max(16, 1 << (n.bit_length() + 1))  # rounded for table reuse
        table = _numerical_order_table(monoid.generators, bound)
        total += table[n]
        free_part = v[1:]
    else:
        free_part = v
    return total + sum(free_part)
