"""Graded modules over k[[Gamma]]: monomial summands, pushforward, lengths.

A module is a direct sum of monomial summands.  Each summand has a degree
set S \\ T where S and T are translation-closed sets given by generators;
the k-basis consists of the surviving degrees, transported monomially, and
a positive integer multiplicity records copies coming from the residue
field growing under pushforward.  Rescaled degree lattices keep an exact
rational shift with denominator u^e so iterated pushforwards compose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import monoid as monoid_mod
from .errors import EnumerationCapError, UnsupportedOperationError
from .grring import EndomorphismSpec, RingSpec
from .monoid import ENUMERATION_CAP, ExponentSet, MonoidSpec

CLASS_CAP = 65536  # residue classes materialized per pushforward call


def _zero_shift(dim: int) -> tuple:
    return (Fraction(0),) * dim


@dataclass(frozen=True)
class MonomialSummand:
    """Degrees shift + (S \\ T) with monomial transport, times multiplicity."""

    shift: tuple
    gens: ExponentSet
    rels: ExponentSet
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise UnsupportedOperationError("multiplicity must be >= 1")
        # generators swallowed by the relation set contribute nothing
        live = tuple(g for g in self.gens.generators if not self.rels.member(g))
        if live != self.gens.generators:
            object.__setattr__(self, "gens", ExponentSet(self.gens.monoid, live))

    @property
    def monoid(self) -> MonoidSpec:
        return self.gens.monoid

    def is_zero(self) -> bool:
        return not self.gens.generators

    def basis_member(self, x) -> bool:
        return self.gens.member(x) and not self.rels.member(x)

    def degree_of(self, x) -> tuple:
        v = self.monoid.normalize_vector(x)
        return tuple(s + xi for s, xi in zip(self.shift, v))


@dataclass(frozen=True)
class GradedModule:
    ring: RingSpec
    summands: tuple

    def __post_init__(self):
        live = tuple(s for s in self.summands if not s.is_zero())
        object.__setattr__(self, "summands", live)

    # -- constructors --------------------------------------------------------

    @classmethod
    def ring_module(cls, ring: RingSpec) -> "GradedModule":
        mon = ring.monoid
        zero = (0,) * mon.dim
        return cls(ring, (MonomialSummand(
            _zero_shift(mon.dim), ExponentSet(mon, (zero,)), ExponentSet(mon, ())),))

    @classmethod
    def residue_field(cls, ring: RingSpec) -> "GradedModule":
        mon = ring.monoid
        zero = (0,) * mon.dim
        return cls(ring, (MonomialSummand(
            _zero_shift(mon.dim), ExponentSet(mon, (zero,)),
            ExponentSet(mon, mon.maximal_ideal_generators())),))

    @classmethod
    def quotient_by_ideal(cls, ring: RingSpec, exps: ExponentSet) -> "GradedModule":
        mon = ring.monoid
        zero = (0,) * mon.dim
        return cls(ring, (MonomialSummand(
            _zero_shift(mon.dim), ExponentSet(mon, (zero,)), exps),))

    @classmethod
    def monomial(cls, ring: RingSpec, gens, rels=(), multiplicity: int = 1) -> "GradedModule":
        mon = ring.monoid
        return cls(ring, (MonomialSummand(
            _zero_shift(mon.dim), ExponentSet(mon, tuple(gens)),
            ExponentSet(mon, tuple(rels)), multiplicity),))

    @classmethod
    def direct_sum(cls, *modules: "GradedModule") -> "GradedModule":
        rings = {m.ring for m in modules}
        if len(rings) != 1:
            raise UnsupportedOperationError("direct sum across different rings")
        summands = tuple(s for m in modules for s in m.summands)
        return cls(modules[0].ring, summands)

    def is_zero(self) -> bool:
        return not self.summands


# ---------------------------------------------------------------------------
# pushforward and its residue-class decomposition
# ---------------------------------------------------------------------------

def _free_corner(g_i: int, j_i: int, u_pow: int) -> int:
    return max(0, (g_i - j_i + u_pow - 1) // u_pow)


def _numerical_class_gens(mon: MonoidSpec, g0: int, j0: int, u_pow: int) -> tuple:
    """Minimal generators of {x >= 0 : u_pow*x + j0 in g0 + Gamma_num}.

    All generators live within the Frobenius number of the first member.
    """
    conductor = mon.conductor
    gap_set = mon.gap_set

    def num_member(d):
        return d >= 0 and (d >= conductor or d not in gap_set)

    def member(x):
        return num_member(u_pow * x + j0 - g0)

    x = max(0, (g0 - j0) // u_pow)
    while not member(x):
        x += 1
    frob = conductor - 1
    window = [y for y in range(x, x + max(frob, 0) + 1) if member(y)]
    mins = []
    for y in window:
        dominated = any(y != z and num_member(y - z) for z in mins)
        if not dominated:
            mins.append(y)
    return tuple(mins)


def _class_generators(mon: MonoidSpec, source_gens, j, u_pow: int) -> tuple:
    """Generators of the residue-class slice of U(g + Gamma) at class j."""
    out = []
    for g in source_gens:
        if mon.has_numerical_axis:
            num_parts = _numerical_class_gens(mon, g[0], j[0], u_pow)
            corners = tuple(
                _free_corner(g[i], j[i], u_pow) for i in mon.free_axes)
            out.extend((a,) + corners for a in num_parts)
        else:
            out.append(tuple(
                _free_corner(g[i], j[i], u_pow) for i in range(mon.dim)))
    return tuple(out)


def pushforward(module: GradedModule, phi: EndomorphismSpec, e: int,
                class_cap: int = CLASS_CAP) -> GradedModule:
    """Restriction of scalars along phi^e, decomposed by residue classes.

    Degrees divide by u^e; the field multiplicity multiplies by the residue
    degree to the e; each summand splits into one monomial summand per
    residue class of its integer-lattice degrees mod u^e.
    """
    if e < 0:
        raise UnsupportedOperationError("pushforward needs e >= 0")
    if e == 0:
        return module
    mon = module.ring.monoid
    u_pow = phi.u ** e
    rd_pow = phi.residue_degree ** e
    n_classes = u_pow ** mon.dim
    if n_classes > class_cap:
        raise EnumerationCapError(
            f"pushforward would materialize {n_classes} residue classes",
            stage="pushforward")
    new_summands = []
    for summand in module.summands:
        mult = summand.multiplicity * rd_pow
        for j in monoid_mod._box_points([u_pow] * mon.dim):
            s_gens = _class_generators(mon, summand.gens.generators, j, u_pow)
            t_gens = _class_generators(mon, summand.rels.generators, j, u_pow)
            shift = tuple(
                (s + ji) / u_pow for s, ji in zip(summand.shift, j))
            piece = MonomialSummand(
                shift, ExponentSet(mon, s_gens), ExponentSet(mon, t_gens), mult)
            if not piece.is_zero():
                new_summands.append(piece)
    return GradedModule(module.ring, tuple(new_summands))


# ---------------------------------------------------------------------------
# lengths and minimal generators
# ---------------------------------------------------------------------------

def _axis_member(mon: MonoidSpec, axis: int, d: int) -> bool:
    if d < 0:
        return False
    if axis == 0 and mon.has_numerical_axis:
        return d >= mon.conductor or d not in mon.gap_set
    return True


def _finite_box(summand: MonomialSummand):
    """Exact per-axis bounds containing S \\ T, or None when infinite.

    For each generator g of S and axis j, some relation generator r must
    dominate g on every axis except j; then points escaping along axis j
    fall into r + Gamma once x_j clears r_j (plus the conductor on the
    numerical axis), which bounds the complement exactly.
    """
    mon = summand.monoid
    dim = mon.dim
    s_gens = summand.gens.generators
    t_gens = summand.rels.generators
    if not s_gens:
        return [0] * dim
    if dim == 0:
        return []
    if not t_gens:
        return None
    conductor = mon.conductor if mon.has_numerical_axis else 0
    bounds = [0] * dim
    for g in s_gens:
        for j in range(dim):
            best = None
            for r in t_gens:
                if all(_axis_member(mon, i, g[i] - r[i])
                       for i in range(dim) if i != j):
                    pad = conductor if (j == 0 and mon.has_numerical_axis) else 0
                    cand = r[j] + pad
                    if best is None or cand < best:
                        best = cand
            if best is None:
                return None
            bounds[j] = max(bounds[j], best)
    return bounds


def summand_basis_degrees(summand: MonomialSummand, cap: int = ENUMERATION_CAP):
    """Integer-lattice degrees of the k-basis, or None when infinite."""
    bounds = _finite_box(summand)
    if bounds is None:
        return None
    total = 1
    for b in bounds:
        total *= max(b, 1)
    if total > cap:
        raise EnumerationCapError(
            f"basis box of {total} points exceeds cap", stage="length")
    out = []
    for v in monoid_mod._box_points([max(b, 1) for b in bounds]):
        if summand.basis_member(v):
            out.append(v)
    return out


def length(module: GradedModule, cap: int = ENUMERATION_CAP):
    """Total k-dimension, or math.inf when the graded support is infinite."""
    total = 0
    for s in module.summands:
        degs = summand_basis_degrees(s, cap=cap)
        if degs is None:
            return math.inf
        total += len(degs) * s.multiplicity
    return total


@dataclass(frozen=True)
class MuReport:
    count: int
    degrees: tuple  # rational degree vectors, sorted, with multiplicity


def minimal_generator_count(module: GradedModule) -> MuReport:
    """mu(M) = dim_k(M / mM), with the degree multiset of the generators.

    For a monomial summand the minimal generators are exactly the listed
    S-generators that survive the relation set, since any other surviving
    degree has a surviving one-step predecessor.
    """
    count = 0
    degrees = []
    for s in module.summands:
        for g in s.gens.generators:
            count += s.multiplicity
            degrees.extend([s.degree_of(g)] * s.multiplicity)
    return MuReport(count, tuple(sorted(degrees)))


# ---------------------------------------------------------------------------
# tower certificates for quotients by powers of a monomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TowerStep:
    k: int
    degreewise_ok: bool
    length_expected: object
    length_actual: object


@dataclass(frozen=True)
class TowerCertificate:
    ring: RingSpec
    x: tuple
    n: int
    steps: tuple

    @property
    def ok(self) -> bool:
        return all(s.degreewise_ok for s in self.steps) and all(
            s.length_expected == s.length_actual for s in self.steps)


def tower_certificate(ring: RingSpec, x, n: int,
                      cap: int = ENUMERATION_CAP) -> TowerCertificate:
    """Witness the filtration of R/x^n R by n copies of R/xR.

    Verifies, for k = 1..n, the degreewise identity
    dim (R/x^k)_g = dim (R/x^(k-1))_g + dim (R/x)_(g - (k-1)x)
    on a truncation box, plus exact length additivity when finite.
    """
    mon = ring.monoid
    v = mon.normalize_vector(x)
    if not mon.member(v):
        raise UnsupportedOperationError(f"{v} is not a monomial degree of R")
    if all(c == 0 for c in v):
        raise UnsupportedOperationError("x must be a nonunit monomial")
    if n < 1:
        raise UnsupportedOperationError("n must be >= 1")

    def quotient(k):
        return MonomialSummand(
            _zero_shift(mon.dim),
            ExponentSet(mon, ((0,) * mon.dim,)),
            ExponentSet(mon, (tuple(k * c for c in v),)))

    margin = (mon.conductor + max(mon.generators)) if mon.has_numerical_axis else 1
    cutoff = [n * c + margin + 1 for c in v]
    total = 1
    for b in cutoff:
        total *= b
    if total > cap:
        raise EnumerationCapError("tower truncation box exceeds cap",
                                  stage="tower_certificate")

    base = quotient(1)
    base_degs = summand_basis_degrees(base, cap=cap)
    base_len = len(base_degs) if base_degs is not None else math.inf
    steps = []
    for k in range(1, n + 1):
        big = quotient(k)
        smaller = quotient(k - 1) if k > 1 else None
        ok = True
        if k > 1:
            off = tuple((k - 1) * c for c in v)
            for g in monoid_mod._box_points(cutoff):
                if not mon.member(g):
                    continue
                lhs = 1 if big.basis_member(g) else 0
                rhs = 1 if smaller.basis_member(g) else 0
                prev = tuple(a - b for a, b in zip(g, off))
                if all(c >= 0 for c in prev) and mon.member(prev) \
                        and base.basis_member(prev):
                    rhs += 1
                if lhs != rhs:
                    ok = False
                    break
        degs = summand_basis_degrees(big, cap=cap)
        actual = len(degs) if degs is not None else math.inf
        expected = k * base_len
        steps.append(TowerStep(k, ok, expected, actual))
    return TowerCertificate(ring, v, n, tuple(steps))
