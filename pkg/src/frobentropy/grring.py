"""Graded models of complete monoid rings k[[Gamma]] and their endomorphisms.

All lengths and Betti numbers of graded objects over k[[Gamma]] agree with
those of the graded monoid algebra, so the ring is represented purely by its
field and monoid; no power series arithmetic happens anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import field as field_mod
from . import monoid as monoid_mod
from .errors import EnumerationCapError, UnsupportedOperationError
from .field import FieldSpec
from .monoid import ENUMERATION_CAP, ExponentSet, MonoidSpec, _numerical_order_table


@dataclass(frozen=True)
class RingSpec:
    """R = k[[Gamma]]; dimension and embedding dimension come from Gamma."""

    field: FieldSpec
    monoid: MonoidSpec

    @property
    def dim(self) -> int:
        return self.monoid.dim

    @property
    def edim(self) -> int:
        return self.monoid.embedding_dimension

    @property
    def char(self) -> int:
        return self.field.p

    @property
    def is_regular(self) -> bool:
        return self.monoid.is_free_like

    def maximal_ideal(self) -> ExponentSet:
        return ExponentSet(self.monoid, self.monoid.maximal_ideal_generators())

    def describe(self) -> str:
        mon = self.monoid
        if mon.kind == "numerical":
            gens = ",".join(f"t^{a}" for a in mon.generators)
            return f"{self.field.describe()}[[{gens}]]"
        if mon.kind == "free":
            vars_ = ",".join(f"x{i + 1}" for i in range(mon.rank))
            return f"{self.field.describe()}[[{vars_}]]"
        gens = ",".join(f"t^{a}" for a in mon.generators)
        vars_ = ",".join(f"x{i + 1}" for i in range(mon.rank))
        return f"{self.field.describe()}[[{gens};{vars_}]]"


@dataclass(frozen=True)
class EndomorphismSpec:
    """A finite local endomorphism: Frobenius x -> x^p, or degree scaling by m."""

    kind: str
    u: int
    residue_degree: int

    @classmethod
    def frobenius(cls, ring: RingSpec) -> "EndomorphismSpec":
        if ring.char <= 0:
            raise UnsupportedOperationError("frobenius needs prime characteristic")
        return cls("frobenius", ring.char, field_mod.p_degree(ring.field))

    @classmethod
    def scale(cls, ring: RingSpec, m: int) -> "EndomorphismSpec":
        if m < 1:
            raise UnsupportedOperationError("scale endomorphism needs m >= 1")
        return cls("scale", m, 1)

    def describe(self) -> str:
        if self.kind == "frobenius":
            return f"F (u={self.u})"
        return f"F_{self.u}"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def phi_power_ideal(ring: RingSpec, phi: EndomorphismSpec, e: int) -> ExponentSet:
    """Exponent set of the ideal generated by the e-th phi-powers of m-generators."""
    if e < 0:
        raise UnsupportedOperationError("e must be >= 0")
    factor = phi.u ** e
    gens = tuple(
        tuple(factor * x for x in g)
        for g in ring.monoid.maximal_ideal_generators()
    )
    return ExponentSet(ring.monoid, gens)


def length_sequence(ring: RingSpec, phi: EndomorphismSpec, e_max: int,
                    cap: int = ENUMERATION_CAP) -> list:
    """L_e = length of R / phi^e(m)R for e = 0..e_max."""
    if e_max < 0:
        raise UnsupportedOperationError("e_max must be >= 0")
    out = []
    for e in range(e_max + 1):
        try:
            value = monoid_mod.complement_count(
                ring.monoid, phi_power_ideal(ring, phi, e), cap=cap)
        except EnumerationCapError as exc:
            raise EnumerationCapError(
                f"length_sequence exceeded enumeration cap at e={e}: {exc}",
                stage="length_sequence", e=e) from exc
        if value == math.inf:
            raise UnsupportedOperationError(
                f"phi-power ideal at e={e} is not primary to the maximal ideal")
        out.append(value)
    return out


def _order_profile(monoid: MonoidSpec, numerical_bound: int):
    """order table for the numerical axis, None when there is none."""
    if monoid.has_numerical_axis:
        return _numerical_order_table(monoid.generators, numerical_bound)
    return None


def hilbert_samuel(ring: RingSpec, n: int, cap: int = ENUMERATION_CAP) -> int:
    """Length of R/m^n, counting monoid elements of order below n."""
    if n < 1:
        raise UnsupportedOperationError("hilbert_samuel needs n >= 1")
    mon = ring.monoid
    free_rank = len(mon.free_axes)
    if mon.has_numerical_axis:
        max_a = max(mon.generators)
        bound = n * max_a + mon.conductor
        if bound > cap:
            raise EnumerationCapError(
                f"hilbert_samuel scan of {bound} points exceeds cap",
                stage="hilbert_samuel")
        table = _order_profile(mon, bound)
        # bucket by numerical order, then count free vectors of small total degree
        counts = [0] * n
        for x in range(bound + 1):
            k = table[x]
            if 0 <= k < n:
                counts[k] += 1
        total = 0
        for k in range(n):
            total += counts[k] * _simplex_count(n - k, free_rank)
        return total
    return _simplex_count(n, free_rank)


def _simplex_count(n: int, rank: int) -> int:
    """#{v in Z_>=0^rank : |v| < n}."""
    if rank == 0:
        return 1 if n >= 1 else 0
    return math.comb(n - 1 + rank, rank)


@dataclass(frozen=True)
class MultiplicityReport:
    value: int | None
    residual: float
    stabilized: bool
    window: tuple
    samples: tuple

    @property
    def inconclusive(self) -> bool:
        return not self.stabilized


def multiplicity(ring: RingSpec, fit_max: int = 64, tol: float = 1e-6,
                 cap: int = ENUMERATION_CAP) -> MultiplicityReport:
    """Hilbert-Samuel multiplicity via d-th finite differences of len(R/m^n).

    len(R/m^n) is eventually a degree-d polynomial with leading term e(R)/d!,
    so its d-th difference stabilizes at the exact integer e(R); the residual
    is the worst deviation from the reported value over the fit window.
    """
    d = ring.dim
    lo = max(1, fit_max // 2)
    need_from = max(1, lo - d)
    samples = {n: hilbert_samuel(ring, n, cap=cap)
               for n in range(need_from, fit_max + 1)}

    def diff(n, order):
        if order == 0:
            return samples[n]
        return diff(n, order - 1) - diff(n - 1, order - 1)

    window = tuple(range(max(lo, d + 1), fit_max + 1))
    if not window:
        return MultiplicityReport(None, math.inf, False, (lo, fit_max), ())
    values = [diff(n, d) for n in window]
    candidate = values[-1]
    residual = max(abs(v - candidate) for v in values)
    stabilized = residual <= tol and candidate >= 1
    return MultiplicityReport(
        candidate if stabilized else None,
        float(residual),
        stabilized,
        (window[0], window[-1]),
        tuple(values),
    )


def sandwich_check(ring: RingSpec, phi: EndomorphismSpec, e: int,
                   cap: int = ENUMERATION_CAP) -> bool:
    """Verify m^(nu*u^e) <= phi^e(m)R <= m^(u^e) by order bookkeeping.

    The phi-power ideal is a product of its numerical part and pure powers
    on the free axes, so the complement factors as (numerical complement)
    x (box below u^e); the maximal order over it is computed axiswise.
    """
    if e < 1:
        raise UnsupportedOperationError("sandwich_check needs e >= 1")
    mon = ring.monoid
    nu = ring.edim
    if nu == 0:
        return True  # zero maximal ideal; both containments are vacuous
    ue = phi.u ** e
    free_rank = len(mon.free_axes)

    # right containment: every ideal generator has order >= u^e
    if mon.has_numerical_axis and mon.conductor > 0:
        zeros = (0,) * (mon.dim - 1)
        for a in mon.generators:
            if monoid_mod.order_of(mon, (ue * a,) + zeros) < ue:
                return False
    # for <1> the order of u^e*a is u^e*a itself; free pure powers are exact

    # left containment: max order over the complement stays below nu*u^e
    max_order = (ue - 1) * free_rank
    if mon.has_numerical_axis and mon.conductor == 0:
        max_order += ue * min(mon.generators) - 1  # <1>: order is the value
    elif mon.has_numerical_axis:
        g_min = ue * min(mon.generators)
        bound = g_min + mon.conductor
        if bound > cap:
            raise EnumerationCapError("sandwich complement scan exceeds cap",
                                      stage="sandwich_check", e=e)
        gap_set = mon.gap_set
        conductor = mon.conductor
        gens = [ue * a for a in mon.generators]
        table = _numerical_order_table(mon.generators, bound)
        best = -1
        for n in range(bound):
            if n in gap_set:
                continue
            in_ideal = any(
                n >= g and (n - g >= conductor or (n - g) not in gap_set)
                for g in gens)
            if not in_ideal:
                best = max(best, table[n])
        max_order += max(best, 0)
    return max_order < nu * ue
