"""Koszul homology, truncated graded kernels, minimal resolutions, Betti data.

Everything here is exact linear algebra over the base field, done degree by
degree: differentials of monomial complexes preserve internal degree, so
every graded piece is a small self-contained matrix problem.  Truncation
windows only decide which degrees get summed; a stabilization margin at the
window boundary guards against silent truncation, with an enlarge-and-retry
loop (factor 2) behind it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import monoid as monoid_mod
from .errors import (
    UnsupportedConfigurationError,
    UnsupportedOperationError,
    WindowInsufficiencyError,
)
from .field import field_ops
from .grmod import GradedModule, MonomialSummand
from .grring import RingSpec
from .linalg import SpanTracker, kernel_basis, rank
from .monoid import ExponentSet, MonoidSpec

MAX_WINDOW_RETRIES = 4


@dataclass(frozen=True)
class TruncationWindow:
    """Per-axis degree cutoffs with a stabilization margin."""

    cutoff: tuple
    margin: tuple

    def scaled(self, factor: int) -> "TruncationWindow":
        return TruncationWindow(
            tuple(c * factor for c in self.cutoff), self.margin)

    def in_margin_zone(self, v) -> bool:
        return any(x > c - m for x, c, m in zip(v, self.cutoff, self.margin))

    def box(self):
        return [c + 1 for c in self.cutoff]


def default_window(mon: MonoidSpec, base_degrees, x_degrees) -> TruncationWindow:
    """Cutoff covers generator degrees plus twists plus a periodicity margin."""
    dim = mon.dim
    cutoff = []
    margin = []
    for axis in range(dim):
        base = max((g[axis] for g in base_degrees), default=0)
        twist = sum(x[axis] for x in x_degrees)
        if axis == 0 and mon.has_numerical_axis:
            slack = 2 * mon.conductor + max(mon.generators)
            m = mon.conductor + max(mon.generators)
        else:
            slack = 3
            m = 2
        cutoff.append(base + twist + slack)
        margin.append(m)
    return TruncationWindow(tuple(cutoff), tuple(margin))


def _ascending_degrees(box):
    degs = list(monoid_mod._box_points(box))
    degs.sort(key=lambda v: (sum(v), v))
    return degs


# ---------------------------------------------------------------------------
# Koszul complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KoszulComplex:
    """Exterior complex on a sequence generating an ideal primary to m."""

    ring: RingSpec
    x: tuple  # degree vectors of the sequence entries

    def __post_init__(self):
        mon = self.ring.monoid
        degs = tuple(mon.normalize_vector(v) for v in self.x)
        object.__setattr__(self, "x", degs)
        if degs:
            finite = monoid_mod.complement_count(
                mon, ExponentSet(mon, degs))
            if finite == float("inf"):
                raise UnsupportedOperationError(
                    "Koszul sequence does not generate an m-primary ideal")

    @classmethod
    def of_maximal_ideal(cls, ring: RingSpec) -> "KoszulComplex":
        return cls(ring, ring.monoid.maximal_ideal_generators())

    @property
    def nu(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class KoszulReport:
    lengths: tuple          # lengths[i] = len H^(-i), i = 0..nu
    degree_support: tuple   # per i, sorted tuple of degrees carrying homology
    window: TruncationWindow
    retries: int

    def length_at(self, i: int) -> int:
        """Length of H^i for cohomological index i in -nu..0."""
        return self.lengths[-i] if -len(self.lengths) < i <= 0 else 0


def _subsets_by_size(nu):
    out = []
    for i in range(nu + 1):
        out.append([frozenset(c) for c in combinations(range(nu), i)])
    return out


def _summand_koszul(summand: MonomialSummand, kos: KoszulComplex,
                    window: TruncationWindow, ops):
    """Homology dimensions of summand (x) K within the window.

    Returns (dims per i, degree support per i, margin_clean).
    """
    mon = summand.monoid
    nu = kos.nu
    subsets = _subsets_by_size(nu)
    twist = {}
    for size in subsets:
        for J in size:
            twist[J] = tuple(sum(kos.x[j][a] for j in J)
                             for a in range(mon.dim))
    dims = [0] * (nu + 1)
    support = [[] for _ in range(nu + 1)]
    margin_clean = True
    one = ops.one
    for gamma in _ascending_degrees(window.box()):
        bases = []
        for i in range(nu + 1):
            present = []
            for J in subsets[i]:
                pos = tuple(g - t for g, t in zip(gamma, twist[J]))
                if all(c >= 0 for c in pos) and summand.basis_member(pos):
                    present.append(J)
            bases.append(present)
        if not any(bases):
            continue
        # d_i maps position -i to -(i-1); rank per map
        ranks = [0] * (nu + 2)
        for i in range(1, nu + 1):
            src, dst = bases[i], bases[i - 1]
            if not src or not dst:
                continue
            index = {J: c for c, J in enumerate(dst)}
            rows = []
            for J in src:
                row = [ops.zero] * len(dst)
                for pos_idx, j in enumerate(sorted(J)):
                    JJ = J - {j}
                    c = index.get(JJ)
                    if c is not None:
                        row[c] = one if pos_idx % 2 == 0 else ops.neg(one)
                rows.append(row)
            # rank of the transpose equals rank of the matrix
            ranks[i] = rank(rows, ops)
        for i in range(nu + 1):
            h = len(bases[i]) - ranks[i] - ranks[i + 1]
            if h > 0:
                dims[i] += h
                support[i].append(gamma)
                if window.in_margin_zone(gamma):
                    margin_clean = False
    return dims, support, margin_clean


def koszul_homology_lengths(module: GradedModule, kos: KoszulComplex,
                            window: TruncationWindow | None = None) -> KoszulReport:
    """Lengths of H^i(module (x) K) for i in -nu..0, window-certified.

    Nonzero homology inside the margin zone triggers an enlarge-and-retry
    loop; persistent boundary activity raises WindowInsufficiencyError.
    """
    ring = module.ring
    ops = field_ops(ring.field)
    nu = kos.nu
    totals = [0] * (nu + 1)
    support = [set() for _ in range(nu + 1)]
    worst_retries = 0
    used_window = window
    for summand in module.summands:
        base_degrees = (summand.gens.generators + summand.rels.generators) or \
            ((0,) * ring.monoid.dim,)
        base_window = window or default_window(ring.monoid, base_degrees, kos.x)
        attempt = 0
        while True:
            w = base_window.scaled(2 ** attempt) if attempt else base_window
            dims, sup, clean = _summand_koszul(summand, kos, w, ops)
            if clean:
                used_window = w
                break
            attempt += 1
            if attempt >= MAX_WINDOW_RETRIES:
                raise WindowInsufficiencyError(
                    f"Koszul homology active at window boundary {w.cutoff}; "
                    "increase the degree cutoff",
                    stage="koszul", suggested_cutoff=tuple(
                        2 * c for c in w.cutoff))
        worst_retries = max(worst_retries, attempt)
        for i in range(nu + 1):
            totals[i] += dims[i] * summand.multiplicity
            for gamma in sup[i]:
                support[i].add(summand.degree_of(gamma))
    return KoszulReport(
        tuple(totals),
        tuple(tuple(sorted(s)) for s in support),
        used_window if used_window is not None else default_window(
            ring.monoid, ((0,) * ring.monoid.dim,), kos.x),
        worst_retries,
    )


@dataclass(frozen=True)
class BoundConstants:
    N: int
    B: int
    lengths: tuple

    def d_t(self, t: float) -> float:
        import math
        return self.B * math.exp(self.N * abs(t))


def bound_constants(module: GradedModule, kos: KoszulComplex,
                    window: TruncationWindow | None = None) -> BoundConstants:
    """Smallest N with vanishing outside [-N, N], and max length B inside."""
    report = koszul_homology_lengths(module, kos, window)
    nonzero = [i for i, l in enumerate(report.lengths) if l > 0]
    if not nonzero:
        raise UnsupportedOperationError("zero module has no bound constants")
    n_const = max(nonzero)
    b_const = max(report.lengths[i] for i in range(n_const + 1))
    return BoundConstants(n_const, b_const, report.lengths)


# ---------------------------------------------------------------------------
# minimal free resolutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BettiColumn:
    index: int
    value: int
    degrees: tuple
    stabilized: bool


@dataclass(frozen=True)
class BettiTable:
    ring: RingSpec
    columns: tuple

    @property
    def values(self) -> tuple:
        return tuple(c.value for c in self.columns)

    @property
    def all_stabilized(self) -> bool:
        return all(c.stabilized for c in self.columns)


def _free_piece(gen_degrees, mon, gamma):
    return [i for i, d in enumerate(gen_degrees)
            if mon.member(tuple(g - x for g, x in zip(gamma, d)))]


def _summand_resolution(summand: MonomialSummand, steps: int,
                        window: TruncationWindow, ops, audit: bool = True):
    """Betti data of one monomial summand (multiplicity applied by caller).

    Returns (columns, margin_clean) where columns[s] = (count, degrees,
    clean).  Kernels are computed degreewise; new generators of each syzygy
    are detected by span extension over transported lower-degree kernels.
    """
    mon = summand.monoid
    mingens = mon.maximal_ideal_generators()
    degrees = _ascending_degrees(window.box())
    deg_index = {g: i for i, g in enumerate(degrees)}

    f_degrees = list(summand.gens.generators)
    columns = [(len(f_degrees), tuple(f_degrees), True)]

    # kernel of F0 -> M at each degree
    kernels = {}
    for gamma in degrees:
        present = _free_piece(f_degrees, mon, gamma)
        if not present:
            continue
        if summand.basis_member(gamma):
            row = [[ops.one] * len(present)]
            ker = kernel_basis(row, len(present), ops)
        else:
            ker = kernel_basis([], len(present), ops)
        if ker:
            kernels[gamma] = ker

    margin_clean = True
    cur_degrees = f_degrees
    for step in range(1, steps + 1):
        new_gens = []  # (degree, vector over F_{step-1} basis at that degree)
        col_clean = True
        for gamma in degrees:
            kbasis = kernels.get(gamma)
            if not kbasis:
                continue
            present = _free_piece(cur_degrees, mon, gamma)
            span = SpanTracker(len(present), ops)
            for a in mingens:
                prev = tuple(g - x for g, x in zip(gamma, a))
                if any(c < 0 for c in prev) or prev not in kernels:
                    continue
                prev_present = _free_piece(cur_degrees, mon, prev)
                pos = {i: c for c, i in enumerate(present)}
                for vec in kernels[prev]:
                    lifted = [ops.zero] * len(present)
                    for c, i in enumerate(prev_present):
                        lifted[pos[i]] = vec[c]
                    span.add(lifted)
            for vec in kbasis:
                if span.add(vec):
                    new_gens.append((gamma, vec))
                    if window.in_margin_zone(gamma):
                        col_clean = False
                        margin_clean = False
        columns.append((len(new_gens),
                        tuple(g for g, _ in new_gens), col_clean))
        if step == steps:
            break
        # assemble the next kernel family: ker(F_step -> F_{step-1})
        next_degrees = [g for g, _ in new_gens]
        gen_vectors = new_gens
        next_kernels = {}
        for gamma in degrees:
            present_new = [i for i, (d, _) in enumerate(gen_vectors)
                           if mon.member(tuple(g - x for g, x in zip(gamma, d)))]
            if not present_new:
                continue
            target_present = _free_piece(cur_degrees, mon, gamma)
            tpos = {i: c for c, i in enumerate(target_present)}
            cols = []
            for i in present_new:
                d, vec = gen_vectors[i]
                src_present = _free_piece(cur_degrees, mon, d)
                col = [ops.zero] * len(target_present)
                for c, idx in enumerate(src_present):
                    col[tpos[idx]] = vec[c]
                cols.append(col)
            if audit and gamma in kernels:
                # image must land inside the previous kernel: exactness audit
                prev_span = SpanTracker(len(target_present), ops)
                for v in kernels[gamma]:
                    prev_span.add(v)
                for col in cols:
                    if not prev_span.contains(col):
                        raise AssertionError(
                            "resolution audit: map image escapes the kernel")
            rows = [[cols[j][r] for j in range(len(cols))]
                    for r in range(len(target_present))]
            ker = kernel_basis(rows, len(cols), ops)
            if ker:
                next_kernels[gamma] = ker
        kernels = next_kernels
        cur_degrees = next_degrees
    return columns, margin_clean


def minimal_resolution(module: GradedModule, steps: int,
                       window: TruncationWindow | None = None,
                       audit: bool = True) -> BettiTable:
    """Betti numbers beta_0..beta_steps with degree multisets.

    Runs summand by summand over the direct-sum decomposition and adds the
    columns; a column is flagged unstabilized when any summand produced a
    generator inside its margin zone even after window doubling.
    """
    ring = module.ring
    if steps < 0:
        raise UnsupportedOperationError("steps must be >= 0")
    ops = field_ops(ring.field)
    agg = [[0, [], True] for _ in range(steps + 1)]
    for summand in module.summands:
        base_degrees = (summand.gens.generators + summand.rels.generators) or \
            ((0,) * ring.monoid.dim,)
        base_window = window or default_window(
            ring.monoid, base_degrees, ring.monoid.maximal_ideal_generators())
        attempt = 0
        while True:
            w = base_window.scaled(2 ** attempt) if attempt else base_window
            cols, clean = _summand_resolution(summand, steps, w, ops, audit)
            if clean:
                break
            attempt += 1
            if attempt >= MAX_WINDOW_RETRIES:
                break  # flagged columns below; caller decides
        for s, (count, degs, col_clean) in enumerate(cols):
            agg[s][0] += count * summand.multiplicity
            agg[s][1].extend(
                [summand.degree_of(g)] * summand.multiplicity for g in degs)
            agg[s][2] = agg[s][2] and col_clean
    columns = tuple(
        BettiColumn(s, agg[s][0],
                    tuple(sorted(d for block in agg[s][1] for d in block)),
                    agg[s][2])
        for s in range(steps + 1)
    )
    return BettiTable(ring, columns)


def annihilator_element(ring: RingSpec):
    """Conductor monomial killing high Ext over one-dimensional semigroup rings."""
    mon = ring.monoid
    if mon.kind != "numerical" or mon.dim != 1:
        raise UnsupportedConfigurationError(
            "annihilator element is only provided for one-dimensional "
            "numerical semigroup rings; regular rings take the free path")
    c = mon.conductor
    return (max(c, 1),)
