"""Brute-force oracles: independent slow paths for cross-checking.

Everything here favors obviousness over speed: monoid membership comes from
explicit coefficient enumeration, homology from dense matrices over the
whole truncated degree range with a fresh elimination routine, and no
window or stabilization logic appears anywhere.  Size caps are enforced
strictly; these run only on desk-scale instances.
"""

from __future__ import annotations

import itertools

from .errors import EnumerationCapError
from .field import field_ops
from .grmod import GradedModule
from .monoid import MonoidSpec

ORACLE_CAP = 200_000


# ---------------------------------------------------------------------------
# numerical semigroups by raw coefficient enumeration
# ---------------------------------------------------------------------------

def _reachable_set(generators, bound):
    """All sums of generators up to bound, by exhaustive coefficient loops."""
    gens = sorted(generators)
    reach = {0}
    for a in gens:
        new = set()
        for base in reach:
            k = 0
            while base + k * a <= bound:
                new.add(base + k * a)
                k += 1
        reach = new
    return reach


def oracle_gaps(generators):
    """(gaps, frobenius_number, conductor) by direct enumeration."""
    gens = sorted(generators)
    bound = gens[0] * gens[-1] + gens[-1] + 1
    reach = _reachable_set(gens, bound)
    gaps = [n for n in range(bound) if n not in reach]
    frob = max(gaps) if gaps else -1
    return tuple(gaps), frob, frob + 1


def oracle_complement(generators, ideal_gens):
    """Sorted complement of U(g + Gamma) inside Gamma, by enumeration."""
    gaps, frob, conductor = oracle_gaps(generators)
    bound = min(ideal_gens) + conductor + 1
    reach = _reachable_set(generators, bound)
    out = []
    for n in sorted(reach):
        if n >= bound:
            break
        if not any(n - g in reach for g in ideal_gens if n >= g):
            out.append(n)
    return out


def oracle_pushforward_decompose(generators, u, e, extent=None):
    """Residue-class decomposition of the semigroup under scaling by u^e.

    Returns {class j: {"gens": minimal elements, "elements": first few}},
    using only the enumerated member set.
    """
    upow = u ** e
    gaps, frob, conductor = oracle_gaps(generators)
    if extent is None:
        extent = upow * (conductor + max(generators) + upow) + conductor
    reach = _reachable_set(generators, extent)
    classes = {}
    for j in range(upow):
        values = sorted((s - j) // upow for s in reach if s % upow == j)
        mins = []
        for x in values:
            if not any((x - y) in reach and x != y for y in mins):
                mins.append(x)
        classes[j] = {"gens": mins, "elements": values[:10]}
    return classes


# ---------------------------------------------------------------------------
# dense exact linear algebra (fresh, minimal)
# ---------------------------------------------------------------------------

def _dense_rank(rows, ops):
    mat = [list(r) for r in rows]
    rank = 0
    col = 0
    ncols = len(mat[0]) if mat else 0
    while rank < len(mat) and col < ncols:
        piv = None
        for r in range(rank, len(mat)):
            if not ops.is_zero(mat[r][col]):
                piv = r
                break
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = ops.inv(mat[rank][col])
        mat[rank] = [ops.mul(inv, x) for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and not ops.is_zero(mat[r][col]):
                f = mat[r][col]
                mat[r] = [ops.sub(x, ops.mul(f, y))
                          for x, y in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


def _dense_kernel(rows, ncols, ops):
    if not rows:
        basis = []
        for j in range(ncols):
            v = [ops.zero] * ncols
            v[j] = ops.one
            basis.append(v)
        return basis
    mat = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if not ops.is_zero(mat[r][col]):
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = ops.inv(mat[rank][col])
        mat[rank] = [ops.mul(inv, x) for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and not ops.is_zero(mat[r][col]):
                f = mat[r][col]
                mat[r] = [ops.sub(x, ops.mul(f, y))
                          for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    pivot_set = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [ops.zero] * ncols
        v[j] = ops.one
        for r, pc in enumerate(pivots):
            v[pc] = ops.neg(mat[r][j])
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# oracle membership for modules
# ---------------------------------------------------------------------------

def _oracle_membership(mon: MonoidSpec, scalar_extent: int):
    if mon.kind == "free":
        return lambda v: all(x >= 0 for x in v)
    reach = _reachable_set(mon.generators, scalar_extent)

    def member(v):
        if v[0] < 0 or v[0] > scalar_extent or v[0] not in reach:
            return False
        return all(x >= 0 for x in v[1:])
    return member


def _box(cap, dim):
    return itertools.product(range(cap + 1), repeat=dim)


def _summand_tester(summand, member):
    s_gens = summand.gens.generators
    t_gens = summand.rels.generators

    def in_basis(v):
        hit = any(member(tuple(a - b for a, b in zip(v, g))) for g in s_gens)
        if not hit:
            return False
        return not any(member(tuple(a - b for a, b in zip(v, g)))
                       for g in t_gens)
    return in_basis


def oracle_koszul_lengths(module: GradedModule, x_degrees, cap: int):
    """Koszul homology lengths from one dense matrix per differential.

    The basis is every (subset, degree) pair with degree in [0, cap]^dim;
    lengths count all homology that the truncation can see.
    """
    ring = module.ring
    mon = ring.monoid
    ops = field_ops(ring.field)
    x = [mon.normalize_vector(v) for v in x_degrees]
    nu = len(x)
    if (cap + 1) ** mon.dim > ORACLE_CAP:
        raise EnumerationCapError("oracle degree box exceeds cap",
                                  stage="oracle_koszul")
    member = _oracle_membership(mon, cap * (1 + max(
        (sum(v) for v in x), default=1)) + cap)
    subsets = [[frozenset(c) for c in itertools.combinations(range(nu), i)]
               for i in range(nu + 1)]
    totals = [0] * (nu + 1)
    for summand in module.summands:
        in_basis = _summand_tester(summand, member)
        bases = [[] for _ in range(nu + 1)]
        for gamma in _box(cap, mon.dim):
            for i in range(nu + 1):
                for J in subsets[i]:
                    pos = tuple(g - sum(x[j][a] for j in J)
                                for a, g in enumerate(gamma))
                    if all(c >= 0 for c in pos) and in_basis(pos):
                        bases[i].append((J, gamma))
        index = [{key: c for c, key in enumerate(b)} for b in bases]
        ranks = [0] * (nu + 2)
        for i in range(1, nu + 1):
            if not bases[i] or not bases[i - 1]:
                continue
            rows = []
            for J, gamma in bases[i]:
                row = [ops.zero] * len(bases[i - 1])
                for pos_idx, j in enumerate(sorted(J)):
                    key = (J - {j}, gamma)
                    c = index[i - 1].get(key)
                    if c is not None:
                        row[c] = ops.one if pos_idx % 2 == 0 else ops.neg(ops.one)
                rows.append(row)
            ranks[i] = _dense_rank(rows, ops)
        for i in range(nu + 1):
            totals[i] += (len(bases[i]) - ranks[i] - ranks[i + 1]) \
                * summand.multiplicity
    return tuple(totals)


def oracle_resolution_betti(module: GradedModule, steps: int, cap: int):
    """Betti numbers by dense degreewise kernels, no windows or margins."""
    ring = module.ring
    mon = ring.monoid
    ops = field_ops(ring.field)
    if (cap + 1) ** mon.dim > ORACLE_CAP:
        raise EnumerationCapError("oracle degree box exceeds cap",
                                  stage="oracle_resolution")
    member = _oracle_membership(mon, 4 * cap + 4)
    mingens = mon.maximal_ideal_generators()
    degrees = sorted(_box(cap, mon.dim), key=lambda v: (sum(v), v))
    betti = [0] * (steps + 1)
    for summand in module.summands:
        in_basis = _summand_tester(summand, member)
        f_degrees = list(summand.gens.generators)
        betti[0] += len(f_degrees) * summand.multiplicity

        def piece(deglist, gamma):
            return [i for i, d in enumerate(deglist)
                    if member(tuple(g - x for g, x in zip(gamma, d)))]

        kernels = {}
        for gamma in degrees:
            present = piece(f_degrees, gamma)
            if not present:
                continue
            rows = [[ops.one] * len(present)] if in_basis(gamma) else []
            ker = _dense_kernel(rows, len(present), ops)
            if ker:
                kernels[gamma] = ker
        cur = f_degrees
        for step in range(1, steps + 1):
            new_gens = []
            for gamma in degrees:
                if gamma not in kernels:
                    continue
                present = piece(cur, gamma)
                spanned = []
                for a in mingens:
                    prev = tuple(g - x for g, x in zip(gamma, a))
                    if any(c < 0 for c in prev) or prev not in kernels:
                        continue
                    pprev = piece(cur, prev)
                    pos = {i: c for c, i in enumerate(present)}
                    for vec in kernels[prev]:
                        lifted = [ops.zero] * len(present)
                        for c, i in enumerate(pprev):
                            lifted[pos[i]] = vec[c]
                        spanned.append(lifted)
                base_rank = _dense_rank(spanned, ops) if spanned else 0
                stacked = list(spanned)
                for vec in kernels[gamma]:
                    before = _dense_rank(stacked, ops) if stacked else 0
                    stacked.append(vec)
                    after = _dense_rank(stacked, ops)
                    if after > before:
                        new_gens.append((gamma, vec))
                    else:
                        stacked.pop()
                del base_rank
            betti[step] += len(new_gens) * summand.multiplicity
            if step == steps:
                break
            next_kernels = {}
            for gamma in degrees:
                present_new = [i for i, (d, _) in enumerate(new_gens)
                               if member(tuple(g - x for g, x in zip(gamma, d)))]
                if not present_new:
                    continue
                target = piece(cur, gamma)
                tpos = {i: c for c, i in enumerate(target)}
                cols = []
                for i in present_new:
                    d, vec = new_gens[i]
                    src = piece(cur, d)
                    col = [ops.zero] * len(target)
                    for c, idx in enumerate(src):
                        col[tpos[idx]] = vec[c]
                    cols.append(col)
                rows = [[cols[j][r] for j in range(len(cols))]
                        for r in range(len(target))]
                ker = _dense_kernel(rows, len(cols), ops)
                if ker:
                    next_kernels[gamma] = ker
            kernels = next_kernels
            cur = [d for d, _ in new_gens]
    return tuple(betti)
