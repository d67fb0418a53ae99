"""Exact base fields: F_p, F_{p^s}, and rational function fields F_p(u_1..u_m).

Elements are kept in a unique canonical form (residues in [0, p), fixed
polynomial basis for finite fields, reduced fractions with monic denominator
for rational function fields), so equality is plain payload equality.  The
rational function kind is the one imperfect family: its degree over its
subfield of p-th powers is p^m, which is what drives every residue-degree
factor downstream.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DegreeOverflowError,
    DivisionByZeroError,
    FieldMismatchError,
    UnsupportedOperationError,
)

DEGREE_CAP = 64  # default per-variable exponent cap inside rational functions

# Fixed modulus table for common finite fields; little-endian, degree s monic.
# Entries are verified irreducible at load time; missing pairs fall back to a
# deterministic lowest-lexicographic search.
_MODULUS_TABLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# univariate polynomials over F_p as little-endian coefficient tuples
# ---------------------------------------------------------------------------

def _uni_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _uni_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _uni_trim(out)


def _uni_add(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    return _uni_trim(out)


def _uni_divmod(a, b, p):
    if not b:
        raise DivisionByZeroError("univariate division by zero polynomial")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        q[shift] = coef
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * y) % p
    return _uni_trim(q), _uni_trim(a)


def _uni_mod_pow_x(base, exp, modulus, p):
    """x-power helper: base^exp mod modulus over F_p."""
    result = (1,)
    base = _uni_divmod(base, modulus, p)[1]
    while exp:
        if exp & 1:
            result = _uni_divmod(_uni_mul(result, base, p), modulus, p)[1]
        base = _uni_divmod(_uni_mul(base, base, p), modulus, p)[1]
        exp >>= 1
    return result


def _uni_xgcd(a, b, p):
    """Extended gcd; returns (g, x, y) with x*a + y*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = _uni_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _uni_add(s0, _uni_mul(tuple((-c) % p for c in q), s1, p), p)
        t0, t1 = t1, _uni_add(t0, _uni_mul(tuple((-c) % p for c in q), t1, p), p)
    if not r0:
        return (), (), ()
    inv_lead = pow(r0[-1], -1, p)
    scale = lambda c: tuple((x * inv_lead) % p for x in c)
    return scale(r0), scale(s0), scale(t0)


def _uni_is_irreducible(f, p):
    """Trial division by all monic polynomials of degree <= deg(f)//2."""
    deg = len(f) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = low + (1,)
            if not _uni_divmod(f, g, p)[1]:
                return False
    return True


@functools.lru_cache(maxsize=None)
def _finite_field_modulus(p: int, s: int):
    entry = _MODULUS_TABLE.get((p, s))
    if entry is not None:
        if not _uni_is_irreducible(entry, p):
            raise AssertionError(f"modulus table entry for ({p},{s}) reducible")
        return entry
    for n in range(p ** s):
        low = tuple((n // p ** i) % p for i in range(s))
        f = low + (1,)
        if _uni_is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {s} over F_{p}")


# ---------------------------------------------------------------------------
# multivariate polynomials over F_p as dicts {exponent tuple: coeff}
# ---------------------------------------------------------------------------

def _mv_normalize(d, p):
    return {e: c % p for e, c in d.items() if c % p}


def _mv_add(f, g, p):
    out = dict(f)
    for e, c in g.items():
        out[e] = (out.get(e, 0) + c) % p
        if not out[e]:
            del out[e]
    return out


def _mv_neg(f, p):
    return {e: (-c) % p for e, c in f.items()}


def _mv_scale(f, c, p):
    c %= p
    if not c:
        return {}
    return {e: (x * c) % p for e, x in f.items()}


def _mv_mul(f, g, p):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return {e: c for e, c in out.items() if c}


def _mv_check_cap(f, cap):
    for e in f:
        if any(x > cap for x in e):
            raise DegreeOverflowError(
                f"exponent {max(e)} exceeds per-variable cap {cap}"
            )


def _mv_lead(f):
    return max(f)


def _mv_div_exact(f, g, p):
    """Divide f by g assuming the division is exact."""
    if not g:
        raise DivisionByZeroError("division by zero polynomial")
    f = dict(f)
    q = {}
    lg = _mv_lead(g)
    inv_lg = pow(g[lg], -1, p)
    while f:
        lf = _mv_lead(f)
        qe = tuple(a - b for a, b in zip(lf, lg))
        if any(x < 0 for x in qe):
            raise AssertionError("inexact polynomial division")
        qc = (f[lf] * inv_lg) % p
        q[qe] = qc
        f = _mv_add(f, _mv_neg(_mv_mul({qe: qc}, g, p), p), p)
    return q


def _mv_deg_in(f, var):
    return max((e[var] for e in f), default=0)


def _mv_coeff_in(f, var, d):
    """Coefficient of x_var^d, returned with the var-th exponent zeroed."""
    out = {}
    for e, c in f.items():
        if e[var] == d:
            out[e[:var] + (0,) + e[var + 1:]] = c
    return out


def _mv_shift(f, var, d):
    return {e[:var] + (e[var] + d,) + e[var + 1:]: c for e, c in f.items()}


def _mv_prem(a, b, var, p):
    """Pseudo-remainder of a by b in the main variable var."""
    db = _mv_deg_in(b, var)
    lb = _mv_coeff_in(b, var, db)
    while a and _mv_deg_in(a, var) >= db:
        da = _mv_deg_in(a, var)
        la = _mv_coeff_in(a, var, da)
        a = _mv_add(
            _mv_mul(lb, a, p),
            _mv_neg(_mv_mul(la, _mv_shift(b, var, da - db), p), p),
            p,
        )
    return a


def _mv_gcd_rec(f, g, p, var, nvars):
    if not f:
        return dict(g)
    if not g:
        return dict(f)
    if var >= nvars:
        return {(0,) * nvars: 1}
    if _mv_deg_in(f, var) == 0 and _mv_deg_in(g, var) == 0:
        return _mv_gcd_rec(f, g, p, var + 1, nvars)

    def content_primitive(h):
        coeffs = [_mv_coeff_in(h, var, d)
                  for d in sorted({e[var] for e in h})]
        cont = coeffs[0]
        for c in coeffs[1:]:
            cont = _mv_gcd_rec(cont, c, p, var + 1, nvars)
        return cont, _mv_div_exact(h, cont, p)

    cf, pf = content_primitive(f)
    cg, pg = content_primitive(g)
    cont = _mv_gcd_rec(cf, cg, p, var + 1, nvars)
    a, b = pf, pg
    if _mv_deg_in(a, var) < _mv_deg_in(b, var):
        a, b = b, a
    while b and _mv_deg_in(b, var) > 0:
        r = _mv_prem(a, b, var, p)
        if not r:
            a = b
            b = {}
            break
        r = content_primitive(r)[1]
        a, b = b, r
    if b:
        # PRS dropped to degree 0 in var: the var-part of the gcd is trivial.
        return cont
    return _mv_mul(cont, content_primitive(a)[1], p)


def _mv_gcd(f, g, p, nvars):
    out = _mv_gcd_rec(f, g, p, 0, nvars)
    if out:
        lead = out[_mv_lead(out)]
        out = _mv_scale(out, pow(lead, -1, p), p)
    return out


def _poly_freeze(d):
    return tuple(sorted(d.items()))


def _poly_thaw(t):
    return dict(t)


# ---------------------------------------------------------------------------
# field specification and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """An exact base field: prime, finite, or purely transcendental over F_p."""

    kind: str
    p: int
    s: int = 1
    m: int = 0
    degree_cap: int = DEGREE_CAP

    def __post_init__(self):
        if self.kind not in ("prime", "finite", "rational_function"):
            raise UnsupportedOperationError(f"unknown field kind {self.kind!r}")
        if not _is_prime(self.p):
            raise UnsupportedOperationError(f"characteristic {self.p} is not prime")
        if self.s < 1:
            raise UnsupportedOperationError("extension degree s must be >= 1")
        if self.m < 0:
            raise UnsupportedOperationError("transcendence count m must be >= 0")
        if self.kind != "finite" and self.s != 1:
            raise UnsupportedOperationError("s > 1 requires finite kind")
        if self.kind != "rational_function" and self.m != 0:
            raise UnsupportedOperationError("m > 0 requires rational_function kind")
        if self.kind == "rational_function" and self.m == 0:
            raise UnsupportedOperationError("rational_function kind needs m >= 1")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def finite(cls, p: int, s: int) -> "FieldSpec":
        return cls("finite", p, s=s)

    @classmethod
    def rational_function(cls, p: int, m: int, degree_cap: int = DEGREE_CAP) -> "FieldSpec":
        return cls("rational_function", p, m=m, degree_cap=degree_cap)

    @property
    def is_perfect(self) -> bool:
        return self.kind != "rational_function"

    @property
    def modulus(self):
        if self.kind != "finite":
            raise UnsupportedOperationError("modulus only defined for finite kind")
        return _finite_field_modulus(self.p, self.s)

    def describe(self) -> str:
        if self.kind == "prime":
            return f"F_{self.p}"
        if self.kind == "finite":
            return f"F_{self.p}^{self.s}"
        vars_ = ",".join(f"u{i + 1}" for i in range(self.m))
        return f"F_{self.p}({vars_})"

    # -- element constructors ------------------------------------------------

    def zero(self) -> "FieldElement":
        return self.from_int(0)

    def one(self) -> "FieldElement":
        return self.from_int(1)

    def from_int(self, n: int) -> "FieldElement":
        n %= self.p
        if self.kind == "prime":
            return FieldElement(self, n)
        if self.kind == "finite":
            return FieldElement(self, (n,) + (0,) * (self.s - 1))
        num = {} if n == 0 else {(0,) * self.m: n}
        return FieldElement(self, (_poly_freeze(num), _poly_freeze({(0,) * self.m: 1})))

    def finite_element(self, coeffs: Iterable[int]) -> "FieldElement":
        if self.kind != "finite":
            raise UnsupportedOperationError("finite_element needs finite kind")
        c = tuple(x % self.p for x in coeffs)
        if len(c) != self.s:
            raise UnsupportedOperationError(f"need exactly {self.s} coefficients")
        return FieldElement(self, c)

    def transcendental(self, i: int = 0) -> "FieldElement":
        if self.kind != "rational_function":
            raise UnsupportedOperationError("transcendental needs rational_function kind")
        if not 0 <= i < self.m:
            raise UnsupportedOperationError(f"variable index {i} out of range")
        e = tuple(1 if j == i else 0 for j in range(self.m))
        return FieldElement(self, (_poly_freeze({e: 1}),
                                   _poly_freeze({(0,) * self.m: 1})))

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> "FieldElement":
        if self.kind != "rational_function":
            raise UnsupportedOperationError("monomial needs rational_function kind")
        e = tuple(exps)
        if len(e) != self.m or any(x < 0 for x in e):
            raise UnsupportedOperationError("bad monomial exponents")
        coeff %= self.p
        num = {} if coeff == 0 else {e: coeff}
        return FieldElement(self, (_poly_freeze(num),
                                   _poly_freeze({(0,) * self.m: 1})))

    def fraction(self, num_terms, den_terms) -> "FieldElement":
        """Element from raw {exps: coeff} mappings; reduced on entry."""
        if self.kind != "rational_function":
            raise UnsupportedOperationError("fraction needs rational_function kind")
        num = _mv_normalize(dict(num_terms), self.p)
        den = _mv_normalize(dict(den_terms), self.p)
        return FieldElement(self, _ratio_canonical(num, den, self))


def _ratio_canonical(num, den, spec: FieldSpec):
    p, m, cap = spec.p, spec.m, spec.degree_cap
    if not den:
        raise DivisionByZeroError("zero denominator")
    if not num:
        return ((), _poly_freeze({(0,) * m: 1}))
    g = _mv_gcd(num, den, p, m)
    if g and g != {(0,) * m: 1}:
        num = _mv_div_exact(num, g, p)
        den = _mv_div_exact(den, g, p)
    lead = den[_mv_lead(den)]
    if lead != 1:
        inv = pow(lead, -1, p)
        num = _mv_scale(num, inv, p)
        den = _mv_scale(den, inv, p)
    _mv_check_cap(num, cap)
    _mv_check_cap(den, cap)
    return (_poly_freeze(num), _poly_freeze(den))


@dataclass(frozen=True)
class FieldElement:
    """Canonical element of a FieldSpec; payload shape depends on the kind."""

    spec: FieldSpec
    payload: object

    def is_zero(self) -> bool:
        ops = field_ops(self.spec)
        return ops.is_zero(self.payload)

    def __add__(self, other):
        return arith(self, other, "add")

    def __sub__(self, other):
        return arith(self, other, "sub")

    def __mul__(self, other):
        return arith(self, other, "mul")

    def __truediv__(self, other):
        return arith(self, other, "div")

    def __neg__(self):
        ops = field_ops(self.spec)
        return FieldElement(self.spec, ops.neg(self.payload))

    def __repr__(self):
        return f"FieldElement({self.spec.describe()}, {self.payload!r})"


class FieldOps:
    """Raw payload arithmetic for one FieldSpec; used by the linear algebra core."""

    __slots__ = ("spec", "zero", "one", "add", "sub", "mul", "neg", "inv",
                 "div", "is_zero", "from_int")

    def __init__(self, spec, zero, one, add, sub, mul, neg, inv, is_zero, from_int):
        self.spec = spec
        self.zero = zero
        self.one = one
        self.add = add
        self.sub = sub
        self.mul = mul
        self.neg = neg
        self.inv = inv
        self.div = lambda a, b: mul(a, inv(b))
        self.is_zero = is_zero
        self.from_int = from_int


@functools.lru_cache(maxsize=None)
def field_ops(spec: FieldSpec) -> FieldOps:
    p = spec.p
    if spec.kind == "prime":
        return FieldOps(
            spec, 0, 1 % p,
            add=lambda a, b: (a + b) % p,
            sub=lambda a, b: (a - b) % p,
            mul=lambda a, b: (a * b) % p,
            neg=lambda a: (-a) % p,
            inv=_prime_inv(p),
            is_zero=lambda a: a == 0,
            from_int=lambda n: n % p,
        )
    if spec.kind == "finite":
        s = spec.s
        modulus = spec.modulus
        zero = (0,) * s
        one = (1,) + (0,) * (s - 1)

        def pad(c):
            return tuple(c) + (0,) * (s - len(c))

        def add(a, b):
            return tuple((x + y) % p for x, y in zip(a, b))

        def sub(a, b):
            return tuple((x - y) % p for x, y in zip(a, b))

        def mul(a, b):
            prod = _uni_mul(_uni_trim(a), _uni_trim(b), p)
            return pad(_uni_divmod(prod, modulus, p)[1])

        def inv(a):
            at = _uni_trim(a)
            if not at:
                raise DivisionByZeroError("inverse of zero")
            g, x, _ = _uni_xgcd(at, modulus, p)
            if g != (1,):
                raise DivisionByZeroError("non-invertible finite field element")
            return pad(_uni_divmod(x, modulus, p)[1])

        return FieldOps(
            spec, zero, one, add, sub, mul,
            neg=lambda a: tuple((-x) % p for x in a),
            inv=inv,
            is_zero=lambda a: all(x == 0 for x in a),
            from_int=lambda n: pad((n % p,) if n % p else ()),
        )

    # rational function field
    m, cap = spec.m, spec.degree_cap
    zero_payload = ((), _poly_freeze({(0,) * m: 1}))
    one_payload = (_poly_freeze({(0,) * m: 1}), _poly_freeze({(0,) * m: 1}))

    def add(a, b):
        n1, d1 = _poly_thaw(a[0]), _poly_thaw(a[1])
        n2, d2 = _poly_thaw(b[0]), _poly_thaw(b[1])
        num = _mv_add(_mv_mul(n1, d2, p), _mv_mul(n2, d1, p), p)
        return _ratio_canonical(num, _mv_mul(d1, d2, p), spec)

    def neg(a):
        return (_poly_freeze(_mv_neg(_poly_thaw(a[0]), p)), a[1])

    def sub(a, b):
        return add(a, neg(b))

    def mul(a, b):
        n1, d1 = _poly_thaw(a[0]), _poly_thaw(a[1])
        n2, d2 = _poly_thaw(b[0]), _poly_thaw(b[1])
        return _ratio_canonical(_mv_mul(n1, n2, p), _mv_mul(d1, d2, p), spec)

    def inv(a):
        if not a[0]:
            raise DivisionByZeroError("inverse of zero")
        return _ratio_canonical(_poly_thaw(a[1]), _poly_thaw(a[0]), spec)

    return FieldOps(
        spec, zero_payload, one_payload, add, sub, mul, neg, inv,
        is_zero=lambda a: not a[0],
        from_int=lambda n: _ratio_canonical(
            _mv_normalize({(0,) * m: n}, p), {(0,) * m: 1}, spec),
    )


def _prime_inv(p):
    def inv(a):
        if a % p == 0:
            raise DivisionByZeroError("inverse of zero")
        return pow(a, -1, p)
    return inv


# ---------------------------------------------------------------------------
# field-level operations
# ---------------------------------------------------------------------------

def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Exact field arithmetic; operands must share a FieldSpec."""
    if not isinstance(a, FieldElement) or not isinstance(b, FieldElement):
        raise FieldMismatchError("arith needs two FieldElement operands")
    if a.spec != b.spec:
        raise FieldMismatchError(
            f"mixed fields {a.spec.describe()} and {b.spec.describe()}")
    ops = field_ops(a.spec)
    if op == "add":
        return FieldElement(a.spec, ops.add(a.payload, b.payload))
    if op == "sub":
        return FieldElement(a.spec, ops.sub(a.payload, b.payload))
    if op == "mul":
        return FieldElement(a.spec, ops.mul(a.payload, b.payload))
    if op == "div":
        if ops.is_zero(b.payload):
            raise DivisionByZeroError("division by zero")
        return FieldElement(a.spec, ops.div(a.payload, b.payload))
    raise UnsupportedOperationError(f"unknown field operation {op!r}")


def p_degree(k: FieldSpec) -> int:
    """Degree of k over its subfield of p-th powers; 1 exactly when perfect."""
    return k.p ** k.m


def frobenius_basis(k: FieldSpec, e: int) -> list:
    """Monomial basis of k over the subfield of p^e-th powers.

    For a purely transcendental extension this is the box of monomials with
    per-variable exponents below p^e; perfect fields return [1].
    """
    if e < 1:
        raise UnsupportedOperationError("frobenius_basis needs e >= 1")
    if k.is_perfect:
        return [k.one()]
    q = k.p ** e
    if q ** k.m > 10 ** 6:
        raise DegreeOverflowError(f"frobenius basis of size {q ** k.m} too large")
    basis = []
    for exps in itertools.product(range(q), repeat=k.m):
        basis.append(k.monomial(exps))
    return basis


def random_element(spec: FieldSpec, rng, max_terms: int = 3, max_deg: int = 3) -> FieldElement:
    """Random canonical element, nonzero denominator guaranteed; for tests."""
    if spec.kind == "prime":
        return spec.from_int(rng.randrange(spec.p))
    if spec.kind == "finite":
        return spec.finite_element([rng.randrange(spec.p) for _ in range(spec.s)])

    def random_poly(allow_zero):
        terms = {}
        for _ in range(rng.randrange(1, max_terms + 1)):
            e = tuple(rng.randrange(max_deg + 1) for _ in range(spec.m))
            terms[e] = rng.randrange(1, spec.p)
        if allow_zero and rng.random() < 0.2:
            return {}
        return terms

    num = random_poly(allow_zero=True)
    den = {}
    while not den:
        den = random_poly(allow_zero=False)
    return spec.fraction(num, den)
