import itertools

import pytest

from frobentropy.errors import (
    DegreeOverflowError,
    DivisionByZeroError,
    FieldMismatchError,
)
from frobentropy.field import (
    FieldSpec,
    arith,
    field_ops,
    frobenius_basis,
    p_degree,
    random_element,
)


def test_char_2_addition_cancels():
    k = FieldSpec.rational_function(2, 1)
    u = k.transcendental()
    assert (u + u).is_zero()


def test_prime_field_arithmetic():
    k = FieldSpec.prime(3)
    assert (k.from_int(2) * k.from_int(2)) == k.from_int(1)
    assert arith(k.from_int(2), k.from_int(2), "add") == k.from_int(1)


def test_rational_inverse_law():
    k = FieldSpec.rational_function(2, 1)
    u = k.transcendental()
    denom = u + k.one()
    assert (k.one() / denom) * denom == k.one()


def test_division_by_zero_and_mixed_fields():
    k = FieldSpec.prime(5)
    with pytest.raises(DivisionByZeroError):
        arith(k.one(), k.zero(), "div")
    other = FieldSpec.prime(7)
    with pytest.raises(FieldMismatchError):
        arith(k.one(), other.one(), "add")


def test_p_degree_values():
    assert p_degree(FieldSpec.finite(2, 2)) == 1   # finite fields are perfect
    assert p_degree(FieldSpec.prime(5)) == 1
    assert p_degree(FieldSpec.rational_function(2, 1)) == 2
    assert p_degree(FieldSpec.rational_function(3, 2)) == 9


def _pth_power_decomposition(exps, q, m):
    """Split a monomial exponent into (basis residue, q-th power part)."""
    residue = tuple(x % q for x in exps)
    power = tuple(x // q for x in exps)
    return residue, power


def test_p_degree_basis_oracle_univariate():
    # oracle: every monomial u^n with n <= 24 is basis * (q-th power),
    # uniquely, and the basis residues exhaust [0, q)
    k = FieldSpec.rational_function(2, 1)
    for e in (1, 2):
        q = 2 ** e
        basis = frobenius_basis(k, e)
        assert len(basis) == p_degree(k) ** e
        residues = set()
        for b in basis:
            (exp_tuple, _), = b.payload[0]
            residues.add(exp_tuple)
        for n in range(25):
            residue, power = _pth_power_decomposition((n,), q, 1)
            assert residue in residues
            assert tuple(q * x for x in power)[0] + residue[0] == n
        assert len(residues) == q


def test_p_degree_basis_oracle_bivariate():
    k = FieldSpec.rational_function(3, 2)
    basis = frobenius_basis(k, 1)
    assert len(basis) == 9
    residues = {b.payload[0][0][0] for b in basis}
    assert residues == set(itertools.product(range(3), repeat=2))


def test_frobenius_basis_examples():
    assert len(frobenius_basis(FieldSpec.prime(5), 3)) == 1
    k = FieldSpec.rational_function(2, 1)
    exps = [b.payload[0][0][0] for b in frobenius_basis(k, 1)]
    assert exps == [(0,), (1,)]
    exps2 = [b.payload[0][0][0] for b in frobenius_basis(k, 2)]
    assert exps2 == [(0,), (1,), (2,), (3,)]


def test_basis_size_matches_p_degree_power():
    for spec in (FieldSpec.rational_function(2, 1),
                 FieldSpec.rational_function(3, 1)):
        for e in range(1, 5):
            assert len(frobenius_basis(spec, e)) == p_degree(spec) ** e


def test_field_axioms_random(rng):
    specs = [
        FieldSpec.prime(5),
        FieldSpec.finite(2, 2),
        FieldSpec.finite(3, 2),
        FieldSpec.rational_function(2, 1),
        FieldSpec.rational_function(3, 2),
    ]
    for spec in specs:
        for _ in range(40):
            a, b, c = (random_element(spec, rng) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert a + b == b + a
            assert a + (-a) == spec.zero()
            assert a * spec.one() == a
            if not b.is_zero():
                assert (a / b) * b == a


def test_canonical_form_idempotent(rng):
    # re-normalizing a canonical fraction must reproduce it exactly
    spec = FieldSpec.rational_function(2, 1)
    for _ in range(30):
        a = random_element(spec, rng)
        num, den = a.payload
        again = spec.fraction(dict(num), dict(den))
        assert again == a


def test_finite_field_modulus_is_deterministic():
    a = FieldSpec.finite(2, 2).modulus
    b = FieldSpec.finite(2, 2).modulus
    assert a == b == (1, 1, 1)
    assert FieldSpec.finite(2, 3).modulus == (1, 1, 0, 1)
    # searched entry beyond the table is still irreducible and fixed
    assert FieldSpec.finite(11, 2).modulus[-1] == 1


def test_finite_field_inverse_roundtrip(rng):
    spec = FieldSpec.finite(3, 2)
    ops = field_ops(spec)
    for _ in range(30):
        a = random_element(spec, rng)
        if a.is_zero():
            continue
        inv = ops.inv(a.payload)
        assert ops.mul(a.payload, inv) == ops.one


def test_degree_cap_overflow():
    spec = FieldSpec.rational_function(2, 1, degree_cap=8)
    u = spec.transcendental()
    x = u
    with pytest.raises(DegreeOverflowError):
        for _ in range(5):
            x = x * x
