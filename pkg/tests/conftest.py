import random

import pytest

from frobentropy.field import FieldSpec
from frobentropy.grmod import GradedModule
from frobentropy.grring import EndomorphismSpec, RingSpec
from frobentropy.monoid import MonoidSpec

SEED = 0


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def ring_23():
    return RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(2, 3))


@pytest.fixture
def ring_35():
    return RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(3, 5))


@pytest.fixture
def ring_free2():
    return RingSpec(FieldSpec.prime(3), MonoidSpec.free(2))


@pytest.fixture
def ring_23_u():
    return RingSpec(FieldSpec.rational_function(2, 1), MonoidSpec.numerical(2, 3))


def frobenius(ring):
    return EndomorphismSpec.frobenius(ring)


def random_finite_module(ring, rng, max_gen_coord=6):
    """Random monomial module with finite length: every axis gets a pure
    relation bound beyond the generators, plus one extra deep relation."""
    dim = ring.monoid.dim
    gens = [tuple(rng.randrange(0, max_gen_coord + 1) for _ in range(dim))
            for _ in range(rng.randrange(1, 3))]
    rels = []
    for axis in range(dim):
        v = [0] * dim
        v[axis] = max(g[axis] for g in gens) + rng.randrange(1, 5)
        rels.append(tuple(v))
    rels.append(tuple(g + rng.randrange(0, 4) for g in gens[0]))
    return GradedModule.monomial(ring, gens, rels)
