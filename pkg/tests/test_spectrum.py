import random

import pytest

from frobentropy.errors import UnsupportedOperationError
from frobentropy.spectrum import (
    CoordinatePrime,
    PrimeSystem,
    beta_constant,
    check_height_alpha,
    comaximal,
    graph_and_connectivity,
    parse_prime_file,
)


def prime(nvars, p, pins):
    return CoordinatePrime(nvars, p, tuple(pins))


def test_comaximal_examples():
    p0 = prime(1, 5, [(0, 0)])
    p1 = prime(1, 5, [(0, 1)])
    assert comaximal(p0, p1)  # V(x) and V(x-1) are disjoint
    q0 = prime(4, 5, [(0, 0), (1, 0)])
    q1 = prime(4, 5, [(2, 0), (3, 0)])
    assert not comaximal(q0, q1)  # both contain the origin
    r0 = prime(3, 5, [(0, 0), (1, 1)])
    r1 = prime(3, 5, [(1, 1)])
    assert not comaximal(r0, r1)  # compatible assignments


def test_comaximal_symmetry(rng):
    for _ in range(50):
        n = rng.randrange(1, 6)
        p = 5
        mk = lambda: prime(n, p, [(i, rng.randrange(p))
                                  for i in rng.sample(range(n), rng.randrange(n + 1))])
        a, b = mk(), mk()
        assert comaximal(a, b) == comaximal(b, a)


def test_comaximal_ambient_mismatch():
    with pytest.raises(UnsupportedOperationError):
        comaximal(prime(2, 5, []), prime(3, 5, []))


def test_two_point_model_disconnected():
    # the coordinate model of F_p[x]/(x(x-1))
    system = PrimeSystem(1, 5, (prime(1, 5, [(0, 0)]), prime(1, 5, [(0, 1)])))
    graph = graph_and_connectivity(system)
    assert not graph.connected
    assert len(graph.components) == 2
    a, b = graph.partition_certificate
    assert sorted(a + b) == [0, 1]
    # every cross pair comaximal has been validated inside; recheck anyway
    for i in a:
        for j in b:
            assert comaximal(system.primes[i], system.primes[j])


def test_coordinate_primes_share_origin_connected():
    # Stanley-Reisner style: coordinate primes with no pinned constants
    primes = tuple(prime(4, 2, [(i, 0) for i in subset])
                   for subset in ([0, 1], [1, 2], [2, 3]))
    graph = graph_and_connectivity(PrimeSystem(4, 2, primes))
    assert graph.connected


def test_three_prime_component_split():
    p0 = prime(2, 5, [(0, 0)])
    p1 = prime(2, 5, [(0, 1)])
    p2 = prime(2, 5, [(0, 0), (1, 0)])
    graph = graph_and_connectivity(PrimeSystem(2, 5, (p0, p1, p2)))
    assert graph.components == ((0, 2), (1,))


def test_height_alpha_examples():
    p_small = prime(3, 5, [(0, 0)])
    p_large = prime(3, 5, [(0, 0), (1, 0)])
    check = check_height_alpha(p_small, p_large)
    assert check.constant_ok and check.kunz_ok
    assert check.small_alpha + check.small_height == 3
    generic = prime(3, 5, [])
    check2 = check_height_alpha(generic, p_large)
    assert check2.constant_ok
    with pytest.raises(UnsupportedOperationError):
        check_height_alpha(p_large, p_small)  # not nested this way


def test_height_alpha_randomized():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randrange(1, 7)
        p = rng.choice([2, 3, 5])
        pins_small = {i: rng.randrange(p)
                      for i in rng.sample(range(n), rng.randrange(n + 1))}
        extra = {i: rng.randrange(p) for i in range(n)
                 if i not in pins_small and rng.random() < 0.5}
        small = prime(n, p, pins_small.items())
        large = prime(n, p, {**pins_small, **extra}.items())
        check = check_height_alpha(small, large)
        assert check.constant_ok and check.kunz_ok
        assert small.alpha + small.height == n


def test_beta_constant():
    primes = tuple(prime(4, 2, [(i, 0) for i in subset])
                   for subset in ([0], [0, 1], [1, 2]))
    assert beta_constant(PrimeSystem(4, 2, primes)) == 4
    single = PrimeSystem(3, 5, (prime(3, 5, [(0, 0)]),))
    assert beta_constant(single) == 3
    disconnected = PrimeSystem(
        1, 5, (prime(1, 5, [(0, 0)]), prime(1, 5, [(0, 1)])))
    with pytest.raises(UnsupportedOperationError):
        beta_constant(disconnected)
    # per-component evaluation on the two-point example gives n each
    for comp in graph_and_connectivity(disconnected).components:
        sub = PrimeSystem(1, 5, tuple(disconnected.primes[i] for i in comp))
        assert beta_constant(sub) == 1


def test_adjacency_symmetric_no_loops(rng):
    for _ in range(20):
        n = rng.randrange(1, 5)
        p = 3
        primes = []
        for _ in range(rng.randrange(1, 6)):
            pins = tuple((i, rng.randrange(p))
                         for i in rng.sample(range(n), rng.randrange(n + 1)))
            cand = CoordinatePrime(n, p, pins)
            if all(cand.assignment != q.assignment for q in primes):
                primes.append(cand)
        graph = graph_and_connectivity(PrimeSystem(n, p, tuple(primes)))
        adj = graph.adjacency
        for i in range(len(primes)):
            assert not adj[i][i]
            for j in range(len(primes)):
                assert adj[i][j] == adj[j][i]


def test_parse_prime_file():
    text = """# demo
    n=2 p=5
    x1=0
    x1=1
    x1=0, x2=0
    -
    """
    system = parse_prime_file(text)
    assert system.nvars == 2 and system.p == 5
    assert len(system.primes) == 4
    assert system.primes[3].assignment == ()
    with pytest.raises(UnsupportedOperationError):
        parse_prime_file("")
