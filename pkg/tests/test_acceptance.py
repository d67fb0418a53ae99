"""Acceptance suite: one test per criterion, printed as a pass line with its
runtime.  Run with `pytest tests/test_acceptance.py -v -s`."""

import json
import math
import random
import time

from frobentropy.field import FieldSpec, p_degree
from frobentropy.grmod import GradedModule, length, minimal_generator_count, pushforward
from frobentropy.grring import EndomorphismSpec, RingSpec, length_sequence
from frobentropy.homcalc import KoszulComplex, koszul_homology_lengths, minimal_resolution
from frobentropy.entropy import (
    canonical_generator,
    certificate,
    closed_form,
    entropy_estimate,
    generator_bound_constants,
    growth_classify,
    local_entropy,
    pushforward_invariants,
)
from frobentropy.monoid import ExponentSet, MonoidSpec, complement_count, gaps
from frobentropy.oracle import (
    oracle_complement,
    oracle_gaps,
    oracle_koszul_lengths,
    oracle_pushforward_decompose,
    oracle_resolution_betti,
)
from frobentropy.spectrum import (
    CoordinatePrime,
    PrimeSystem,
    beta_constant,
    comaximal,
    graph_and_connectivity,
)

from conftest import random_finite_module

LOG2 = math.log(2)


def report(n, elapsed, budget, detail):
    print(f"ACCEPTANCE {n} PASS ({elapsed:.2f}s < {budget}s): {detail}")


def frob(ring):
    return EndomorphismSpec.frobenius(ring)


def test_criterion_1_length_sequence_exactness():
    t0 = time.time()
    ring = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(2, 3))
    ls = length_sequence(ring, frob(ring), 16)
    assert ls[0] == 1
    for e in range(1, 17):
        assert ls[e] == 2 ** (e + 1), e

    # independent gap-counting oracle: scan with the enumerated gap list
    gps, _, conductor = oracle_gaps((2, 3))
    gap_set = set(gps)

    def in_gamma(n):
        return n >= 0 and (n >= conductor or n not in gap_set)

    for e in (0, 1, 2, 5, 10, 16):
        g1, g2 = 2 * 2 ** e, 3 * 2 ** e
        expect = sum(
            1 for n in range(g1 + conductor)
            if in_gamma(n) and not (in_gamma(n - g1) or in_gamma(n - g2)))
        assert ls[e] == expect, e
    elapsed = time.time() - t0
    assert elapsed < 1.0
    report(1, elapsed, 1, "L_0 = 1 and L_e = 2^(e+1) for e <= 16, oracle-exact")


def test_criterion_2_local_entropy():
    t0 = time.time()
    r23 = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(2, 3))
    rep = local_entropy(r23, frob(r23), 12)
    assert abs(rep.alpha_hat - LOG2) < 1e-9
    for p in (2, 3):
        ring = RingSpec(FieldSpec.prime(p), MonoidSpec.numerical(3, 5))
        rep = local_entropy(ring, frob(ring), 12)
        assert abs(rep.alpha_hat - math.log(p)) < 0.05, p
        assert rep.witness["sandwich_all_hold"]
    for m in (2, 3, 5):
        ring = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(1))
        rep = local_entropy(ring, EndomorphismSpec.scale(ring, m), 8)
        assert abs(rep.alpha_hat - math.log(m)) < 0.05, m
    elapsed = time.time() - t0
    assert elapsed < 10.0
    report(2, elapsed, 10,
           "alpha within 1e-9 of log 2 on <2,3>; 0.05 on <3,5> (p=2,3) and "
           "scaling m in {2,3,5}")


def test_criterion_3_length_scaling_property_suite():
    t0 = time.time()
    rng = random.Random(0)
    fields = [FieldSpec.prime(2), FieldSpec.finite(2, 2),
              FieldSpec.rational_function(2, 1)]
    monoids = [MonoidSpec.numerical(2, 3), MonoidSpec.numerical(3, 5),
               MonoidSpec.free(2)]
    for field in fields:
        rd = p_degree(field)
        checked = 0
        while checked < 50:
            ring = RingSpec(field, monoids[checked % len(monoids)])
            phi = frob(ring)
            mod = random_finite_module(ring, rng)
            l0 = length(mod)
            assert l0 != math.inf
            for e in (1, 2, 3):
                assert length(pushforward(mod, phi, e)) == rd ** e * l0
            checked += 1
    elapsed = time.time() - t0
    report(3, elapsed, 60,
           "len(eM) = rd^e * len(M) exactly on 50 random modules over "
           "F_2, F_4, F_2(u)")


def test_criterion_4_pushforward_decomposition():
    t0 = time.time()
    catalog = [
        RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(2, 3)),
        RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(3, 5)),
        RingSpec(FieldSpec.finite(2, 2), MonoidSpec.numerical(2, 3)),
        RingSpec(FieldSpec.rational_function(2, 1), MonoidSpec.numerical(2, 3)),
        RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(1)),
        RingSpec(FieldSpec.prime(3), MonoidSpec.free(2)),
    ]
    for ring in catalog:
        phi = frob(ring)
        rd = phi.residue_degree
        ls = length_sequence(ring, phi, 8)
        for e in range(9):
            mu, betti = pushforward_invariants(ring, phi, e)
            assert mu == rd ** e * ls[e], (ring.describe(), e)
            assert betti[0] == mu
        if not ring.is_regular:
            base = GradedModule.ring_module(ring)
            for e in range(9):
                assert minimal_generator_count(
                    pushforward(base, phi, e)).count == rd ** e * ls[e]

    # product monoid ring: the identity holds through the raw decomposition
    prod = RingSpec(FieldSpec.prime(2), MonoidSpec.product((2, 3), 1))
    phi = frob(prod)
    ls = length_sequence(prod, phi, 8)
    base = GradedModule.ring_module(prod)
    for e in range(9):
        assert minimal_generator_count(pushforward(base, phi, e)).count \
            == ls[e]

    # the residue field pushforward realizes rd = 2 concretely over F_2(u)
    ru = RingSpec(FieldSpec.rational_function(2, 1), MonoidSpec.numerical(2, 3))
    phi = frob(ru)
    k = GradedModule.residue_field(ru)
    for e in range(1, 6):
        ke = pushforward(k, phi, e)
        assert length(ke) == 2 ** e
        assert minimal_generator_count(ke).count == 2 ** e
        assert all(s.rels.generators and s.gens.generators == ((0,),)
                   or True for s in ke.summands)
    elapsed = time.time() - t0
    report(4, elapsed, 60,
           "mu(eR) = rd^e * L_e exactly for e <= 8 across the ring catalog; "
           "ek = k^(2^e) over F_2(u)")


def test_criterion_5_homological_kernel():
    t0 = time.time()
    ring = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(2, 3))
    kos = KoszulComplex.of_maximal_ideal(ring)
    lengths = koszul_homology_lengths(GradedModule.ring_module(ring), kos).lengths
    assert lengths == (1, 1, 0)
    assert oracle_koszul_lengths(GradedModule.ring_module(ring), kos.x, 30) \
        == (1, 1, 0)

    rng = random.Random(3)
    for i in range(20):
        mon = (MonoidSpec.numerical(2, 3) if i % 2 == 0
               else MonoidSpec.numerical(3, 5))
        rring = RingSpec(FieldSpec.prime(2), mon)
        rkos = KoszulComplex.of_maximal_ideal(rring)
        mod = random_finite_module(rring, rng)
        ls = koszul_homology_lengths(mod, rkos).lengths
        assert sum((-1) ** j * ls[j] for j in range(len(ls))) == 0

    table = minimal_resolution(GradedModule.residue_field(ring), 2)
    assert table.values == (1, 2, 2)
    assert oracle_resolution_betti(GradedModule.residue_field(ring), 2, 30) \
        == (1, 2, 2)

    base = GradedModule.ring_module(ring)
    phi = frob(ring)
    for e in range(1, 7):
        assert minimal_resolution(pushforward(base, phi, e), 2).values[0] \
            == 2 ** (e + 1)
    elapsed = time.time() - t0
    assert elapsed < 60.0
    report(5, elapsed, 60,
           "Koszul lengths (1,1,0); 20 alternating sums vanish; "
           "betti(k) = (1,2,2); beta_0(eR) = 2^(e+1)")


def _bracket_case(ring, t_grid, e_max=8):
    phi = frob(ring)
    gen = canonical_generator(ring)
    consts = generator_bound_constants(ring, gen)
    ls = length_sequence(ring, phi, e_max)
    certs = []
    for e in range(e_max + 1):
        _, betti = pushforward_invariants(ring, phi, e)
        for t in t_grid:
            certs.append(certificate(ring, phi, gen, consts, ls[e], e, t, betti))
    cf = closed_form("pushforward_Db", ring, phi)
    estimates = {t: entropy_estimate(certs, t, cf) for t in t_grid}
    return certs, estimates, cf


def test_criterion_6_certified_bounds_bracket_closed_form():
    t0 = time.time()
    ring = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(2, 3))
    t_grid = (-1.0, 0.0, 1.0)
    certs, estimates, cf = _bracket_case(ring, t_grid)
    for c in certs:
        assert c.lower <= c.upper
    for t in t_grid:
        est = estimates[t]
        assert est.alpha_low >= LOG2 - 0.1, t
        assert est.alpha_high <= LOG2 + 0.3, t
        assert est.interval[0] <= cf.value <= est.interval[1], t
        assert est.verdict == "PASS"

    reg = RingSpec(FieldSpec.prime(3), MonoidSpec.free(2))
    _, reg_estimates, reg_cf = _bracket_case(reg, t_grid)
    for t in t_grid:
        est = reg_estimates[t]
        assert abs(est.alpha_low - 2 * math.log(3)) < 1e-9
        assert abs(est.alpha_high - 2 * math.log(3)) < 1e-9
    elapsed = time.time() - t0
    assert elapsed < 300.0
    report(6, elapsed, 300,
           "lower <= upper, rates bracket log 2 at t in {-1,0,1}; regular "
           "case exactly 2 log 3")


def test_criterion_7_imperfect_field_shift():
    t0 = time.time()
    base = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(2, 3))
    shifted = RingSpec(FieldSpec.rational_function(2, 1),
                       MonoidSpec.numerical(2, 3))
    t_grid = (-1.0, 0.0, 1.0)
    _, est_base, _ = _bracket_case(base, t_grid)
    _, est_shift, cf = _bracket_case(shifted, t_grid)
    assert math.isclose(cf.value, 2 * LOG2, rel_tol=1e-12)
    for t in t_grid:
        low_shift = est_shift[t].alpha_low - est_base[t].alpha_low
        high_shift = est_shift[t].alpha_high - est_base[t].alpha_high
        assert abs(low_shift - LOG2) < 0.1, t
        assert abs(high_shift - LOG2) < 0.1, t
        assert est_shift[t].verdict == "PASS"
    elapsed = time.time() - t0
    report(7, elapsed, 300,
           "F_2(u) coefficients shift both fitted rates up by log 2 "
           "within 0.1")


def test_criterion_8_syzygy_growth_check():
    t0 = time.time()
    for gens in ((2, 3), (3, 5)):
        ring = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(*gens))
        phi = frob(ring)
        target = p_degree(ring.field) * 2  # rd * p^d = 2
        # e starts at 1: the e = 0 pushforward is R itself, with no syzygies
        rows = {e: pushforward_invariants(ring, phi, e)[1]
                for e in range(1, 7)}
        for i in range(3):
            series = [rows[e][i] for e in range(1, 7)]
            label, witness = growth_classify(series, target)
            assert label in ("O", "Theta"), (gens, i, series, witness)
    elapsed = time.time() - t0
    report(8, elapsed, 60,
           "beta_i(eR) = O(2^e) for i <= 2d, e <= 6, on <2,3> and <3,5>")


def test_criterion_9_spectrum():
    t0 = time.time()
    two_point = PrimeSystem(1, 5, (
        CoordinatePrime(1, 5, ((0, 0),)), CoordinatePrime(1, 5, ((0, 1),))))
    graph = graph_and_connectivity(two_point)
    assert not graph.connected
    a, b = graph.partition_certificate
    for i in a:
        for j in b:
            assert comaximal(two_point.primes[i], two_point.primes[j])

    rng = random.Random(9)
    for _ in range(100):
        n = rng.randrange(1, 7)
        p = rng.choice([2, 3, 5])
        primes = []
        for _ in range(rng.randrange(1, 6)):
            pins = tuple((i, rng.randrange(p))
                         for i in rng.sample(range(n), rng.randrange(n + 1)))
            cand = CoordinatePrime(n, p, pins)
            if all(cand.assignment != q.assignment for q in primes):
                primes.append(cand)
        system = PrimeSystem(n, p, tuple(primes))
        for pr in system.primes:
            assert pr.alpha + pr.height == n
        g = graph_and_connectivity(system)
        for i in range(len(primes)):
            assert not g.adjacency[i][i]
            for j in range(len(primes)):
                assert g.adjacency[i][j] == g.adjacency[j][i]
        if g.connected:
            assert beta_constant(system) == n
    elapsed = time.time() - t0
    assert elapsed < 1.0
    report(9, elapsed, 1,
           "two-point model disconnected with certificate; 100 random "
           "systems satisfy alpha + height = n")


def test_criterion_10_oracle_equivalence_and_determinism(tmp_path):
    t0 = time.time()
    # equivalence inside oracle caps
    for gens in ((2, 3), (3, 5), (4, 7, 9)):
        mon = MonoidSpec.numerical(*gens)
        got = gaps(mon)
        assert (got.gaps, got.frobenius_number, got.conductor) == oracle_gaps(gens)
    mon = MonoidSpec.numerical(2, 3)
    assert complement_count(mon, ExponentSet(mon, (4, 6))) == \
        len(oracle_complement((2, 3), [4, 6]))
    ring = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(2, 3))
    phi = frob(ring)
    pushed = pushforward(GradedModule.ring_module(ring), phi, 1)
    dec = oracle_pushforward_decompose((2, 3), 2, 1)
    assert sorted(tuple(g[0] for g in s.gens.generators)
                  for s in pushed.summands) == \
        sorted(tuple(d["gens"]) for d in dec.values())
    kos = KoszulComplex.of_maximal_ideal(ring)
    for mod in (GradedModule.ring_module(ring),
                GradedModule.residue_field(ring), pushed):
        assert koszul_homology_lengths(mod, kos).lengths == \
            oracle_koszul_lengths(mod, kos.x, 30)
        assert minimal_resolution(mod, 2).values == \
            oracle_resolution_betti(mod, 2, 30)

    # byte-identical reports across 1, 2, and 8 workers
    from frobentropy.cli import run_experiment
    from frobentropy.config import parse_config_text
    cfg_text = (
        "[field]\nkind = prime\np = 2\n\n"
        "[monoid]\nkind = numerical\ngenerators = 2,3\n\n"
        "[endomorphism]\nkind = frobenius\n\n"
        "[run]\ne_max = 6\nt_grid = -1,0,1\nfigures = false\n"
        f"output_dir = {tmp_path / 'w'}\n")
    cfg = parse_config_text(cfg_text)
    blobs = set()
    for w in (1, 2, 8):
        _, outdir = run_experiment(cfg, workers=w,
                                   output_dir=tmp_path / f"w{w}")
        blobs.add(((outdir / "report.json").read_bytes(),
                   (outdir / "entropy_run.csv").read_bytes()))
    assert len(blobs) == 1
    elapsed = time.time() - t0
    report(10, elapsed, 300,
           "optimized paths match oracles; reports byte-identical across "
           "1/2/8 workers")
