import math

import pytest

from frobentropy.errors import UnsupportedConfigurationError, UnsupportedOperationError
from frobentropy.field import FieldSpec
from frobentropy.grmod import GradedModule, pushforward
from frobentropy.grring import EndomorphismSpec, RingSpec, length_sequence
from frobentropy.homcalc import KoszulComplex, koszul_homology_lengths
from frobentropy.entropy import (
    canonical_generator,
    certificate,
    closed_form,
    entropy_estimate,
    fit_rate,
    generator_bound_constants,
    growth_classify,
    local_entropy,
    lower_bound,
    pushforward_invariants,
    upper_bound,
)
from frobentropy.monoid import MonoidSpec

from conftest import frobenius


def _all_certs(ring, phi, e_max, t_grid):
    gen = canonical_generator(ring)
    consts = generator_bound_constants(ring, gen)
    lengths = length_sequence(ring, phi, e_max)
    certs = []
    for e in range(e_max + 1):
        mu, betti = pushforward_invariants(ring, phi, e)
        assert mu == betti[0]
        for t in t_grid:
            certs.append(certificate(ring, phi, gen, consts, lengths[e],
                                     e, t, betti))
    return certs, gen, consts, lengths


def test_local_entropy_23(ring_23):
    rep = local_entropy(ring_23, frobenius(ring_23), 10)
    assert abs(rep.alpha_hat - math.log(2)) < 1e-12  # exact geometric tail
    assert rep.classification == "Theta"
    assert rep.witness["sandwich_all_hold"]
    assert rep.fekete_submultiplicative


def test_local_entropy_free():
    ring = RingSpec(FieldSpec.prime(3), MonoidSpec.free(2))
    rep = local_entropy(ring, frobenius(ring), 8)
    assert abs(rep.alpha_hat - 2 * math.log(3)) < 1e-12


def test_local_entropy_scaling():
    ring = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(1))
    rep = local_entropy(ring, EndomorphismSpec.scale(ring, 5), 8)
    assert abs(rep.alpha_hat - math.log(5)) < 1e-12


def test_canonical_generator_shapes(ring_23, ring_free2):
    gen = canonical_generator(ring_23)
    assert gen.kind == "conductor_split"
    assert gen.conductor_exp == (2,)
    assert gen.quotient_length == 2
    assert len(gen.module.summands) == 3
    reg = canonical_generator(ring_free2)
    assert reg.kind == "regular"
    d0 = canonical_generator(RingSpec(FieldSpec.prime(2), MonoidSpec.free(0)))
    assert d0.kind == "artinian"
    with pytest.raises(UnsupportedConfigurationError):
        canonical_generator(RingSpec(FieldSpec.prime(2),
                                     MonoidSpec.product((2, 3), 1)))


def test_lower_bound_formula(ring_23):
    phi = frobenius(ring_23)
    gen = canonical_generator(ring_23)
    consts = generator_bound_constants(ring_23, gen)
    lengths = length_sequence(ring_23, phi, 6)
    for e in range(1, 7):
        value, terms = lower_bound(ring_23, phi, gen, consts, lengths[e], e, 0.0)
        assert value == 2 ** (e + 1) / consts.B
        assert terms["L_e"] == 2 ** (e + 1)
    # rate of the lower sequence is exactly log 2
    vals = [lower_bound(ring_23, phi, gen, consts, lengths[e], e, 0.0)[0]
            for e in range(1, 7)]
    assert abs(fit_rate(vals, (0, len(vals) - 1)) - math.log(2)) < 1e-12


def test_lower_bound_residue_degree_gain(ring_23, ring_23_u):
    # identical generator constants over both fields, so the F_2(u) lower
    # bound carries exactly the extra 2^e factor
    phi2 = frobenius(ring_23)
    phiu = frobenius(ring_23_u)
    gen2 = canonical_generator(ring_23)
    genu = canonical_generator(ring_23_u)
    c2 = generator_bound_constants(ring_23, gen2)
    cu = generator_bound_constants(ring_23_u, genu)
    assert (c2.N, c2.B) == (cu.N, cu.B)
    ls = length_sequence(ring_23, phi2, 5)
    for e in range(1, 6):
        for t in (-1.0, 0.0, 1.0):
            v2, _ = lower_bound(ring_23, phi2, gen2, c2, ls[e], e, t)
            vu, _ = lower_bound(ring_23_u, phiu, genu, cu, ls[e], e, t)
            assert vu == 2 ** e * v2


def test_upper_bound_formula_t0(ring_23):
    # upper(e,0) = 2^e * len(R/xR) + sum beta_i(eR) + 1 + len(R/xR)
    phi = frobenius(ring_23)
    gen = canonical_generator(ring_23)
    for e in range(1, 6):
        _, betti = pushforward_invariants(ring_23, phi, e)
        value, terms = upper_bound(ring_23, phi, gen, e, 0.0, betti)
        expected = 2 ** e * 2 + sum(betti) + 1 + 2
        assert value == expected
        assert betti[0] == 2 ** (e + 1)
        names = [t[0] for t in terms]
        assert names == ["quotient_tower", "syzygy_beta_0", "syzygy_beta_1",
                         "syzygy_beta_2", "generator_k_summand",
                         "generator_quotient_summand"]


def test_upper_bound_regular_and_artinian():
    reg = RingSpec(FieldSpec.prime(3), MonoidSpec.free(2))
    gen = canonical_generator(reg)
    value, _ = upper_bound(reg, frobenius(reg), gen, 3, 0.5)
    assert value == 3 ** 6  # free of rank p^(de)
    d0 = RingSpec(FieldSpec.rational_function(2, 1), MonoidSpec.free(0))
    gen0 = canonical_generator(d0)
    for t in (-1.0, 0.0, 1.0):
        v, _ = upper_bound(d0, frobenius(d0), gen0, 4, t)
        assert v == 2 ** 4  # [k : k^p]^e, independent of t


def test_shift_weight_consistency(ring_23):
    phi = frobenius(ring_23)
    gen = canonical_generator(ring_23)
    _, betti = pushforward_invariants(ring_23, phi, 3)
    for t in (-1.0, 0.5, 1.0):
        v0, _ = upper_bound(ring_23, phi, gen, 3, t, betti, shift_offset=0)
        v1, _ = upper_bound(ring_23, phi, gen, 3, t, betti, shift_offset=1)
        assert math.isclose(v1, math.exp(t) * v0, rel_tol=1e-12)


def test_generator_enlargement_monotone(ring_23):
    # the upper certificate only uses the required summands: adding more
    # summands to the generator never increases any term
    phi = frobenius(ring_23)
    gen = canonical_generator(ring_23)
    bigger = canonical_generator(ring_23)
    bigger_module = GradedModule.direct_sum(
        bigger.module, GradedModule.residue_field(ring_23))
    from frobentropy.entropy import GeneratorSpec
    enlarged = GeneratorSpec(bigger_module, gen.kind, gen.conductor_exp,
                             gen.quotient_length)
    _, betti = pushforward_invariants(ring_23, phi, 2)
    for t in (-1.0, 0.0, 1.0):
        v_small, terms_small = upper_bound(ring_23, phi, gen, 2, t, betti)
        v_big, terms_big = upper_bound(ring_23, phi, enlarged, 2, t, betti)
        assert v_big <= v_small
        for ts, tb in zip(terms_small, terms_big):
            assert tb[4] <= ts[4]


def test_lower_le_upper_everywhere(ring_23, ring_23_u, ring_free2):
    for ring in (ring_23, ring_23_u, ring_free2):
        phi = frobenius(ring)
        certs, _, _, _ = _all_certs(ring, phi, 6, [-1.0, -0.5, 0.0, 0.5, 1.0])
        for c in certs:
            assert c.lower <= c.upper
            assert c.lower > 0


def test_koszul_h0_bounded_by_certificate(ring_23):
    # len H^0(eG (x) K) <= B * exp(N|t|) * upper(e, t) for the computed pairs
    phi = frobenius(ring_23)
    gen = canonical_generator(ring_23)
    consts = generator_bound_constants(ring_23, gen)
    kos = KoszulComplex.of_maximal_ideal(ring_23)
    for e in (1, 2, 3):
        pushed = pushforward(gen.module, phi, e)
        h0 = koszul_homology_lengths(pushed, kos).lengths[0]
        _, betti = pushforward_invariants(ring_23, phi, e)
        for t in (-1.0, 0.0, 1.0):
            upper_val, _ = upper_bound(ring_23, phi, gen, e, t, betti)
            assert h0 <= consts.B * math.exp(consts.N * abs(t)) * upper_val


def test_estimates_pass_on_closed_forms(ring_23, ring_23_u, ring_free2):
    for ring, expected in ((ring_23, math.log(2)),
                           (ring_23_u, 2 * math.log(2)),
                           (ring_free2, 2 * math.log(3))):
        phi = frobenius(ring)
        certs, _, _, _ = _all_certs(ring, phi, 8, [0.0])
        cf = closed_form("pushforward_Db", ring, phi)
        assert math.isclose(cf.value, expected, rel_tol=1e-12)
        est = entropy_estimate(certs, 0.0, cf)
        assert est.verdict == "PASS"
        assert est.alpha_low >= expected - 0.1
        assert est.alpha_high <= expected + 0.3


def test_estimate_inconclusive_with_few_points(ring_23):
    phi = frobenius(ring_23)
    certs, _, _, _ = _all_certs(ring_23, phi, 2, [0.0])
    cf = closed_form("pushforward_Db", ring_23, phi)
    est = entropy_estimate(certs, 0.0, cf)
    assert est.verdict == "inconclusive"


def test_closed_form_table(ring_23_u):
    phi = frobenius(ring_23_u)
    assert closed_form("pushforward_Db", ring_23_u, phi).value == \
        math.log(2) + math.log(2)
    assert closed_form("pushforward_Dbfl", ring_23_u, phi).value == math.log(2)
    assert closed_form("pullback_Dpf", ring_23_u, phi).value == 0.0
    assert closed_form("pullback_Dpffl", ring_23_u, phi).value == math.log(2)
    ring = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(1))
    fm = EndomorphismSpec.scale(ring, 3)
    partial = closed_form("pushforward_Db", ring, fm)
    assert not partial.exact and math.isclose(partial.value, math.log(3))
    with pytest.raises(UnsupportedOperationError):
        closed_form("pullback_Dpf", ring, fm)


def test_growth_classify_examples():
    label, witness = growth_classify([2 ** (e + 1) for e in range(10)], 2)
    assert label == "Theta"
    assert witness["C_interval"] == [2.0, 2.0]
    label, _ = growth_classify([e * 2 ** e for e in range(1, 13)], 2)
    assert label == "Omega"  # ratio drifts upward
    label, _ = growth_classify([2 ** e / (e + 1) for e in range(1, 13)], 2)
    assert label == "O"
    label, _ = growth_classify([1, 2, 3], 2)
    assert label == "inconclusive"


def test_growth_classify_35(ring_35):
    phi = frobenius(ring_35)
    lengths = length_sequence(ring_35, phi, 12)
    label, _ = growth_classify(lengths, 2)
    assert label == "Theta"


def test_scale_estimate_partial():
    ring = RingSpec(FieldSpec.prime(2), MonoidSpec.numerical(1))
    phi = EndomorphismSpec.scale(ring, 3)
    certs, _, _, _ = _all_certs(ring, phi, 8, [0.0])
    cf = closed_form("pushforward_Db", ring, phi)
    est = entropy_estimate(certs, 0.0, cf)
    assert est.partial
    assert est.verdict == "PASS"
    assert abs(est.alpha_low - math.log(3)) < 1e-9
    assert abs(est.alpha_high - math.log(3)) < 1e-9
