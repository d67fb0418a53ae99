"""Certified lower/upper bounds for the complexity of iterated pushforwards.

Per (e, t) the tool assembles:

  lower(e, t) = D_t^{-1} * rd^e * L_e        with D_t = B * exp(N|t|),

a rigorous lower bound coming from the truncated Koszul homology of the
split generator, and an upper bound built from the conductor tower, the
Betti numbers of the pushforward of R, and the finite-length summands of
the generator, every term carrying its homological shift weight.  Fitted
growth rates of the two sides bracket the closed-form entropy value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    UnsupportedConfigurationError,
    UnsupportedOperationError,
    WindowInsufficiencyError,
)
from .grmod import GradedModule, length, minimal_generator_count, pushforward
from .grring import EndomorphismSpec, RingSpec, length_sequence, sandwich_check
from .homcalc import (
    BoundConstants,
    KoszulComplex,
    annihilator_element,
    bound_constants,
    minimal_resolution,
)
from .monoid import ExponentSet


# ---------------------------------------------------------------------------
# split generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSpec:
    """The canonical split generator: R, or k, or R + R/xR + k with x the
    conductor monomial.  R is a direct summand of H^0 and inf = 0 by shape."""

    module: GradedModule
    kind: str  # "regular" | "artinian" | "conductor_split"
    conductor_exp: tuple | None = None
    quotient_length: int | None = None

    def describe(self) -> str:
        if self.kind == "regular":
            return "R"
        if self.kind == "artinian":
            return "k"
        c = self.conductor_exp[0]
        return f"R + R/t^{c}R + k"


def canonical_generator(ring: RingSpec) -> GeneratorSpec:
    mon = ring.monoid
    if mon.dim == 0:
        return GeneratorSpec(GradedModule.residue_field(ring), "artinian")
    if ring.is_regular:
        return GeneratorSpec(GradedModule.ring_module(ring), "regular")
    if mon.dim == 1 and mon.kind == "numerical":
        x = annihilator_element(ring)
        quotient = GradedModule.quotient_by_ideal(ring, ExponentSet(mon, (x,)))
        qlen = length(quotient)
        module = GradedModule.direct_sum(
            GradedModule.ring_module(ring),
            quotient,
            GradedModule.residue_field(ring),
        )
        return GeneratorSpec(module, "conductor_split", x, qlen)
    raise UnsupportedConfigurationError(
        "upper-bound certificates cover d in {0,1} and free monoid rings; "
        f"{ring.describe()} is outside the concrete scope")


def generator_bound_constants(ring: RingSpec, gen: GeneratorSpec,
                              window=None) -> BoundConstants:
    kos = KoszulComplex.of_maximal_ideal(ring)
    return bound_constants(gen.module, kos, window)


# ---------------------------------------------------------------------------
# growth fitting and classification
# ---------------------------------------------------------------------------

def fit_rate(values, tail=None, xs=None):
    """Least-squares slope of log(values) against the exponent over a tail.

    values[i] is the sample at exponent xs[i] (xs defaults to the index).
    tail is an (inclusive) index window, defaulting to the last half.
    """
    n = len(values)
    if tail is None:
        tail = (n // 2, n - 1)
    lo, hi = tail
    idx = list(range(lo, hi + 1))
    if len(idx) < 2:
        return None
    pts = [((xs[i] if xs is not None else i), math.log(values[i]))
           for i in idx]
    mean_x = sum(x for x, _ in pts) / len(pts)
    mean_y = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mean_x) ** 2 for x, _ in pts)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in pts)
    return sxy / sxx


@dataclass(frozen=True)
class GrowthReport:
    name: str
    values: tuple
    tail: tuple
    alpha_hat: float | None
    target_log: float | None
    classification: str
    witness: dict
    fekete_submultiplicative: bool | None = None


def growth_classify(values, u, ratio_bound: float = 10.0,
                    drift_factor: float = 2.0):
    """Tail-ratio classification of values[e] against u^e.

    Theta requires the tail ratios a_e/u^e to stay within the ratio bound;
    a sustained monotone drift of the ratios (fitted log-slope times the
    range, beyond log(drift_factor)) demotes to one-sided Omega or O.
    Returns (label, witness dict).
    """
    n = len(values)
    if n < 6 or any(v <= 0 for v in values):
        return "inconclusive", {"reason": "need >= 6 positive values"}
    ratios = [v / u ** e for e, v in enumerate(values)]
    tail_lo = n // 2
    tail = ratios[tail_lo:]
    drift_slope = fit_rate(ratios, (0, n - 1))
    drift = (drift_slope or 0.0) * (n - 1)
    witness = {
        "tail_window": [tail_lo, n - 1],
        "ratio_min": min(tail),
        "ratio_max": max(tail),
        "drift": drift,
        "drift_threshold": math.log(drift_factor),
    }
    if drift > math.log(drift_factor):
        witness["C_lower"] = min(ratios)
        return "Omega", witness
    if drift < -math.log(drift_factor):
        witness["C_upper"] = max(ratios)
        return "O", witness
    if max(tail) / min(tail) <= ratio_bound:
        witness["C_interval"] = [min(tail), max(tail)]
        return "Theta", witness
    return "inconclusive", witness


def _fekete_submultiplicative(values) -> bool:
    n = len(values)
    for m in range(1, n):
        for k in range(1, n - m):
            if values[m + k] > values[m] * values[k]:
                return False
    return True


def local_entropy(ring: RingSpec, phi: EndomorphismSpec, e_max: int,
                  ratio_bound: float = 10.0, drift_factor: float = 2.0,
                  sandwich_e_max: int = 8, cap=None) -> GrowthReport:
    """Fit the growth rate of L_e = len(R/phi^e(m)R) against u^dim.

    Cross-checks the sandwich containments m^(nu u^e) <= phi^e(m)R <= m^(u^e)
    for small e; when they hold the fitted rate must land on d*log(u).
    """
    kwargs = {} if cap is None else {"cap": cap}
    lengths = length_sequence(ring, phi, e_max, **kwargs)
    d = ring.dim
    target = d * math.log(phi.u)
    label, witness = growth_classify(
        lengths, phi.u ** d, ratio_bound, drift_factor)
    tail = (max(1, len(lengths) // 2), len(lengths) - 1)
    alpha = fit_rate(lengths, tail)
    checks = [sandwich_check(ring, phi, e)
              for e in range(1, min(e_max, sandwich_e_max) + 1)]
    witness = dict(witness)
    witness["sandwich_checked_e"] = len(checks)
    witness["sandwich_all_hold"] = all(checks) if checks else None
    return GrowthReport(
        name="length_sequence",
        values=tuple(lengths),
        tail=tail,
        alpha_hat=alpha,
        target_log=target,
        classification=label,
        witness=witness,
        fekete_submultiplicative=_fekete_submultiplicative(lengths),
    )


# ---------------------------------------------------------------------------
# per-(e, t) certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundCertificate:
    e: int
    t: float
    lower: float
    upper: float
    lower_terms: dict
    upper_terms: tuple  # (name, factor, shift, weight, contribution)

    def as_dict(self) -> dict:
        return {
            "e": self.e,
            "t": self.t,
            "lower": self.lower,
            "upper": self.upper,
            "lower_terms": self.lower_terms,
            "upper_terms": [list(term) for term in self.upper_terms],
        }


def pushforward_invariants(ring: RingSpec, phi: EndomorphismSpec, e: int,
                           class_cap: int = 65536, window=None):
    """(mu(eR), beta_0..beta_2d(eR)) with the free fast path for regular rings."""
    d = ring.dim
    rd = phi.residue_degree ** e
    if ring.is_regular:
        rank = rd * phi.u ** (d * e)
        return rank, (rank,) + (0,) * (2 * d)
    if d == 1 and ring.monoid.kind == "numerical":
        pushed = pushforward(GradedModule.ring_module(ring), phi, e,
                             class_cap=class_cap)
        mu = minimal_generator_count(pushed).count
        table = minimal_resolution(pushed, 2 * d, window=window)
        if not table.all_stabilized:
            raise WindowInsufficiencyError(
                f"Betti table of the e={e} pushforward did not stabilize; "
                "enlarge the window", stage="resolution")
        return mu, table.values
    raise UnsupportedConfigurationError(
        f"pushforward invariants unsupported for {ring.describe()}")


def lower_bound(ring: RingSpec, phi: EndomorphismSpec, gen: GeneratorSpec,
                consts: BoundConstants, l_e: int, e: int, t: float):
    """Rigorous lower bound D_t^{-1} * rd^e * L_e with its term ledger."""
    rd = phi.residue_degree ** e
    d_t = consts.d_t(t)
    value = rd * l_e / d_t
    terms = {
        "B": consts.B,
        "N": consts.N,
        "D_t": d_t,
        "residue_degree_pow": rd,
        "L_e": l_e,
    }
    return value, terms


def upper_bound(ring: RingSpec, phi: EndomorphismSpec, gen: GeneratorSpec,
                e: int, t: float, betti_row=None, shift_offset: int = 0):
    """Certified upper bound; every term records (factor, shift, weight).

    d = 0: the pushforward of k is k^(rd^e).  Regular: the pushforward of R
    is free of rank rd^e * u^(de).  d = 1 split generator: conductor tower
    of height u^e over the artinian bound for the pushforward of R/xR, plus
    the syzygy terms beta_i(eR) at shifts -2d+i, plus the generator's own
    finite-length summands.
    """
    rd = phi.residue_degree ** e
    d = ring.dim

    def term(name, factor, shift):
        weight = math.exp((shift + shift_offset) * t)
        return (name, factor, shift + shift_offset, weight, factor * weight)

    if gen.kind == "artinian":
        terms = (term("residue_pushforward", rd, 0),)
    elif gen.kind == "regular":
        terms = (term("free_pushforward_rank", rd * phi.u ** (d * e), 0),)
    else:
        if betti_row is None:
            raise UnsupportedOperationError("d = 1 upper bound needs a Betti row")
        qlen = gen.quotient_length
        tower = phi.u ** e
        artinian_bound = rd * qlen  # k-tower bound for the pushed quotient
        terms = [term("quotient_tower", tower * artinian_bound, -2 * d + 1)]
        for i, beta in enumerate(betti_row):
            terms.append(term(f"syzygy_beta_{i}", beta, -2 * d + i))
        terms.append(term("generator_k_summand", rd, 0))
        terms.append(term("generator_quotient_summand", rd * qlen, 0))
        terms = tuple(terms)
    value = sum(t_[4] for t_ in terms)
    return value, terms


def certificate(ring: RingSpec, phi: EndomorphismSpec, gen: GeneratorSpec,
                consts: BoundConstants, l_e: int, e: int, t: float,
                betti_row=None) -> BoundCertificate:
    lo, lo_terms = lower_bound(ring, phi, gen, consts, l_e, e, t)
    hi, hi_terms = upper_bound(ring, phi, gen, e, t, betti_row)
    return BoundCertificate(e, t, lo, hi, lo_terms, hi_terms)


# ---------------------------------------------------------------------------
# closed forms and rate estimates
# ---------------------------------------------------------------------------

FUNCTORS = ("pushforward_Db", "pushforward_Dbfl", "pullback_Dpf", "pullback_Dpffl")


@dataclass(frozen=True)
class ClosedForm:
    functor: str
    value: float
    exact: bool
    description: str


def closed_form(functor: str, ring: RingSpec,
                phi: EndomorphismSpec) -> ClosedForm:
    """Published entropy value of the functor; scale kind only has a proven
    lower bound d*log(m), flagged as partial."""
    if functor not in FUNCTORS:
        raise UnsupportedOperationError(f"unknown functor {functor!r}")
    d = ring.dim
    if phi.kind == "scale":
        if functor != "pushforward_Db":
            raise UnsupportedOperationError(
                "scaling endomorphisms only certify the pushforward on D^b")
        return ClosedForm(functor, d * math.log(phi.u), False,
                          "proven lower bound d*log(m); upper rate empirical")
    rd = phi.residue_degree
    p = phi.u
    if functor == "pushforward_Db":
        return ClosedForm(functor, d * math.log(p) + math.log(rd), True,
                          "d*log(p) + log residue degree")
    if functor == "pushforward_Dbfl":
        return ClosedForm(functor, math.log(rd), True, "log residue degree")
    if functor == "pullback_Dpf":
        return ClosedForm(functor, 0.0, True, "perfect-complex pullback")
    return ClosedForm(functor, d * math.log(p), True,
                      "finite-length perfect-complex pullback")


@dataclass(frozen=True)
class EstimateReport:
    t: float
    alpha_low: float | None
    alpha_high: float | None
    interval: tuple | None
    closed_form_value: float
    tolerance: float
    verdict: str  # PASS | FAIL | inconclusive
    partial: bool = False

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "alpha_low": self.alpha_low,
            "alpha_high": self.alpha_high,
            "interval": list(self.interval) if self.interval else None,
            "closed_form": self.closed_form_value,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "partial": self.partial,
        }


def entropy_estimate(certs, t: float, closed: ClosedForm,
                     tol: float = 0.1) -> EstimateReport:
    """Bracket the entropy by fitted rates of the two bound sequences.

    PASS means the closed form lies in [alpha_low - tol, alpha_high + tol];
    fewer than 4 usable exponents is inconclusive.
    """
    usable = sorted((c for c in certs if c.t == t and c.lower > 0
                     and math.isfinite(c.upper)), key=lambda c: c.e)
    if len(usable) < 4:
        return EstimateReport(t, None, None, None, closed.value, tol,
                              "inconclusive", not closed.exact)
    lowers = [c.lower for c in usable]
    uppers = [c.upper for c in usable]
    exps = [c.e for c in usable]
    alpha_low = fit_rate(lowers, xs=exps)
    alpha_high = fit_rate(uppers, xs=exps)
    interval = (alpha_low - tol, alpha_high + tol)
    verdict = "PASS" if interval[0] <= closed.value <= interval[1] else "FAIL"
    return EstimateReport(t, alpha_low, alpha_high, interval, closed.value,
                          tol, verdict, not closed.exact)
