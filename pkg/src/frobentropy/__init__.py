"""frobentropy: exact invariants and certified entropy bounds for
pushforward functors over graded models of F-finite local rings."""

from .errors import (
    ConfigError,
    DegreeOverflowError,
    DivisionByZeroError,
    EnumerationCapError,
    FieldMismatchError,
    FrobentropyError,
    UnsupportedConfigurationError,
    UnsupportedOperationError,
    WindowInsufficiencyError,
)
from .field import FieldElement, FieldSpec, arith, frobenius_basis, p_degree
from .grmod import (
    GradedModule,
    MonomialSummand,
    length,
    minimal_generator_count,
    pushforward,
    tower_certificate,
)
from .grring import (
    EndomorphismSpec,
    RingSpec,
    hilbert_samuel,
    length_sequence,
    multiplicity,
    phi_power_ideal,
    sandwich_check,
)
from .homcalc import (
    BettiTable,
    BoundConstants,
    KoszulComplex,
    TruncationWindow,
    annihilator_element,
    bound_constants,
    koszul_homology_lengths,
    minimal_resolution,
)
from .entropy import (
    BoundCertificate,
    GeneratorSpec,
    GrowthReport,
    canonical_generator,
    certificate,
    closed_form,
    entropy_estimate,
    generator_bound_constants,
    growth_classify,
    local_entropy,
    lower_bound,
    pushforward_invariants,
    upper_bound,
)
from .monoid import (
    ExponentSet,
    MonoidSpec,
    complement_count,
    contains,
    gaps,
    scale,
)
from .spectrum import (
    CoordinatePrime,
    PrimeSystem,
    beta_constant,
    check_height_alpha,
    comaximal,
    graph_and_connectivity,
)

__version__ = "0.1.0"
