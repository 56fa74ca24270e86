"""Finite categories, set-valued functors, conjugation between presheaf
and copresheaf categories, and tight spans of finite metric spaces, all
computed exhaustively at desk scale."""

from .fincat import (
    CompositionError,
    FinCategory,
    Morphism,
    StructuralError,
    UnknownObjectError,
    ValidationReport,
    Violation,
    opposite,
    validate_category,
)
from .setfunc import (
    CONTRAVARIANT,
    COVARIANT,
    DEFAULT_BUDGET,
    Bijection,
    Budget,
    BudgetExceeded,
    FinSet,
    FunctorLawError,
    NatTransformation,
    NaturalityError,
    SetFunction,
    SetValuedFunctor,
    YonedaWitness,
    component_signature,
    compose_functions,
    compose_nat,
    coyoneda,
    coyoneda_on_morphism,
    enumerate_nat,
    identity_function,
    identity_nat,
    invert_nat,
    is_natural_iso,
    iso_check,
    make_transformation,
    naturality_witness,
    pointwise_sum,
    validate_functor,
    yoneda,
    yoneda_lemma_bijection,
    yoneda_on_morphism,
)
from .isbell import (
    AdjunctionWitness,
    ConjugatePair,
    ReflexiveVerdict,
    adjunction_transpose,
    conjugate_copresheaf,
    conjugate_presheaf,
    conjugate_transform,
    double_conjugate,
    reflexive_scan,
    unit,
)
from .tightspan import (
    DEFAULT_TOL,
    MAX_ITERATIONS,
    WITNESS_TOL,
    DefectReport,
    DistanceFunction,
    FiniteMetricSpace,
    InadmissibleError,
    MetricError,
    NoWitnessError,
    ProjectionError,
    TripodResult,
    extremal_project,
    extremality_defect,
    geodesic_witness,
    kuratowski_embed,
    sample_tight_span,
    tight_span_distance,
    tripod,
    validate_metric,
)

__version__ = "0.1.0"
