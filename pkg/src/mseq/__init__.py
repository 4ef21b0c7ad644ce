"""Joint linear complexity of multisequences over finite fields."""

from .census import (
    BoundFitReport,
    BudgetExceeded,
    DeviationTable,
    DistributionTable,
    ExpectationRecord,
    MCEstimate,
    deviation_table,
    enumerate_distribution,
    expectation,
    expectation_identity_check,
    fit_bounds,
    lemma2_check,
    mc_estimate,
)
from .field import DivisionByZero, FieldElement, FieldError, FieldSpec, NotPrimePower, ReducibleModulus, field_make
from .lfsr import ComplexityProfile, ConnectionPoly, Multisequence, generates, jlc_fast, jlc_oracle, jlc_profile
from .polytope import (
    DegenerateSimplex,
    Partition,
    VertexSet,
    count_lattice_points,
    enumerate_partitions,
    functional,
    functional_max,
    lemma4_check,
    rho,
    series_c1,
    sum_identity_check,
    vertices,
)

__version__ = "0.1.0"
