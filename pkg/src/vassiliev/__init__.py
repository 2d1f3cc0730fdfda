"""Finite-type knot invariants three ways.

Skein recursion on singular diagrams, Lie-algebra weight systems on
chord diagrams, and numerical Kontsevich integrals on Morse embeddings.
"""

from .laurent import IntegerLaurentPoly
from .codes import (
    DiagramError,
    ParseError,
    SingularDiagram,
    braid_closure,
    linking_matrix_total,
    parse_gauss,
    parse_pd,
)
from .skein import (
    conway,
    embedding_independence_check,
    extend_invariant,
    finite_type_check,
    v2,
    vassiliev_eval,
)
from .chords import (
    ChordDiagram,
    chord_diagram_of,
    enumerate_diagrams,
    four_term_relations,
    raw_matchings,
    satisfies_4T,
)
from .lie import (
    LieAlgebraData,
    commutator_4T_witness,
    gl_fundamental,
    su2_fundamental,
    weight,
    weight_system,
)
from .morse import (
    EmbeddingError,
    MorseKnot,
    Slab,
    Strand,
    curve_from_json,
    curve_to_json,
    morse_embed,
)
from .kontsevich import (
    ChordPlacement,
    CoefficientTable,
    ExpectationSeries,
    IntegralResult,
    PropagatorRule,
    QuadratureSpec,
    degree_coefficients,
    enumerate_placements,
    expectation_series,
    hump_normalize,
    linking_number,
    placement_integral,
    wick_propagator,
)
from .fixtures import (
    ALL_FIXTURE_NAMES,
    fixture_curve,
    load_fixture,
    plat,
    round_circle,
    sample_singular_diagrams,
    two_circles,
)

__all__ = [
    "IntegerLaurentPoly",
    "DiagramError",
    "ParseError",
    "SingularDiagram",
    "braid_closure",
    "linking_matrix_total",
    "parse_gauss",
    "parse_pd",
    "conway",
    "embedding_independence_check",
    "extend_invariant",
    "finite_type_check",
    "v2",
    "vassiliev_eval",
    "ChordDiagram",
    "chord_diagram_of",
    "enumerate_diagrams",
    "four_term_relations",
    "raw_matchings",
    "satisfies_4T",
    "LieAlgebraData",
    "commutator_4T_witness",
    "gl_fundamental",
    "su2_fundamental",
    "weight",
    "weight_system",
    "EmbeddingError",
    "MorseKnot",
    "Slab",
    "Strand",
    "curve_from_json",
    "curve_to_json",
    "morse_embed",
    "ChordPlacement",
    "CoefficientTable",
    "ExpectationSeries",
    "IntegralResult",
    "PropagatorRule",
    "QuadratureSpec",
    "degree_coefficients",
    "enumerate_placements",
    "expectation_series",
    "hump_normalize",
    "linking_number",
    "placement_integral",
    "wick_propagator",
    "ALL_FIXTURE_NAMES",
    "fixture_curve",
    "load_fixture",
    "plat",
    "round_circle",
    "sample_singular_diagrams",
    "two_circles",
]
