"""End-space calculus for big mapping class groups.

Decides topological normal generation for infinite-type surfaces
described as finite accumulation trees, computes generator-count bounds
and flux ranks, and verifies the underlying homomorphism machinery on
finite permutation models.
"""

from .classify import (
    BoundsReport,
    Character,
    ClassificationReport,
    GeneratorImage,
    ObstructionWitness,
    SelfSimilarity,
    TNGVerdict,
    ValidationResult,
    Verdict,
    classify,
    fmap_flux_rank,
    generator_bounds,
    self_similarity,
    tng_verdict,
    validate,
)
from .dsl import ParseError, emit_report, parse, report_to_dict, spec_to_text
from .endspace import (
    CANTOR,
    HANDLE,
    EndType,
    InvariantBundle,
    SpecError,
    SurfaceSpec,
    below,
    canonicalize,
    e_cp,
    equivalent,
    format_type,
    immediate_predecessors,
    in_EG,
    invariant_bundle,
    maximal_types,
    node,
    planar_tower,
    preceq,
)
from .oracle import oracle_preceq

__version__ = "0.1.0"

__all__ = [
    "BoundsReport", "CANTOR", "Character", "ClassificationReport", "EndType",
    "GeneratorImage", "HANDLE", "InvariantBundle", "ObstructionWitness",
    "ParseError", "SelfSimilarity", "SpecError", "SurfaceSpec", "TNGVerdict",
    "ValidationResult", "Verdict", "below", "canonicalize", "classify",
    "e_cp", "emit_report", "equivalent", "fmap_flux_rank", "format_type",
    "generator_bounds", "immediate_predecessors", "in_EG", "invariant_bundle",
    "maximal_types", "node", "oracle_preceq", "parse", "planar_tower",
    "preceq", "report_to_dict", "self_similarity", "spec_to_text",
    "tng_verdict", "validate",
]
