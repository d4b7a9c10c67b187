"""Exact combinatorics of multipartition box orders and their deformations."""

from .boxorder import Params, box_equiv, box_leq, box_less, cont, content_class_key
from .combinatorics import (
    Box,
    Multipartition,
    boxes,
    enumerate_multipartitions,
    relevant_boxes,
)
from .deform import (
    ASSUMED_LEMMAS,
    Certificate,
    CheckResult,
    DeformationError,
    DeformPlan,
    LocalizeOptions,
    PreservationViolation,
    deform_formal,
    deform_rational,
    index_classes,
    localize,
    s_coordinates,
    verify_preservation,
)
from .loci import (
    ContentHyperplane,
    GenericityWitness,
    IndexMode,
    KappaFraction,
    Stability,
    aspherical_witnesses,
    genericity_witness,
    is_generic,
    is_N_in_bound,
    is_spherical,
    theta_of_p,
)
from .mporder import OrderInstance, leq_p, leq_p_oracle, relation_p
from .poset import (
    OrderViolation,
    RefinementResult,
    Relation,
    common_refinement,
    hasse,
    is_partial_order,
    refines,
    reflexive_closure,
    to_dot,
    transitive_closure,
)
from .scalars import (
    KappaMode,
    ParamScalar,
    Sign,
    format_rational,
    parse_rational,
    parse_scalar,
)

__version__ = "0.1.0"

__all__ = [
    "ASSUMED_LEMMAS",
    "Box",
    "Certificate",
    "CheckResult",
    "ContentHyperplane",
    "DeformPlan",
    "DeformationError",
    "GenericityWitness",
    "IndexMode",
    "KappaFraction",
    "KappaMode",
    "LocalizeOptions",
    "Multipartition",
    "OrderInstance",
    "OrderViolation",
    "ParamScalar",
    "Params",
    "PreservationViolation",
    "RefinementResult",
    "Relation",
    "Sign",
    "Stability",
    "aspherical_witnesses",
    "box_equiv",
    "box_leq",
    "box_less",
    "boxes",
    "common_refinement",
    "cont",
    "content_class_key",
    "deform_formal",
    "deform_rational",
    "enumerate_multipartitions",
    "format_rational",
    "genericity_witness",
    "hasse",
    "index_classes",
    "is_N_in_bound",
    "is_generic",
    "is_partial_order",
    "is_spherical",
    "leq_p",
    "leq_p_oracle",
    "localize",
    "parse_rational",
    "parse_scalar",
    "reflexive_closure",
    "refines",
    "relation_p",
    "relevant_boxes",
    "s_coordinates",
    "theta_of_p",
    "to_dot",
    "transitive_closure",
    "verify_preservation",
]
