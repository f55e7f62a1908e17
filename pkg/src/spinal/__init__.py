"""Schreier graphs of spinal groups acting on rooted d-ary trees."""

from .algebra import (AutB, Epimorphism, InvalidOmega, OmegaSequence, ParameterError, Params,
                      SpinalError, SpinalGroup, Unsupported, detect_self_similar, make_group,
                      parse_group_spec, preset, validate_omega)
from .action import RotA, SpinalB, act, act_a, act_b, fixed_by, fixed_by_B
from .boundary import (EndsClass, annulus_components, ball, delta, ends_class, lambda_sub,
                       limit_ball, sch_continuous_at, verify_ball_identities)
from .graph import (LabeledMultigraph, RootedGraph, block, diameter, equal_labeled, export,
                    gamma_direct, gamma_prime, gamma_recursive, import_json, star)
from .isomorphism import (compatible, iso_labeled_rooted, iso_unlabeled_rooted, phi,
                          unrooted_witness, verify_phi_ball, y_class, zero_blocks)
from .words import BoundaryPoint, canonicalize, discrepancy, letter_at, parse_point, shift

__version__ = "0.1.0"

__all__ = [
    "act",
    "act_a",
    "act_b",
    "annulus_components",
    "AutB",
    "ball",
    "block",
    "BoundaryPoint",
    "canonicalize",
    "compatible",
    "delta",
    "detect_self_similar",
    "diameter",
    "discrepancy",
    "ends_class",
    "EndsClass",
    "Epimorphism",
    "equal_labeled",
    "export",
    "fixed_by",
    "fixed_by_B",
    "gamma_direct",
    "gamma_prime",
    "gamma_recursive",
    "import_json",
    "InvalidOmega",
    "iso_labeled_rooted",
    "iso_unlabeled_rooted",
    "LabeledMultigraph",
    "lambda_sub",
    "letter_at",
    "limit_ball",
    "make_group",
    "OmegaSequence",
    "ParameterError",
    "Params",
    "parse_group_spec",
    "parse_point",
    "phi",
    "preset",
    "RootedGraph",
    "RotA",
    "sch_continuous_at",
    "shift",
    "SpinalB",
    "SpinalError",
    "SpinalGroup",
    "star",
    "unrooted_witness",
    "Unsupported",
    "validate_omega",
    "verify_ball_identities",
    "verify_phi_ball",
    "y_class",
    "zero_blocks",
]
