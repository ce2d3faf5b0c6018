"""Exact valuations, function tables and topologies on Gamma_inf."""
from .closeness import (
    Certificate, CylinderOpen, check_P1_failure, check_P1_order, check_P2,
    synthesize_separating_open, t1_counterexample, verify_certificate,
)
from .topocompare import (
    SQRT2, CutSet, cover_incomplete, cover_no_smallest, gamma_prime_equality, is_discrete,
    refines, standard_samples,
)
from .groups import (
    INF, Q, Z, Full, GroupElem, NonNegative, add, between, compare, elem, lex, negate, parse_group, parse_monoid,
    smallest_positive, split_positive,
)
from .opensets import (
    A1, A2, A3, OpenSet, infinity_basis, intersect, is_open_in, member, minkowski_hull, pinned,
    separate_below, tethered, union,
)
from .rings import parse_elem, parse_ring, ring_add, ring_mul
from .spectra import (
    normalize, patch_member, sign_map, valspec_member, weak_member, zariski_member,
)
from .valuations import (
    FnTable, Gauss, Monomial, PAdic, Scaled, Trivial, XAdic, check_axioms, equivalent_on,
    evaluate, evaluate_fraction, is_centered, maximal_ideal_value, parse_valuation,
    monomial, scaling_constant,
)

__version__ = "0.1.0"

__all__ = [
    "A1",
    "A2",
    "A3",
    "Certificate",
    "CutSet",
    "CylinderOpen",
    "FnTable",
    "Full",
    "Gauss",
    "GroupElem",
    "INF",
    "Monomial",
    "NonNegative",
    "OpenSet",
    "PAdic",
    "Q",
    "SQRT2",
    "Scaled",
    "Trivial",
    "XAdic",
    "Z",
    "add",
    "between",
    "check_P1_failure",
    "check_P1_order",
    "check_P2",
    "check_axioms",
    "compare",
    "cover_incomplete",
    "cover_no_smallest",
    "elem",
    "equivalent_on",
    "evaluate",
    "evaluate_fraction",
    "gamma_prime_equality",
    "infinity_basis",
    "intersect",
    "is_centered",
    "is_discrete",
    "is_open_in",
    "lex",
    "maximal_ideal_value",
    "member",
    "minkowski_hull",
    "monomial",
    "negate",
    "normalize",
    "parse_elem",
    "parse_group",
    "parse_monoid",
    "parse_ring",
    "parse_valuation",
    "patch_member",
    "pinned",
    "refines",
    "ring_add",
    "ring_mul",
    "scaling_constant",
    "separate_below",
    "sign_map",
    "smallest_positive",
    "split_positive",
    "standard_samples",
    "synthesize_separating_open",
    "t1_counterexample",
    "tethered",
    "union",
    "valspec_member",
    "verify_certificate",
    "weak_member",
    "zariski_member",
]
