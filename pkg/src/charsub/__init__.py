"""Characterized subgroups of abelian groups, computed exactly where possible.

A sequence of characters v = (v_n) of an abelian group X defines the
characterized subgroup s_v(X) = {x : v_n(x) -> 0 in T}.  This package decides
membership in s_v(X) with replayable certificates, computes radicals,
builds characterizing sequences and answers classification questions.
"""

from .errors import CapExceeded, CharsubError, DescriptorMismatch, ParseError, PreconditionError, Undecidable
from .groups import (
    CircleT,
    FiniteAbelian,
    IntegersZ,
    PAdicQ,
    Product,
    RealsR,
    SymbolicCompact,
)
from .expr import format_sequence, parse_character, parse_element, parse_group, parse_sequence
from .membership import Status, Verdict, evidence_trail, is_autochar_witness, member, s_v_finite
from .radicals import inj_into_torus, n_characterizer, radical
from .construct import claim_lift, k_characterize_open_finite_index, quotient_lift
from .classify import autochar_verdict, eo_descriptor, exp_descriptor, not_t_characterizable
from .certificates import Certificate

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "CharsubError", "DescriptorMismatch", "ParseError", "PreconditionError", "Undecidable",
    "CircleT", "FiniteAbelian", "IntegersZ", "PAdicQ", "Product", "RealsR", "SymbolicCompact",
    "format_sequence", "parse_character", "parse_element", "parse_group", "parse_sequence",
    "Status", "Verdict", "evidence_trail", "is_autochar_witness", "member", "s_v_finite",
    "inj_into_torus", "n_characterizer", "radical",
    "claim_lift", "k_characterize_open_finite_index", "quotient_lift",
    "autochar_verdict", "eo_descriptor", "exp_descriptor", "not_t_characterizable",
    "Certificate",
]
