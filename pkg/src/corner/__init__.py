"""Interacting processes over a multi-sorted signature: typing, rewriting,
composition, and interpretation as cells of the free cornering."""

from .calculus import (
    GetL,
    GetR,
    Judgment,
    Let,
    PutL,
    PutR,
    Seq,
    alpha_eq,
    check_term,
    free_vars,
    recv,
    send,
    size,
    vsub,
)
from .cornering import Verdict, canonical, cells_equal, check_functor, dataflow, interpret, normalize_cell
from .errors import CornerError
from .generator import GenConfig, gen_context, gen_term, universal_signature
from .rewrite import Rule, convertible, critical_pair, normal_form, normalize
from .signature import App, Signature, Var, make_signature, parse_signature
from .syntax import parse_term, parse_term_file, parse_value
from .vdc import CellPath, check_vdc_laws, compose, id_term, identity_cell

__all__ = [
    "App", "CellPath", "CornerError", "GenConfig", "GetL", "GetR", "Judgment", "Let", "PutL", "PutR",
    "Rule", "Seq", "Signature", "Var", "Verdict", "alpha_eq", "canonical", "cells_equal", "check_functor",
    "check_term", "check_vdc_laws", "compose", "convertible", "critical_pair", "dataflow", "free_vars",
    "gen_context", "gen_term", "id_term", "identity_cell", "interpret", "make_signature", "normal_form",
    "normalize", "normalize_cell", "parse_signature", "parse_term", "parse_term_file", "parse_value",
    "recv", "send", "size", "universal_signature", "vsub",
]
