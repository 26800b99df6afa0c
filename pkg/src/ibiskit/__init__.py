"""Permutation groups, irredundant bases and the IBIS property."""

__version__ = "0.1.0"

from .actions import ActionMap, coset_action, is_primitive, natural_action, subset_action
from .catalog import load_catalog, load_certificate, load_group_file, save_certificate
from .group import BudgetExhausted, Coset, GeneratedGroup, parse_group_text
from .ibis import (
    BaseMatroid,
    Decision,
    IbisCertificate,
    IrredundantTuple,
    Method,
    base_size,
    check_reorder_invariance,
    enumerate_irredundant_bases,
    enumerate_irredundant_tuples,
    extract_matroid,
    is_ibis,
    lemma_b2_spotcheck,
    minimal_base,
    verify_base_exchange,
)
from .perm import Permutation, compose, conjugate, format_cycles, identity, inverse, parse_cycles
from .rng import SplitMix64
from .techniques import t1_random_search, t2_conjugate_chain, t3_restricted_search, verify_certificate

__all__ = [
    "ActionMap",
    "BaseMatroid",
    "BudgetExhausted",
    "Coset",
    "Decision",
    "GeneratedGroup",
    "IbisCertificate",
    "IrredundantTuple",
    "Method",
    "Permutation",
    "SplitMix64",
    "base_size",
    "check_reorder_invariance",
    "compose",
    "conjugate",
    "coset_action",
    "enumerate_irredundant_bases",
    "enumerate_irredundant_tuples",
    "extract_matroid",
    "format_cycles",
    "identity",
    "inverse",
    "is_ibis",
    "is_primitive",
    "lemma_b2_spotcheck",
    "load_catalog",
    "load_certificate",
    "load_group_file",
    "minimal_base",
    "natural_action",
    "parse_cycles",
    "parse_group_text",
    "save_certificate",
    "subset_action",
    "t1_random_search",
    "t2_conjugate_chain",
    "t3_restricted_search",
    "verify_base_exchange",
    "verify_certificate",
]
