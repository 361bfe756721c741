"""Prym invariants and specialty criteria for families of abelian covers of the projective line."""

from .conditions import ConditionReport, full_report
from .coverdata import AbelianCoverDatum, PrymDatum, parse_block, parse_data, validate
from .search import SearchSpec, canonical_key, enumerate_data, run_search

__all__ = [
    "AbelianCoverDatum",
    "ConditionReport",
    "PrymDatum",
    "SearchSpec",
    "canonical_key",
    "enumerate_data",
    "full_report",
    "parse_block",
    "parse_data",
    "run_search",
    "validate",
]
__version__ = "0.1.0"
