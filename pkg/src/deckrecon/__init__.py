"""Reconstruct edge counts, clique counts and degree sequences from partial decks."""

__version__ = "0.1.0"

from .canonical import CanonicalCode, canonical_code
from .count import (
    EdgeEstimate,
    ReconTrace,
    RegimeCheck,
    estimate_edges,
    recognize_avg_degree,
    reconstruct_clique_count,
    reconstruct_edge_count,
    regime_check,
)
from .deck import CardStats, PartialDeck, card_stats_streamed, full_deck, remove_cards
from .degseq import CardPartition, DegSeqState, build_partition, estimate_st, find_zero_window, reconstruct_degree_sequence
from .errors import DeckReconError, InputError, InvariantViolation, ParseError, RegimeError, UnsupportedSizeError
from .graph import CliqueProfile, DegreeHistogram, Graph, clique_profile, degree_histogram, delete_vertex

__all__ = [
    "CanonicalCode", "CardPartition", "CardStats", "CliqueProfile", "DeckReconError", "DegSeqState",
    "DegreeHistogram", "EdgeEstimate", "Graph", "InputError", "InvariantViolation", "ParseError",
    "PartialDeck", "ReconTrace", "RegimeCheck", "RegimeError", "UnsupportedSizeError",
    "build_partition", "canonical_code", "card_stats_streamed", "clique_profile", "degree_histogram",
    "delete_vertex", "estimate_edges", "estimate_st", "find_zero_window", "full_deck",
    "recognize_avg_degree", "reconstruct_clique_count", "reconstruct_degree_sequence",
    "reconstruct_edge_count", "regime_check", "remove_cards",
]
