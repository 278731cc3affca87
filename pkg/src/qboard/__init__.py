"""Rook, hit, q-rook and q-hit numbers of boards, with exact residue analysis."""

__version__ = "0.1.0"
