"""Exact toolkit for lexicographic epistemic models of two-player games."""
