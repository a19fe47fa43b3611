"""Distances between utility functions of one player."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .lexpref import prefers
from .model import LexBelief, UtilityFunction


def _same_shape(u: UtilityFunction, v: UtilityFunction) -> None:
    if u.owner != v.owner or u.own != v.own or u.opp != v.opp:
        raise ValueError("utility functions are defined over different game forms")


def sq_euclid(u: UtilityFunction, v: UtilityFunction) -> Fraction:
    """Squared Euclidean distance, summed over every cell."""
    _same_shape(u, v)
    return sum(
        ((a - b) ** 2 for ra, rb in zip(u.values, v.values) for a, b in zip(ra, rb)),
        Fraction(0),
    )


def ordinal_distance(beta: LexBelief, v: UtilityFunction, u: UtilityFunction) -> int:
    """Number of unordered choice pairs ranked differently under ``v`` and ``u`` given ``beta``.

    A strict preference and an indifference count as different verdicts.
    """
    _same_shape(u, v)
    return sum(
        prefers(beta, v, a, b) != prefers(beta, u, a, b) for a, b in combinations(u.own, 2)
    )
