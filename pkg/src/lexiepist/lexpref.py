"""Lexicographic expected utility, preference and likelihood relations."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .model import LexBelief, Model, Pair, UtilityFunction, opponent

UtilityVector = tuple[Fraction, ...]


class Preference(str, Enum):
    PREFERS = "prefers"
    INDIFFERENT = "indifferent"
    DISPREFERS = "dispreferred"


def _check_dimensions(belief: LexBelief, utility: UtilityFunction) -> None:
    opp = set(utility.opp)
    for level in belief.levels:
        for c, _, _ in level:
            if c not in opp:
                raise ValueError(
                    f"belief mentions {c!r}, which is not an opponent choice for player {utility.owner}"
                )


def lex_utility(choice: str, belief: LexBelief, utility: UtilityFunction) -> UtilityVector:
    """Expected utility of ``choice`` at each level of ``belief``."""
    if choice not in utility.own:
        raise ValueError(f"{choice!r} is not a choice of player {utility.owner}")
    _check_dimensions(belief, utility)
    row = dict(zip(utility.opp, utility.row(choice)))
    return tuple(sum((p * row[c] for c, _, p in level), Fraction(0)) for level in belief.levels)


def compare_vectors(a: UtilityVector, b: UtilityVector) -> Preference:
    if len(a) != len(b):
        raise ValueError("utility vectors of different length")
    for x, y in zip(a, b):
        if x > y:
            return Preference.PREFERS
        if x < y:
            return Preference.DISPREFERS
    return Preference.INDIFFERENT


def prefers(belief: LexBelief, utility: UtilityFunction, c: str, c_other: str) -> Preference:
    """How ``c`` compares with ``c_other`` for a holder of ``belief`` and ``utility``."""
    return compare_vectors(lex_utility(c, belief, utility), lex_utility(c_other, belief, utility))


@lru_cache(maxsize=65536)
def _table(belief: LexBelief, utility: UtilityFunction) -> tuple[UtilityVector, ...]:
    return tuple(lex_utility(c, belief, utility) for c in utility.own)


def utility_table(belief: LexBelief, utility: UtilityFunction) -> dict[str, UtilityVector]:
    """Utility vector of every own choice (memoized; beliefs and utilities are immutable)."""
    return dict(zip(utility.own, _table(belief, utility)))


def optimal_choices(belief: LexBelief, utility: UtilityFunction) -> list[str]:
    """Choices no other choice is preferred to, in the owner's choice order."""
    table = utility_table(belief, utility)
    best = max(table.values())  # tuples of Fractions compare lexicographically
    return [c for c in utility.own if table[c] == best]


def infinitely_more_likely(belief: LexBelief, pair: Pair, other: Pair) -> bool:
    """True iff ``pair`` shows up at a strictly earlier level than ``other``.

    A pair that never shows up counts as appearing after the last level.
    """
    k = belief.first_level(pair)
    if k is None:
        return False
    k_other = belief.first_level(other)
    return k_other is None or k < k_other


def deemed_possible_types(model: Model, t: str) -> list[str]:
    return model.deemed_types(t)


def optimal_for(model: Model, t: str) -> list[str]:
    """Choices rational for type ``t`` given its own utility function."""
    return optimal_choices(model.belief(t), model.utility(t))


def is_optimal_for(model: Model, t: str, choice: str) -> bool:
    return choice in optimal_for(model, t)


def opponent_choices(model: Model, t: str) -> tuple[str, ...]:
    return model.choices[opponent(model.player_of(t))]
