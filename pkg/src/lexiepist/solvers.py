"""Dominance oracles and elimination procedures on exact games."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Mapping

from .model import PLAYERS, Game, fraction_str, opponent
from .simplex import OPTIMAL, maximize

WEAK = "weak"
STRICT = "strict"


@dataclass(frozen=True)
class Restriction:
    """Surviving choices per player, kept in the game's choice order."""

    sets: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        object.__setattr__(self, "sets", {p: tuple(self.sets[p]) for p in PLAYERS})
        for p in PLAYERS:
            if not self.sets[p]:
                raise ValueError(f"restriction leaves player {p} without choices")

    @classmethod
    def full(cls, game: Game) -> Restriction:
        return cls(game.choices)

    def __getitem__(self, player: str) -> tuple[str, ...]:
        return self.sets[player]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Restriction):
            return NotImplemented
        return all(set(self.sets[p]) == set(other.sets[p]) for p in PLAYERS)

    def __hash__(self) -> int:
        return hash(tuple(frozenset(self.sets[p]) for p in PLAYERS))

    def issubset(self, other: Restriction) -> bool:
        return all(set(self.sets[p]) <= set(other.sets[p]) for p in PLAYERS)

    def remove(self, removed: Mapping[str, set[str]]) -> Restriction:
        return Restriction(
            {p: tuple(c for c in self.sets[p] if c not in removed.get(p, ())) for p in PLAYERS}
        )

    def to_json(self) -> dict:
        return {p: list(self.sets[p]) for p in PLAYERS}


@dataclass(frozen=True)
class DominanceCertificate:
    """A mixture over the player's other choices that dominates ``choice``."""

    player: str
    choice: str
    mixture: Mapping[str, Fraction]
    mode: str
    strict_at: str | None = None

    def verify(self, game: Game, restriction: Restriction | None = None) -> bool:
        """Re-check the dominance inequalities by substitution."""
        restriction = restriction or Restriction.full(game)
        u = game.utilities[self.player]
        own = restriction[self.player]
        if any(w < 0 for w in self.mixture.values()) or sum(self.mixture.values()) != 1:
            return False
        if self.choice in self.mixture or not set(self.mixture) <= set(own):
            return False
        strict_seen = False
        for cj in restriction[opponent(self.player)]:
            mixed = sum((w * u(k, cj) for k, w in self.mixture.items()), Fraction(0))
            base = u(self.choice, cj)
            if mixed < base:
                return False
            if mixed > base:
                strict_seen = True
            elif self.mode == STRICT:
                return False
        if self.mode == WEAK:
            if self.strict_at is None or self.strict_at not in restriction[opponent(self.player)]:
                return False
            s = self.strict_at
            return sum((w * u(k, s) for k, w in self.mixture.items()), Fraction(0)) > u(self.choice, s)
        return strict_seen

    def to_json(self) -> dict:
        out = {
            "player": self.player,
            "choice": self.choice,
            "mode": self.mode,
            "mixture": {k: fraction_str(w) for k, w in self.mixture.items()},
        }
        if self.strict_at is not None:
            out["strict_at"] = self.strict_at
        return out


def _setup(game: Game, player: str, choice: str, restriction: Restriction | None):
    restriction = restriction or Restriction.full(game)
    if choice not in restriction[player]:
        raise ValueError(f"{choice!r} is not among player {player}'s restricted choices")
    u = game.utilities[player]
    others = [k for k in restriction[player] if k != choice]
    cols = list(restriction[opponent(player)])
    return restriction, u, others, cols


def weakly_dominated(
    game: Game, player: str, choice: str, restriction: Restriction | None = None
) -> DominanceCertificate | None:
    """Certificate that a mixture of the other restricted choices weakly dominates ``choice``.

    The LP maximizes total slack of ``sum_k s_k u(k, .) >= u(choice, .)``;
    a positive optimum means some column is strict.
    """
    restriction, u, others, cols = _setup(game, player, choice, restriction)
    if not others:
        return None
    nk, nj = len(others), len(cols)
    # variables: sigma_k (nk), slack_j (nj)
    A, b = [], []
    for j, cj in enumerate(cols):
        A.append([u(k, cj) for k in others] + [Fraction(-int(i == j)) for i in range(nj)])
        b.append(u(choice, cj))
    A.append([Fraction(1)] * nk + [Fraction(0)] * nj)
    b.append(Fraction(1))
    res = maximize([Fraction(0)] * nk + [Fraction(1)] * nj, A, b)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    mixture = {k: w for k, w in zip(others, res.x[:nk]) if w > 0}
    strict_at = next(cj for cj, s in zip(cols, res.x[nk:]) if s > 0)
    cert = DominanceCertificate(player, choice, mixture, WEAK, strict_at)
    if not cert.verify(game, restriction):
        raise AssertionError(f"LP produced an invalid weak-dominance certificate: {cert}")
    return cert


def strictly_dominated(
    game: Game, player: str, choice: str, restriction: Restriction | None = None
) -> DominanceCertificate | None:
    """Certificate that a mixture of the other restricted choices is strictly better everywhere."""
    restriction, u, others, cols = _setup(game, player, choice, restriction)
    if not others:
        return None
    nk, nj = len(others), len(cols)
    # variables: sigma_k (nk), e_plus, e_minus, slack_j (nj)
    A, b = [], []
    for j, cj in enumerate(cols):
        A.append(
            [u(k, cj) for k in others]
            + [Fraction(-1), Fraction(1)]
            + [Fraction(-int(i == j)) for i in range(nj)]
        )
        b.append(u(choice, cj))
    A.append([Fraction(1)] * nk + [Fraction(0)] * (2 + nj))
    b.append(Fraction(1))
    cost = [Fraction(0)] * nk + [Fraction(1), Fraction(-1)] + [Fraction(0)] * nj
    res = maximize(cost, A, b)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    mixture = {k: w for k, w in zip(others, res.x[:nk]) if w > 0}
    cert = DominanceCertificate(player, choice, mixture, STRICT)
    if not cert.verify(game, restriction):
        raise AssertionError(f"LP produced an invalid strict-dominance certificate: {cert}")
    return cert


def optimal_for_some_cautious_belief(
    game: Game, player: str, choice: str, restriction: Restriction | None = None
) -> bool:
    """A choice is a best reply to some full-support belief iff it is not weakly dominated."""
    return weakly_dominated(game, player, choice, restriction) is None


def _round(game: Game, restriction: Restriction, test) -> tuple[Restriction, dict]:
    removed: dict[str, set[str]] = {p: set() for p in PLAYERS}
    certificates = {}
    for p in PLAYERS:
        for c in restriction[p]:
            cert = test(game, p, c, restriction)
            if cert is not None:
                removed[p].add(c)
                certificates[(p, c)] = cert
    return restriction.remove(removed), certificates


@lru_cache(maxsize=4096)
def _iewds(game: Game) -> tuple[Restriction, ...]:
    ladder = [Restriction.full(game)]
    while True:
        nxt, _ = _round(game, ladder[-1], weakly_dominated)
        if nxt == ladder[-1]:
            return tuple(ladder)
        ladder.append(nxt)


def iewds(game: Game) -> list[Restriction]:
    """Survivor ladder of simultaneous weak-dominance elimination.

    Entry 0 is the full game; the last entry is the fixpoint (listed once).
    Ladders are memoized per game.
    """
    return list(_iewds(game))


def survivors(ladder: list[Restriction], n: int) -> Restriction:
    """``S^n``: the restriction after ``n`` rounds, frozen at the fixpoint."""
    return ladder[min(n, len(ladder) - 1)]


def dekel_fudenberg(game: Game) -> Restriction:
    """One simultaneous weak round, then strict rounds to a fixpoint."""
    return dekel_fudenberg_trace(game)[-1]


def dekel_fudenberg_trace(game: Game) -> list[Restriction]:
    full = Restriction.full(game)
    first, _ = _round(game, full, weakly_dominated)
    trace = [full] if first == full else [full, first]
    while True:
        nxt, _ = _round(game, trace[-1], strictly_dominated)
        if nxt == trace[-1]:
            return trace
        trace.append(nxt)


def elimination_certificates(game: Game, restriction: Restriction, mode: str = WEAK) -> dict:
    """Certificates for every choice removed in one round from ``restriction``."""
    test = weakly_dominated if mode == WEAK else strictly_dominated
    return _round(game, restriction, test)[1]
