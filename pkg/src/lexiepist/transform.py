"""Model constructions: preference partitions, utility ladders, the two
model translations and cautious extension by doppelganger levels."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .lexpref import lex_utility, optimal_choices, utility_table
from .model import (
    PLAYERS,
    CompleteModel,
    Game,
    IncompleteModel,
    LexBelief,
    UtilityFunction,
    opponent,
)


class PreconditionError(ValueError):
    """A construction was asked to run on an input outside its domain."""


@dataclass(frozen=True)
class PreferencePartition:
    """Indifference classes of one player's choices, best class first."""

    classes: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.classes)

    def class_index(self, choice: str) -> int:
        """1-based index of the class containing ``choice``."""
        for i, cls in enumerate(self.classes, start=1):
            if choice in cls:
                return i
        raise KeyError(choice)

    def to_json(self) -> list:
        return [list(c) for c in self.classes]


@dataclass(frozen=True)
class UtilityLadder:
    partition: PreferencePartition
    rungs: tuple[UtilityFunction, ...]

    def __len__(self) -> int:
        return len(self.rungs)


def preference_partition(belief: LexBelief, utility: UtilityFunction) -> PreferencePartition:
    table = utility_table(belief, utility)
    values = sorted(set(table.values()), reverse=True)
    return PreferencePartition(
        tuple(tuple(c for c in utility.own if table[c] == v) for v in values)
    )


def level_one_bump(
    u: UtilityFunction, belief: LexBelief, choices: Iterable[str], amount: Fraction
) -> UtilityFunction:
    """Raise the rows of ``choices`` by ``amount`` on every column in the level-1 support."""
    support = {c for c, _ in belief.support(0)}
    return u.replace_cells(
        {(c, cj): u(c, cj) + amount for c in choices for cj in u.opp if cj in support}
    )


def utility_ladder(u: UtilityFunction, belief: LexBelief) -> UtilityLadder:
    """One utility function per preference class, each making its class optimal.

    Rung 1 is ``u``. Rung l+1 bumps class l+1 on the level-1 support by the
    smallest integer that lifts it strictly above every other choice's
    level-1 value at rung l.
    """
    partition = preference_partition(belief, u)
    rungs = [u]
    for cls in partition.classes[1:]:
        current = rungs[-1]
        level_one = {c: lex_utility(c, belief, current)[0] for c in u.own}
        gap = max(level_one.values()) - level_one[cls[0]]
        rungs.append(level_one_bump(current, belief, cls, Fraction(math.floor(gap) + 1)))
    return UtilityLadder(partition, tuple(rungs))


# --- complete -> incomplete -------------------------------------------------


def theta_name(player: str, rung: int, source: str) -> str:
    return f"θ{player}{rung}({source})"


@dataclass(frozen=True)
class Co2InResult:
    model: IncompleteModel
    ladders: Mapping[str, UtilityLadder]
    types_of: Mapping[str, tuple[str, ...]]  # source type -> its incomplete types, rung order

    def first(self, t: str) -> str:
        """The rung-1 type built from ``t``; it carries the game's utility."""
        return self.types_of[t][0]


def co2in_detailed(model: CompleteModel) -> Co2InResult:
    game = model.game
    ladders = {t: utility_ladder(model.utility(t), model.belief(t)) for t in model.all_types()}
    types_of = {
        t: tuple(theta_name(model.player_of(t), r, t) for r in range(1, len(ladders[t]) + 1))
        for t in model.all_types()
    }
    rewire = {}
    for t in model.all_types():
        part = ladders[t].partition
        for c in model.choices[model.player_of(t)]:
            rewire[(c, t)] = (c, types_of[t][part.class_index(c) - 1])
    types, utilities, beliefs = {p: [] for p in PLAYERS}, {}, {}
    for t in model.all_types():
        belief = model.belief(t).relabel(rewire)
        for name, rung in zip(types_of[t], ladders[t].rungs):
            types[model.player_of(t)].append(name)
            utilities[name] = rung
            beliefs[name] = belief
    out = IncompleteModel(game.form, types, utilities, beliefs)
    return Co2InResult(out, ladders, types_of)


def co2in(model: CompleteModel) -> IncompleteModel:
    """Split each type into one type per preference class, each with its ladder utility."""
    return co2in_detailed(model).model


# --- incomplete -> complete -------------------------------------------------


def belief_classes(model: IncompleteModel | CompleteModel) -> dict[str, list[tuple[str, ...]]]:
    """Types grouped by identical belief, per player, in order of first appearance."""
    out: dict[str, list[tuple[str, ...]]] = {}
    for p in PLAYERS:
        groups: dict[tuple, list[str]] = {}
        for t in model.types[p]:
            groups.setdefault(model.belief(t).canonical(), []).append(t)
        out[p] = [tuple(g) for g in groups.values()]
    return out


def class_name(members: Iterable[str]) -> str:
    return "t(" + ",".join(sorted(members)) + ")"


def class_map(model: IncompleteModel | CompleteModel) -> dict[str, str]:
    """Map each type to the name of its belief class."""
    return {
        t: class_name(cls) for p, classes in belief_classes(model).items() for cls in classes for t in cls
    }


def in2co(model: IncompleteModel, game: Game) -> CompleteModel:
    """One complete type per belief class; beliefs rewired through the classes."""
    if dict(game.choices) != dict(model.choices):
        raise PreconditionError("the model and the game have different choice sets")
    classes = belief_classes(model)
    names = class_map(model)
    relabel = {
        (c, t): (c, names[t])
        for t in model.all_types()
        for c in model.choices[model.player_of(t)]
    }
    types, beliefs = {}, {}
    for p in PLAYERS:
        types[p] = [class_name(cls) for cls in classes[p]]
        for cls in classes[p]:
            rep = min(cls)
            beliefs[class_name(cls)] = model.belief(rep).relabel(relabel)
    return CompleteModel(game, types, beliefs)


# --- cautious extension -----------------------------------------------------


def missing_pairs(model: CompleteModel, t: str) -> list[tuple[str, str]]:
    """Opponent (choice, deemed type) pairs that ``t`` never deems possible."""
    belief = model.belief(t)
    q = opponent(model.player_of(t))
    return [
        (c, tj)
        for c in model.choices[q]
        for tj in model.deemed_types(t)
        if belief.first_level((c, tj)) is None
    ]


def extend_belief(model: CompleteModel, t: str) -> LexBelief:
    belief = model.belief(t)
    q = opponent(model.player_of(t))
    present = {c for c, _ in belief.deemed()}
    absent = [c for c in model.choices[q] if c not in present]
    if absent:
        raise PreconditionError(f"type {t!r} is not weakly cautious: never considers {absent}")
    for c, tj in missing_pairs(model, t):
        # smallest level where c appears with some other type, first such type in type order
        for k in range(len(belief)):
            partner = next(
                (s for s in model.types[q] if belief.prob(k, (c, s)) > 0), None
            )
            if partner is not None:
                break
        source = belief.levels[k]
        doppelganger = tuple(
            (c, tj, p) if (ci, ti) == (c, partner) else (ci, ti, p) for ci, ti, p in source
        )
        belief = belief.insert_level(k + 1, doppelganger)
    return belief


def cautious_extension(model: CompleteModel, t: str) -> CompleteModel:
    """Insert doppelganger levels into ``t``'s belief until it is cautious.

    Each doppelganger copies a level and renames one (choice, type) entry,
    so every choice keeps the same expected utility at the copy.
    """
    return model.with_belief(t, extend_belief(model, t))


def cautious_extension_model(model: CompleteModel) -> CompleteModel:
    """Extend every weakly cautious type; types that are not stay as they are."""
    beliefs = dict(model.beliefs)
    for t in model.all_types():
        try:
            beliefs[t] = extend_belief(model, t)
        except PreconditionError:
            pass
    return CompleteModel(model.game, model.types, beliefs)


def rational_choices_preserved(before: CompleteModel, after: CompleteModel, t: str) -> bool:
    u = before.utility(t)
    return optimal_choices(before.belief(t), u) == optimal_choices(after.belief(t), u)

