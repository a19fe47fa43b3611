"""Random games and models for property suites.

Every generator takes ``pick(lo, hi)`` returning an integer in ``[lo, hi]``.
Backing it with :class:`random.Random` gives seeded runs; backing it with a
hypothesis ``data.draw`` gives shrinkable ones.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .conditions_co import common_assumption_rationality, rationality_tower
from .lexpref import optimal_for
from .model import PLAYERS, CompleteModel, Game, IncompleteModel, LexBelief, UtilityFunction, opponent
from .transform import preference_partition, utility_ladder

Pick = Callable[[int, int], int]

LABELS = {"1": "ABC", "2": "DEF"}


def seeded(seed: int) -> Pick:
    rng = random.Random(seed)
    return rng.randint


def value(pick: Pick) -> Fraction:
    if pick(0, 3) == 0:
        return Fraction(pick(-6, 6), 2)
    return Fraction(pick(-2, 3))


def subset(pick: Pick, items, nonempty: bool = True) -> list:
    chosen = [x for x in items if pick(0, 1)]
    if nonempty and not chosen:
        chosen = [items[pick(0, len(items) - 1)]]
    return chosen


def random_game(pick: Pick, max_choices: int = 3) -> Game:
    c1 = tuple(LABELS["1"][: pick(1, max_choices)])
    c2 = tuple(LABELS["2"][: pick(1, max_choices)])
    u1 = [[value(pick) for _ in c2] for _ in c1]
    u2 = [[value(pick) for _ in c1] for _ in c2]
    return Game.from_rows(c1, c2, u1, u2)


def belief_from_keys(pick: Pick, keyed: list[tuple[tuple[str, str], int]], weights=None) -> LexBelief:
    """Group pairs by key (smaller keys first); weights are drawn unless given per pair."""
    order = sorted({k for _, k in keyed})
    levels = []
    for k in order:
        pairs = [pr for pr, kk in keyed if kk == k]
        weights_k = [weights[pr] if weights else pick(1, 3) for pr in pairs]
        total = sum(weights_k)
        levels.append({pr: Fraction(w, total) for pr, w in zip(pairs, weights_k)})
    return LexBelief.from_pairs(*levels)


def type_names(player: str, n: int) -> list[str]:
    return [f"t{player}{k}" for k in range(1, n + 1)]


class _Layout:
    """Random pair set and ordering keys for one type, drawn once."""

    def __init__(self, pick: Pick, own: str, choices, types, mode: str):
        q = opponent(own)
        self.deemed = subset(pick, types[q])
        pairs = [(c, s) for c in choices[q] for s in self.deemed]
        if mode == "free":
            kept = subset(pick, pairs)
            for s in self.deemed:  # every deemed type shows up
                if not any(p[1] == s for p in kept):
                    kept.append((choices[q][pick(0, len(choices[q]) - 1)], s))
        elif mode == "weak":
            kept = subset(pick, pairs)
            for c in choices[q]:
                if not any(p[0] == c for p in kept):
                    kept.append((c, self.deemed[pick(0, len(self.deemed) - 1)]))
        else:
            kept = pairs
        self.pairs = [p for p in pairs if p in kept] + [p for p in kept if p not in pairs]
        self.keys = {p: pick(0, len(self.pairs) - 1) for p in self.pairs}
        self.offset = {s: pick(0, 2) for s in self.deemed}
        self.front = {p: pick(0, 1) for p in self.pairs}
        self.primary = set(subset(pick, self.deemed))
        self.depth = pick(0, 3)
        self.weights = {p: pick(1, 3) for p in self.pairs}


def _rebuild(pick: Pick, model: CompleteModel, layouts, mode: str) -> CompleteModel:
    beliefs = {}
    tower = rationality_tower(model) if mode == "car" else None
    if mode == "respect":
        parts = {t: preference_partition(model.belief(t), model.utility(t)) for t in model.all_types()}
    for t, lay in layouts.items():
        if mode == "respect":
            keyed = [(p, parts[p[1]].class_index(p[0]) + lay.offset[p[1]]) for p in lay.pairs]
        elif mode == "pbr":
            keyed = []
            for p in lay.pairs:
                best = optimal_for(model, p[1])
                first = p[1] in lay.primary and p[0] in best and (lay.front[p] or p[0] == best[0])
                keyed.append((p, 0 if first else 1 + lay.keys[p]))
        elif mode == "car" and lay.depth:
            # pairs ranked by how far their type climbs the tower, capped at this type's own depth
            keyed = []
            for p in lay.pairs:
                depth = -1
                if p[0] in optimal_for(model, p[1]):
                    depth = max((k for k, lv in enumerate(tower.levels) if p[1] in lv), default=-1)
                keyed.append((p, (lay.depth - min(depth, lay.depth - 1)) * 3 + lay.keys[p] % 3))
        else:
            keyed = [(p, lay.keys[p]) for p in lay.pairs]
        beliefs[t] = belief_from_keys(pick, keyed, lay.weights)
    return CompleteModel(model.game, model.types, beliefs)


def random_complete_model(
    pick: Pick, game: Game | None = None, max_types: int = 3, mode: str = "free"
) -> CompleteModel:
    """Random model on ``game``.

    ``mode`` shapes the beliefs: ``free`` and ``weak`` leave pairs out,
    ``cautious`` keeps every pair of deemed types, and ``pbr``, ``respect``
    and ``car`` additionally reorder levels toward primary belief in
    rationality, respect of preferences or assumption of rationality,
    iterating to a fixpoint (at most twenty rounds; ``car`` also stops once
    some type expresses common assumption of rationality).
    """
    game = game or random_game(pick)
    types = {p: type_names(p, pick(1, max_types)) for p in PLAYERS}
    base = "cautious" if mode in ("pbr", "respect", "car") else mode
    layouts = {t: _Layout(pick, p, game.choices, types, base) for p in PLAYERS for t in types[p]}
    model = CompleteModel(
        game,
        types,
        {t: belief_from_keys(pick, [(p, lay.keys[p]) for p in lay.pairs], lay.weights) for t, lay in layouts.items()},
    )
    if base == mode:
        return model
    for _ in range(20):
        nxt = _rebuild(pick, model, layouts, mode)
        if all(nxt.belief(t).same_as(model.belief(t)) for t in model.all_types()):
            return nxt
        if mode == "car" and common_assumption_rationality(nxt):
            return nxt
        model = nxt
    return model


def has_distinct_beliefs(model) -> bool:
    for p in PLAYERS:
        seen = set()
        for t in model.types[p]:
            key = model.belief(t).canonical()
            if key in seen:
                return False
            seen.add(key)
    return True


def random_incomplete_model(
    pick: Pick, u: Game | None = None, max_classes: int = 2, mode: str = "cautious"
) -> tuple[IncompleteModel, Game]:
    """Random incomplete model together with its reference utilities.

    Types come in belief classes. A class-level belief is drawn first; each
    member of a class then gets a ladder rung for that belief (or, now and
    then, an arbitrary utility), and each (choice, class) occurrence is
    handed to the member whose rung makes the choice optimal, or sometimes
    to a random member.
    """
    u = u or random_game(pick)
    classes = {p: [f"E{p}{k}" for k in range(1, pick(1, max_classes) + 1)] for p in PLAYERS}
    layouts = {e: _Layout(pick, p, u.choices, classes, mode) for p in PLAYERS for e in classes[p]}
    class_beliefs = {
        e: belief_from_keys(pick, [(pr, lay.keys[pr]) for pr in lay.pairs], lay.weights) for e, lay in layouts.items()
    }

    members, utilities, rung_of = {}, {}, {}
    for p in PLAYERS:
        for e in classes[p]:
            ladder = utility_ladder(u.utilities[p], class_beliefs[e])
            n = max(1, len(ladder) + pick(-1, 1))
            names = [f"θ{e[1:]}{k}" for k in range(1, n + 1)]
            members[e] = names
            for r, name in enumerate(names):
                if r < len(ladder) and pick(0, 5):
                    utilities[name] = ladder.rungs[r]
                else:
                    rows = [[value(pick) for _ in u.choices[opponent(p)]] for _ in u.choices[p]]
                    utilities[name] = UtilityFunction.from_rows(p, u.choices[p], u.choices[opponent(p)], rows)
            rung_of[e] = ladder.partition

    beliefs = {}
    for p in PLAYERS:
        for e in classes[p]:
            mapping = {}
            for lvl in class_beliefs[e].levels:
                for c, e2, _ in lvl:
                    names = members[e2]
                    r = rung_of[e2].class_index(c) - 1
                    target = names[r] if r < len(names) and pick(0, 4) else names[pick(0, len(names) - 1)]
                    mapping[(c, e2)] = (c, target)
            b = class_beliefs[e].relabel(mapping)
            for name in members[e]:
                beliefs[name] = b
    types = {p: [name for e in classes[p] for name in members[e]] for p in PLAYERS}
    return IncompleteModel(u.form, types, utilities, beliefs), u
