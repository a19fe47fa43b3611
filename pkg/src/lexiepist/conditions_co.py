"""Conditions on types of a complete-information model, and their closures."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .lexpref import Preference, infinitely_more_likely, optimal_for, prefers
from .model import CompleteModel, ConditionVerdict, Game, Model, opponent
from .solvers import Restriction, iewds, survivors

Test = Callable[[Model, str], ConditionVerdict]


def precondition_failed(condition: str, t: str, detail: ConditionVerdict) -> ConditionVerdict:
    return ConditionVerdict(
        False,
        {"precondition": condition, "type": t, "detail": detail.witness},
        precondition_failed=True,
    )


# --- caution ----------------------------------------------------------------


def is_cautious_co(model: CompleteModel, t: str) -> ConditionVerdict:
    belief = model.belief(t)
    q = opponent(model.player_of(t))
    for tj in model.deemed_types(t):
        for c in model.choices[q]:
            if belief.first_level((c, tj)) is None:
                return ConditionVerdict.fail(pair=[c, tj])
    return ConditionVerdict.ok()


def is_weakly_cautious(model: Model, t: str) -> ConditionVerdict:
    present = {c for c, _ in model.belief(t).deemed()}
    for c in model.choices[opponent(model.player_of(t))]:
        if c not in present:
            return ConditionVerdict.fail(choice=c)
    return ConditionVerdict.ok()


is_weakly_cautious_co = is_weakly_cautious


# --- rationality and preferences --------------------------------------------


def primarily_believes_rationality(model: CompleteModel, t: str) -> ConditionVerdict:
    for c, tj in model.belief(t).support(0):
        best = optimal_for(model, tj)
        if c not in best:
            return ConditionVerdict.fail(pair=[c, tj], level=1, optimal=best)
    return ConditionVerdict.ok()


def respects_preferences(model: CompleteModel, t: str) -> ConditionVerdict:
    caution = is_cautious_co(model, t)
    if not caution:
        return precondition_failed("caution", t, caution)
    belief = model.belief(t)
    q = opponent(model.player_of(t))
    for tj in model.deemed_types(t):
        for c in model.choices[q]:
            for c2 in model.choices[q]:
                if prefers(model.belief(tj), model.utility(tj), c, c2) is not Preference.PREFERS:
                    continue
                if not infinitely_more_likely(belief, (c, tj), (c2, tj)):
                    return ConditionVerdict.fail(
                        type=tj,
                        preferred=c,
                        over=c2,
                        levels=[belief.first_level((c, tj)) + 1, belief.first_level((c2, tj)) + 1],
                    )
    return ConditionVerdict.ok()


# --- full belief closures ---------------------------------------------------


def conjunction(tests: Sequence[tuple[str, Test]]) -> Test:
    def test(model, t):
        for name, f in tests:
            v = f(model, t)
            if not v:
                return ConditionVerdict(
                    False, {"condition": name, **(v.witness or {})}, v.precondition_failed
                )
        return ConditionVerdict.ok()

    return test


def reachable(model: Model, t: str) -> list[str]:
    """``t`` and every type reachable from it through deemed-possible types, breadth first."""
    seen = [t]
    queue = deque([t])
    while queue:
        s = queue.popleft()
        for r in model.deemed_types(s):
            if r not in seen:
                seen.append(r)
                queue.append(r)
    return seen


def full_belief_verdict(model: Model, t: str, test: Test) -> ConditionVerdict:
    """Common full belief in ``test`` for ``t``, with the first offending reachable type."""
    for s in reachable(model, t):
        v = test(model, s)
        if not v:
            return ConditionVerdict.fail(type=s, detail=v.witness)
    return ConditionVerdict.ok()


def common_full_belief(model: Model, test: Test) -> list[str]:
    """Greatest set of types satisfying ``test`` and deeming possible only types in the set."""
    alive = [t for t in model.all_types() if test(model, t)]
    changed = True
    while changed:
        changed = False
        for t in list(alive):
            if any(s not in alive for s in model.deemed_types(t)):
                alive.remove(t)
                changed = True
    return alive


CO_CONDITIONS: dict[str, Test] = {
    "caution": is_cautious_co,
    "weak-caution": is_weakly_cautious_co,
    "primary-belief-rationality": primarily_believes_rationality,
    "respect-preferences": respects_preferences,
}


def bundle(names: Iterable[str] | str, registry: dict[str, Test] = CO_CONDITIONS) -> Test:
    if isinstance(names, str):
        names = [names]
    tests = []
    for name in names:
        if name not in registry:
            raise KeyError(f"unknown condition {name!r}; known: {sorted(registry)}")
        tests.append((name, registry[name]))
    return conjunction(tests)


def common_full_belief_co(model: CompleteModel, condition: Iterable[str] | str) -> list[str]:
    return common_full_belief(model, bundle(condition))


# --- assumption of rationality ----------------------------------------------


@dataclass(frozen=True)
class AssumptionTower:
    """Types expressing up to n-fold assumption, for n = 0, 1, ...

    ``levels[0]`` holds the cautious types. ``verdicts[n][t]`` explains why a
    type in ``levels[n-1]`` did or did not reach ``levels[n]``.
    """

    ladder: tuple[Restriction, ...]
    levels: tuple[tuple[str, ...], ...]
    verdicts: tuple[dict, ...]

    def stable(self) -> bool:
        n = len(self.levels) - 1
        return n >= 1 and n >= len(self.ladder) - 1 and self.levels[n] == self.levels[n - 1]


def assumption_clauses(
    model: Model,
    t: str,
    n: int,
    good: Sequence[str],
    previous: Iterable[str],
    qualifies: Callable[[str], bool],
    needs_optimal_in_b: bool,
) -> ConditionVerdict:
    """Clauses (a) and (b) of the n-fold assumption for one type.

    ``good`` are the opponent choices that must be supported, ``previous``
    the opponent types expressing up to (n-1)-fold assumption, and
    ``qualifies`` any extra requirement on a supporting type.
    """
    belief = model.belief(t)
    previous = set(previous)
    deemed = [s for s in model.deemed_types(t) if s in previous and qualifies(s)]
    optimal = {s: optimal_for(model, s) for s in deemed}
    for c in good:
        if not any(c in optimal[s] for s in deemed):
            return ConditionVerdict.fail(fold=n, clause="a", choice=c)
    pairs = belief.deemed()
    front = [
        pr for pr in pairs if pr[1] in optimal and (not needs_optimal_in_b or pr[0] in optimal[pr[1]])
    ]
    rest = [pr for pr in pairs if pr not in front]
    for a in front:
        for b in rest:
            if not infinitely_more_likely(belief, a, b):
                return ConditionVerdict.fail(
                    fold=n,
                    clause="b",
                    pair=list(a),
                    over=list(b),
                    levels=[belief.first_level(a) + 1, belief.first_level(b) + 1],
                )
    return ConditionVerdict.ok()


def build_tower(
    model: Model,
    game: Game,
    caution: Test,
    clause: Callable[[str, int, Restriction, tuple[str, ...]], ConditionVerdict],
    upto: int | None = None,
) -> AssumptionTower:
    ladder = tuple(iewds(game))
    levels = [tuple(t for t in model.all_types() if caution(model, t))]
    verdicts: list[dict] = [{}]
    n = 0
    while True:
        tower = AssumptionTower(ladder, tuple(levels), tuple(verdicts))
        if (upto is not None and n >= upto) or (upto is None and tower.stable()):
            return tower
        n += 1
        s = survivors(list(ladder), n)
        step = {t: clause(t, n, s, levels[-1]) for t in levels[-1]}
        verdicts.append(step)
        levels.append(tuple(t for t in levels[-1] if step[t]))


def rationality_tower(model: CompleteModel, upto: int | None = None) -> AssumptionTower:
    def clause(t, n, s, previous):
        q = opponent(model.player_of(t))
        return assumption_clauses(model, t, n, s[q], previous, lambda _: True, True)

    return build_tower(model, model.game, is_cautious_co, clause, upto)


def tower_verdict(model: Model, t: str, n: int, tower: AssumptionTower, caution: Test) -> ConditionVerdict:
    c = caution(model, t)
    if not c:
        return precondition_failed("caution", t, c)
    for k in range(1, n + 1):
        if t not in tower.levels[k]:
            return tower.verdicts[k][t]
    return ConditionVerdict.ok()


def assumes_rationality_nfold(model: CompleteModel, t: str, n: int) -> ConditionVerdict:
    """Whether ``t`` expresses k-fold assumption of rationality for every k <= n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return tower_verdict(model, t, n, rationality_tower(model, upto=n), is_cautious_co)


def common_assumption_rationality(model: CompleteModel) -> list[str]:
    return list(rationality_tower(model).levels[-1])
