"""Executable property suites over generated models.

A property draws an instance through ``pick``. It returns None when the
instance misses the hypothesis, otherwise an :class:`Outcome`. The same
functions back the hypothesis test suites and the ``corpus`` command.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .conditions_co import (
    common_full_belief_co,
    full_belief_verdict,
    bundle,
    is_cautious_co,
    is_weakly_cautious,
    rationality_tower,
)
from .conditions_in import (
    better_supported_nearer,
    believes_rationality_in,
    common_full_belief_in,
    prior_u_tower,
)
from .generate import (
    Pick,
    has_distinct_beliefs,
    random_complete_model,
    random_game,
    random_incomplete_model,
    seeded,
    subset,
)
from .lexpref import optimal_choices, optimal_for
from .metric import ordinal_distance, sq_euclid
from .model import PLAYERS, LexBelief, isomorphism, opponent, to_document
from .transform import (
    cautious_extension,
    cautious_extension_model,
    class_map,
    co2in_detailed,
    in2co,
    rational_choices_preserved,
    utility_ladder,
)


@dataclass
class Outcome:
    holds: bool
    witness: dict = field(default_factory=dict)


Property = Callable[[Pick], "Outcome | None"]


def _choose(pick: Pick, items):
    return items[pick(0, len(items) - 1)] if items else None


def _result(failures: list[dict], instance) -> Outcome:
    if failures:
        return Outcome(False, {"failures": failures, "instance": to_document(instance)})
    return Outcome(True)


# --- complete -> incomplete -------------------------------------------------


def _co_to_in(mode: str, hypothesis: tuple[str, ...], conclusion: tuple[str, ...], distinct: bool = False):
    def prop(pick: Pick):
        model = random_complete_model(pick, mode=mode)
        if distinct and not has_distinct_beliefs(model):
            return None
        t = _choose(pick, common_full_belief_co(model, hypothesis))
        if t is None:
            return None
        built = co2in_detailed(model)
        good = set(common_full_belief_in(built.model, conclusion, model.game))
        bad = [th for th in built.types_of[t] if th not in good]
        return _result([{"type": t, "incomplete_types": bad}] if bad else [], model)

    return prop


# --- incomplete -> complete -------------------------------------------------


def _in_to_co(mode: str, hypothesis: tuple[str, ...], conclusion: tuple[str, ...]):
    def prop(pick: Pick):
        model, u = random_incomplete_model(pick, mode=mode)
        theta = _choose(pick, common_full_belief_in(model, hypothesis, u))
        if theta is None:
            return None
        quotient = in2co(model, u)
        t = class_map(model)[theta]
        v = full_belief_verdict(quotient, t, bundle(conclusion))
        return _result([] if v else [{"type": theta, "class": t, "witness": v.to_json()["witness"]}], model)

    return prop


# --- assumption towers ------------------------------------------------------


def _levels(tower, depth: int) -> list[set]:
    levels = [set(lv) for lv in tower.levels]
    return levels + [levels[-1]] * (depth + 1 - len(levels))


def lemma_4_9(pick: Pick):
    if pick(0, 1):
        model = random_complete_model(pick, mode="car")
        t = _choose(pick, common_full_belief_co(model, "caution"))
        if t is None:
            return None
        built = co2in_detailed(model)
        a_tower = rationality_tower(model)
        b_tower = prior_u_tower(built.model, model.game)
        depth = max(len(a_tower.levels), len(b_tower.levels))
        a, b = _levels(a_tower, depth), _levels(b_tower, depth)
        bad = [
            {"fold": n, "type": t, "incomplete_type": th}
            for n in range(1, depth)
            for th in built.types_of[t]
            if t in a[n] and th not in b[n]
        ]
        return _result(bad, model)
    model, u = random_incomplete_model(pick)
    theta = _choose(pick, common_full_belief_in(model, ("caution", "belief-rationality"), u))
    if theta is None:
        return None
    quotient = in2co(model, u)
    t = class_map(model)[theta]
    b_tower = prior_u_tower(model, u)
    a_tower = rationality_tower(quotient)
    depth = max(len(a_tower.levels), len(b_tower.levels))
    a, b = _levels(a_tower, depth), _levels(b_tower, depth)
    bad = [{"fold": n, "type": theta, "class": t} for n in range(1, depth) if theta in b[n] and t not in a[n]]
    return _result(bad, model)


# --- weak caution and doppelgangers -----------------------------------------


def lemma_5_1(pick: Pick):
    model = random_complete_model(pick, mode="weak")
    t = _choose(pick, common_full_belief_co(model, ("weak-caution", "primary-belief-rationality")))
    if t is None:
        return None
    extended = cautious_extension_model(model)
    v = full_belief_verdict(extended, t, bundle(("caution", "primary-belief-rationality")))
    bad = []
    if not v:
        bad.append({"type": t, "witness": v.to_json()["witness"]})
    if optimal_for(extended, t) != optimal_for(model, t):
        bad.append({"type": t, "before": optimal_for(model, t), "after": optimal_for(extended, t)})
    return _result(bad, model)


def lemma_6_1(pick: Pick):
    model = random_complete_model(pick, mode="weak")
    t = _choose(pick, [s for s in model.all_types() if is_weakly_cautious(model, s)])
    if t is None:
        return None
    extended = cautious_extension(model, t)
    bad = []
    if not is_cautious_co(extended, t):
        bad.append({"type": t, "not_cautious": is_cautious_co(extended, t).to_json()["witness"]})
    if not rational_choices_preserved(model, extended, t):
        bad.append({"type": t, "before": optimal_for(model, t), "after": optimal_for(extended, t)})
    return _result(bad, model)


# --- constructions ----------------------------------------------------------


def round_trip(pick: Pick):
    model = random_complete_model(pick, mode="free")
    if not has_distinct_beliefs(model):
        return None
    back = in2co(co2in_detailed(model).model, model.game)
    return _result([] if isomorphism(back, model) is not None else [{"round_trip": to_document(back)}], model)


def observations(pick: Pick):
    model = random_complete_model(pick, mode=("free", "cautious", "weak")[pick(0, 2)])
    built = co2in_detailed(model)
    out, u = built.model, model.game
    bad = []
    for t, thetas in built.types_of.items():
        if any(not out.belief(th).same_as(out.belief(thetas[0])) for th in thetas):
            bad.append({"observation": "same-source beliefs", "type": t})
    for th in out.all_types():
        if not believes_rationality_in(out, th):
            bad.append({"observation": "belief in rationality", "type": th})
        if not better_supported_nearer(out, th, u):
            bad.append({"observation": "better supported nearer", "type": th})
    return _result(bad, model)


def _random_belief(pick: Pick, opp) -> LexBelief:
    """A belief about opponent choices only (one placeholder type)."""
    levels = []
    for _ in range(pick(1, 3)):
        support = subset(pick, list(opp))
        weights = [pick(1, 3) for _ in support]
        levels.append({(c, "_"): Fraction(w, sum(weights)) for c, w in zip(support, weights)})
    return LexBelief.from_pairs(*levels)


def _ladder_instance(pick: Pick):
    game = random_game(pick)
    p = PLAYERS[pick(0, 1)]
    u = game.utilities[p]
    belief = _random_belief(pick, game.choices[opponent(p)])
    return u, belief, utility_ladder(u, belief)


def ladder_properties(pick: Pick):
    u, belief, ladder = _ladder_instance(pick)
    bad = []
    if ladder.rungs[0] != u:
        bad.append({"rung_one": "differs from u"})
    for r, (cls, rung) in enumerate(zip(ladder.partition.classes, ladder.rungs), start=1):
        if not set(cls) <= set(optimal_choices(belief, rung)):
            bad.append({"rung": r, "class": list(cls), "optimal": optimal_choices(belief, rung)})
    d = [sq_euclid(v, u) for v in ladder.rungs]
    if any(x >= y for x, y in zip(d, d[1:])):
        bad.append({"distances": [str(x) for x in d]})
    if bad:
        bad.append({"utility": [[str(x) for x in row] for row in u.values], "belief": to_document(belief)["levels"]})
    return Outcome(not bad, {"failures": bad} if bad else {})


def ordinal_ladder(pick: Pick):
    u, belief, ladder = _ladder_instance(pick)
    d = [ordinal_distance(belief, v, u) for v in ladder.rungs]
    if any(x >= y for x, y in zip(d, d[1:])):
        return Outcome(
            False,
            {"distances": d, "utility": [[str(x) for x in row] for row in u.values],
             "belief": to_document(belief)["levels"]},
        )
    return Outcome(True)


PROPERTIES: dict[str, Property] = {
    "lemma3.1": ladder_properties,
    "lemma3.1-ordinal": ordinal_ladder,
    "obs4.1-4.3": observations,
    "roundtrip": round_trip,
    "lemma4.1": _co_to_in("cautious", ("caution",), ("caution",)),
    "lemma4.2": _co_to_in("pbr", ("primary-belief-rationality",), ("primary-nearest-u",)),
    "lemma4.3": _in_to_co("cautious", ("caution",), ("caution",)),
    "lemma4.4": _in_to_co(
        "cautious", ("caution", "primary-nearest-u", "best-supported-nearest"), ("primary-belief-rationality",)
    ),
    "lemma4.5": _co_to_in("respect", ("caution", "respect-preferences"), ("u-centered",), distinct=True),
    "lemma4.6": _in_to_co(
        "cautious", ("caution", "u-centered", "better-supported-nearer"), ("caution", "respect-preferences")
    ),
    "lemma4.7": _co_to_in("pbr", ("primary-belief-rationality",), ("primary-u",)),
    "lemma4.8": _in_to_co("cautious", ("belief-rationality", "primary-u"), ("primary-belief-rationality",)),
    "lemma4.9": lemma_4_9,
    "lemma5.1": lemma_5_1,
    "lemma5.2": _in_to_co("weak", ("weak-caution",), ("weak-caution",)),
    "lemma6.1": lemma_6_1,
}


@dataclass
class SuiteRun:
    name: str
    satisfied: int
    attempts: int
    failures: list[dict]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "satisfied": self.satisfied,
            "attempts": self.attempts,
            "failures": self.failures[:1],
            "failure_count": len(self.failures),
            "passed": self.passed,
        }


def run_suite(name: str, samples: int = 200, seed: int = 0, max_attempts: int | None = None) -> SuiteRun:
    """Draw seeded instances until ``samples`` of them satisfy the hypothesis."""
    prop = PROPERTIES[name]
    pick = seeded(seed)
    limit = max_attempts or samples * 50
    satisfied = attempts = 0
    failures = []
    while satisfied < samples and attempts < limit:
        attempts += 1
        out = prop(pick)
        if out is None:
            continue
        satisfied += 1
        if not out.holds:
            failures.append(out.witness)
    return SuiteRun(name, satisfied, attempts, failures)
