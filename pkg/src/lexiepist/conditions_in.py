"""Conditions on types of an incomplete-information model.

Reference utilities ``u`` are passed as a :class:`Game` on the model's game
form. Where a definition quantifies over auxiliary types (same belief,
different utility) the quantifier ranges over the model's own types that
share the belief.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .conditions_co import (
    AssumptionTower,
    Test,
    assumption_clauses,
    build_tower,
    bundle,
    common_full_belief,
    is_weakly_cautious,
    precondition_failed,
    tower_verdict,
)
from .lexpref import Preference, compare_vectors, infinitely_more_likely, lex_utility, optimal_choices, optimal_for
from .metric import sq_euclid
from .model import ConditionVerdict, Game, IncompleteModel, opponent
from .solvers import optimal_for_some_cautious_belief


def _check_reference(model: IncompleteModel, u: Game) -> None:
    if dict(u.choices) != dict(model.choices):
        raise ValueError("reference utilities are defined on a different game form")


def _distance(model: IncompleteModel, s: str, u: Game) -> Fraction:
    return sq_euclid(model.utility(s), u.utilities[model.player_of(s)])


def _same_belief(model: IncompleteModel, a: str, b: str) -> bool:
    return model.belief(a).same_as(model.belief(b))


def _deemed_pairs_same_belief(model: IncompleteModel, t: str):
    """All ordered pairs of deemed pairs whose types share a belief."""
    pairs = model.belief(t).deemed()
    for a in pairs:
        for b in pairs:
            if a != b and _same_belief(model, a[1], b[1]):
                yield a, b


# --- caution ----------------------------------------------------------------


def is_cautious_in(model: IncompleteModel, t: str) -> ConditionVerdict:
    belief = model.belief(t)
    q = opponent(model.player_of(t))
    deemed_pairs = belief.deemed()
    for tj in model.deemed_types(t):
        for c in model.choices[q]:
            if not any(c == ci and _same_belief(model, tj, s) for ci, s in deemed_pairs):
                return ConditionVerdict.fail(choice=c, type=tj)
    return ConditionVerdict.ok()


is_weakly_cautious_in = is_weakly_cautious


# --- first group ------------------------------------------------------------


def primary_belief_nearest_u(model: IncompleteModel, t: str, u: Game) -> ConditionVerdict:
    _check_reference(model, u)
    deemed = model.deemed_types(t)
    for c, tj in model.belief(t).support(0):
        d = _distance(model, tj, u)
        for s in deemed:
            if _same_belief(model, s, tj) and _distance(model, s, u) < d:
                return ConditionVerdict.fail(
                    pair=[c, tj], level=1, distance=d, nearer_type=s, nearer_distance=_distance(model, s, u)
                )
    return ConditionVerdict.ok()


def u_centered(model: IncompleteModel, t: str, u: Game) -> ConditionVerdict:
    _check_reference(model, u)
    belief = model.belief(t)
    for a, b in _deemed_pairs_same_belief(model, t):
        da, db = _distance(model, a[1], u), _distance(model, b[1], u)
        if da < db and not infinitely_more_likely(belief, a, b):
            return ConditionVerdict.fail(
                nearer=list(a),
                farther=list(b),
                distances=[da, db],
                levels=[belief.first_level(a) + 1, belief.first_level(b) + 1],
            )
    return ConditionVerdict.ok()


def best_supported_nearest(model: IncompleteModel, t: str, u: Game) -> ConditionVerdict:
    _check_reference(model, u)
    for a, b in _deemed_pairs_same_belief(model, t):
        ref = u.utilities[model.player_of(a[1])]
        best = optimal_choices(model.belief(a[1]), ref)
        if a[0] in best and b[0] not in best:
            da, db = _distance(model, a[1], u), _distance(model, b[1], u)
            if not da < db:
                return ConditionVerdict.fail(best=list(a), other=list(b), distances=[da, db])
    return ConditionVerdict.ok()


def better_supported_nearer(model: IncompleteModel, t: str, u: Game) -> ConditionVerdict:
    _check_reference(model, u)
    for a, b in _deemed_pairs_same_belief(model, t):
        ref = u.utilities[model.player_of(a[1])]
        belief = model.belief(a[1])
        va, vb = lex_utility(a[0], belief, ref), lex_utility(b[0], belief, ref)
        if compare_vectors(va, vb) is Preference.PREFERS:
            da, db = _distance(model, a[1], u), _distance(model, b[1], u)
            if not da < db:
                return ConditionVerdict.fail(
                    better=list(a), worse=list(b), vectors=[list(va), list(vb)], distances=[da, db]
                )
    return ConditionVerdict.ok()


# --- second group -----------------------------------------------------------


def believes_rationality_in(model: IncompleteModel, t: str) -> ConditionVerdict:
    for c, tj in model.belief(t).deemed():
        best = optimal_for(model, tj)
        if c not in best:
            return ConditionVerdict.fail(pair=[c, tj], optimal=best)
    return ConditionVerdict.ok()


def _has_u(model: IncompleteModel, s: str, u: Game) -> bool:
    return model.utility(s) == u.utilities[model.player_of(s)]


def primary_belief_u(model: IncompleteModel, t: str, u: Game) -> ConditionVerdict:
    _check_reference(model, u)
    for c, tj in model.belief(t).support(0):
        if not _has_u(model, tj, u):
            return ConditionVerdict.fail(pair=[c, tj], level=1)
    return ConditionVerdict.ok()


def prior_assumes_u(model: IncompleteModel, t: str, u: Game) -> ConditionVerdict:
    _check_reference(model, u)
    belief = model.belief(t)
    pairs = belief.deemed()
    qualified = {s for s in model.deemed_types(t) if _has_u(model, s, u) and is_cautious_in(model, s)}
    front = [pr for pr in pairs if pr[1] in qualified]
    rest = [pr for pr in pairs if pr[1] not in qualified]
    for a in front:
        for b in rest:
            if not infinitely_more_likely(belief, a, b):
                return ConditionVerdict.fail(
                    pair=list(a), over=list(b), levels=[belief.first_level(a) + 1, belief.first_level(b) + 1]
                )
    return ConditionVerdict.ok()


def good_choices(model: IncompleteModel, player: str, u: Game) -> list[str]:
    """Choices optimal for some cautious belief under the reference utility."""
    return [c for c in model.choices[player] if optimal_for_some_cautious_belief(u, player, c)]


def good_choice_supported(model: IncompleteModel, t: str, u: Game) -> ConditionVerdict:
    _check_reference(model, u)
    caution = is_cautious_in(model, t)
    if not caution:
        return precondition_failed("caution", t, caution)
    q = opponent(model.player_of(t))
    supporters = [
        s for s in model.deemed_types(t) if _has_u(model, s, u) and is_cautious_in(model, s)
    ]
    for c in good_choices(model, q, u):
        if not any(c in optimal_for(model, s) for s in supporters):
            return ConditionVerdict.fail(choice=c)
    return ConditionVerdict.ok()


def prior_u_tower(model: IncompleteModel, u: Game, upto: int | None = None) -> AssumptionTower:
    _check_reference(model, u)

    def clause(t, n, s, previous):
        q = opponent(model.player_of(t))
        return assumption_clauses(
            model, t, n, s[q], previous, lambda x: _has_u(model, x, u), needs_optimal_in_b=False
        )

    return build_tower(model, u, is_cautious_in, clause, upto)


def assumes_prior_u_good_nfold(model: IncompleteModel, t: str, u: Game, n: int) -> ConditionVerdict:
    """Whether ``t`` expresses k-fold assumption of prior ``u`` and good-choice support for every k <= n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return tower_verdict(model, t, n, prior_u_tower(model, u, upto=n), is_cautious_in)


def common_assumption_prior_u(model: IncompleteModel, u: Game) -> list[str]:
    return list(prior_u_tower(model, u).levels[-1])


# --- registry and closures --------------------------------------------------


def in_conditions(u: Game | None) -> dict[str, Test]:
    """Condition tag -> test, with reference utilities bound where needed."""
    conditions: dict[str, Test] = {
        "caution": is_cautious_in,
        "weak-caution": is_weakly_cautious_in,
        "belief-rationality": believes_rationality_in,
    }
    if u is not None:
        for name, f in REFERENCED.items():
            conditions[name] = (lambda f: lambda m, t: f(m, t, u))(f)
    return conditions


REFERENCED = {
    "primary-nearest-u": primary_belief_nearest_u,
    "u-centered": u_centered,
    "best-supported-nearest": best_supported_nearest,
    "better-supported-nearer": better_supported_nearer,
    "primary-u": primary_belief_u,
    "prior-assume-u": prior_assumes_u,
    "good-choice-supported": good_choice_supported,
}


def common_full_belief_in(
    model: IncompleteModel, condition: Iterable[str] | str, u: Game | None = None
) -> list[str]:
    return common_full_belief(model, bundle(condition, in_conditions(u)))
