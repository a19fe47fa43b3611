from fractions import Fraction

import pytest

from conftest import belief, game, model
from lexiepist.conditions_co import (
    assumes_rationality_nfold,
    bundle,
    common_assumption_rationality,
    common_full_belief_co,
    full_belief_verdict,
    is_cautious_co,
    rationality_tower,
    respects_preferences,
)
from lexiepist.conditions_in import (
    better_supported_nearer,
    common_assumption_prior_u,
    common_full_belief_in,
    good_choices,
    in_conditions,
    prior_u_tower,
    u_centered,
)
from lexiepist.model import CompleteModel, IncompleteModel, LexBelief
from lexiepist.transform import co2in, level_one_bump

F = Fraction
one = F(1)


def lex(*levels):
    return LexBelief.from_pairs(*levels)


def chain_model():
    """t1 is cautious but deems s2 possible, which is not."""
    g = game("game2x2.json")
    return CompleteModel(
        g,
        {"1": ["t1"], "2": ["t2", "s2"]},
        {
            "t1": lex({("D", "t2"): F(1, 2), ("D", "s2"): F(1, 2)}, {("C", "t2"): F(1, 2), ("C", "s2"): F(1, 2)}),
            "t2": lex({("A", "t1"): one}, {("B", "t1"): one}),
            "s2": lex({("A", "t1"): one}),
        },
    )


def test_common_full_belief_is_greatest_fixpoint():
    m = chain_model()
    assert is_cautious_co(m, "t1")
    assert not is_cautious_co(m, "s2")
    # t1 and t2 are cautious, but t1 deems s2 possible and t2 deems t1 possible
    assert common_full_belief_co(m, "caution") == []


def test_full_belief_names_first_offender():
    v = full_belief_verdict(chain_model(), "t1", bundle("caution"))
    assert not v
    assert v.witness["type"] == "s2"
    assert v.witness["detail"]["condition"] == "caution"


def test_failing_witness_replays():
    m = chain_model()
    v = is_cautious_co(m, "s2")
    c, t = v.witness["pair"]
    assert m.belief("s2").first_level((c, t)) is None


def test_respect_preferences_requires_caution():
    v = respects_preferences(chain_model(), "s2")
    assert not v and v.precondition_failed
    assert v.to_json()["precondition_failed"] is True


def test_respect_preferences_witness_names_levels():
    m = model("skew3_complete.json", "game3x3.json")
    v = respects_preferences(m, "t1")
    assert v.witness["preferred"] == "E" and v.witness["over"] == "F"
    lo, hi = v.witness["levels"]
    assert lo >= hi


def test_unknown_condition_is_a_key_error():
    with pytest.raises(KeyError):
        bundle("brave")


def test_car_witness_tower():
    m = model("car_witness.json", "game3x3.json")
    tower = rationality_tower(m)
    assert tower.stable()
    assert set(common_assumption_rationality(m)) == {"tB", "tC", "s"}
    assert assumes_rationality_nfold(m, "s", 2)
    with pytest.raises(ValueError):
        assumes_rationality_nfold(m, "s", 0)


def test_nfold_failure_reports_clause():
    m = model("lad3_complete.json", "game3x3.json")
    failing = [t for t in m.all_types() if not assumes_rationality_nfold(m, t, 2)]
    assert failing
    w = assumes_rationality_nfold(m, failing[0], 2).witness
    assert w.get("clause") in ("a", "b") or w.get("precondition") == "caution"


# --- incomplete side ---------------------------------------------------------


def preference_carriers(bump_b, bump_c):
    """Player 2 deems B and C possible, carried by two same-belief player-1 types."""
    g = game("ladder_game.json")
    beta = belief("beta_def.json")
    u1 = g.utilities["1"]
    vb = level_one_bump(u1, beta, ["B"], bump_b)
    vc = level_one_bump(u1, beta, ["C"], bump_c)
    first = lex({("D", "s"): one}, {("E", "s"): one}, {("F", "s"): one})
    m = IncompleteModel(
        g.form,
        {"1": ["θA", "θB", "θC"], "2": ["s"]},
        {"θA": u1, "θB": vb, "θC": vc, "s": g.utilities["2"]},
        {
            "θA": first,
            "θB": first,
            "θC": first,
            "s": lex({("A", "θA"): one}, {("B", "θB"): one}, {("C", "θC"): one}),
        },
    )
    return m, g


def test_better_choice_needs_nearer_carrier():
    m, g = preference_carriers(F(1, 4), F(1, 2))
    assert better_supported_nearer(m, "s", g)
    m, g = preference_carriers(F(1), F(1, 2))
    v = better_supported_nearer(m, "s", g)
    assert not v
    assert v.witness["better"] == ["B", "θB"] and v.witness["worse"] == ["C", "θC"]


def test_u_centered_orders_by_distance():
    m, g = preference_carriers(F(1, 4), F(1, 2))
    assert u_centered(m, "s", g)
    m, g = preference_carriers(F(1), F(1, 2))
    v = u_centered(m, "s", g)
    assert v.witness["nearer"] == ["C", "θC"]


def test_referenced_conditions_need_u():
    assert "u-centered" not in in_conditions(None)
    assert "u-centered" in in_conditions(game("game3x3.json"))


def test_good_choices_are_not_weakly_dominated():
    g = game("weakdom_game.json")
    m = co2in(CompleteModel(
        g,
        {"1": ["a"], "2": ["b"]},
        {"a": lex({(c, "b"): F(1, 3) for c in g.choices["2"]}),
         "b": lex({(c, "a"): F(1, 2) for c in g.choices["1"]})},
    ))
    assert "D" not in good_choices(m, "2", g)


def test_prior_u_tower_matches_on_transformed_car_witness():
    m = model("car_witness.json", "game3x3.json")
    g = game("game3x3.json")
    out = co2in(m)
    tower = prior_u_tower(out, g)
    assert tower.stable()
    car_in = set(common_assumption_prior_u(out, g))
    assert {"θ11(tB)", "θ11(tC)", "θ21(s)"} <= car_in


def test_incomplete_closure_on_fixture():
    m = model("lad3_incomplete.json", "game3x3.json")
    g = game("game3x3.json")
    assert "θ11" in common_full_belief_in(m, ("caution", "u-centered", "better-supported-nearer"), g)
