from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import belief, game, model, tape_pick
from lexiepist.generate import random_game
from lexiepist.lexpref import (
    Preference,
    compare_vectors,
    infinitely_more_likely,
    lex_utility,
    optimal_choices,
    optimal_for,
    prefers,
)
from lexiepist.metric import ordinal_distance, sq_euclid
from lexiepist.model import LexBelief

F = Fraction


def test_lex_utility_per_level():
    u1 = game("ladder_game.json").utilities["1"]
    beta = belief("beta_def.json")
    assert lex_utility("A", beta, u1) == (1, 1, 1)
    assert lex_utility("B", beta, u1) == (1, 1, 0)
    assert lex_utility("C", beta, u1) == (1, 0, 1)
    assert optimal_choices(beta, u1) == ["A"]
    assert prefers(beta, u1, "B", "C") is Preference.PREFERS


def test_later_levels_break_ties_only():
    assert compare_vectors((F(1), F(0)), (F(1), F(5))) is Preference.DISPREFERS
    assert compare_vectors((F(2), F(0)), (F(1), F(5))) is Preference.PREFERS
    assert compare_vectors((F(1),), (F(1),)) is Preference.INDIFFERENT
    with pytest.raises(ValueError):
        compare_vectors((F(1),), (F(1), F(1)))


def test_belief_on_foreign_choice_rejected():
    u1 = game("ladder_game.json").utilities["1"]
    with pytest.raises(ValueError):
        lex_utility("A", LexBelief.from_pairs({("A", "_"): F(1)}), u1)


def test_infinitely_more_likely_treats_absent_pairs_as_last():
    b = LexBelief.from_pairs({("D", "t"): F(1)}, {("E", "t"): F(1)})
    assert infinitely_more_likely(b, ("D", "t"), ("E", "t"))
    assert infinitely_more_likely(b, ("E", "t"), ("F", "t"))
    assert not infinitely_more_likely(b, ("F", "t"), ("D", "t"))
    assert not infinitely_more_likely(b, ("D", "t"), ("D", "t"))


def test_optimal_for_model_types():
    m = model("skew3_incomplete.json", "game3x3.json")
    assert optimal_for(m, "θ11") == ["B"]


def test_sq_euclid_on_fixtures():
    u = game("ladder_game.json").utilities["1"]
    v12 = game("ladder_v_near.json").utilities["1"]
    v13 = game("ladder_v_far.json").utilities["1"]
    assert sq_euclid(v12, u) == 1
    assert sq_euclid(v13, u) == 1 + 4
    assert sq_euclid(u, u) == 0


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        sq_euclid(game("game2x2.json").utilities["1"], game("game3x3.json").utilities["1"])


def test_ordinal_counts_strict_vs_indifferent_as_different():
    u = game("ladder_game.json").utilities["1"]
    beta = belief("beta_def.json")
    # level-1 only sees D: A, B, C all tie, against the strict ranking under u
    flat = u.replace_cells({("A", "E"): F(0), ("A", "F"): F(0), ("B", "E"): F(0), ("C", "F"): F(0)})
    assert ordinal_distance(beta, flat, u) == 3


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_metric_axioms(data):
    pick = tape_pick(data)
    g, h = random_game(pick), random_game(pick)
    u, v = g.utilities["1"], h.utilities["1"]
    if u.own != v.own or u.opp != v.opp:
        return
    assert sq_euclid(u, v) == sq_euclid(v, u) >= 0
    assert (sq_euclid(u, v) == 0) == (u == v)
    beta = LexBelief.from_pairs({(c, "_"): F(1, len(u.opp)) for c in u.opp})
    assert ordinal_distance(beta, u, u) == 0
    assert ordinal_distance(beta, u, v) == ordinal_distance(beta, v, u)
