from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import bruteforce
from conftest import game, tape_pick
from lexiepist.generate import random_game
from lexiepist.model import Game
from lexiepist.simplex import OPTIMAL, INFEASIBLE, UNBOUNDED, maximize
from lexiepist.solvers import (
    Restriction,
    dekel_fudenberg,
    dekel_fudenberg_trace,
    iewds,
    optimal_for_some_cautious_belief,
    strictly_dominated,
    survivors,
    weakly_dominated,
)

F = Fraction


def test_simplex_small_lp():
    # max x + y, x + 2y + s = 4, 3x + y + s' = 6
    res = maximize([F(1), F(1), F(0), F(0)], [[F(1), F(2), F(1), F(0)], [F(3), F(1), F(0), F(1)]], [F(4), F(6)])
    assert res.status == OPTIMAL
    assert res.value == F(14, 5)
    assert res.x[:2] == (F(8, 5), F(6, 5))


def test_simplex_unbounded_and_infeasible():
    assert maximize([F(1), F(0)], [[F(1), F(-1)]], [F(1)]).status == UNBOUNDED
    assert maximize([F(1)], [[F(1)]], [F(-1)]).status == INFEASIBLE


def test_simplex_redundant_rows_and_degeneracy():
    # the second row repeats the first; the optimum sits on a degenerate vertex
    res = maximize([F(1), F(1)], [[F(1), F(1)], [F(2), F(2)]], [F(1), F(2)])
    assert res.status == OPTIMAL and res.value == 1


def test_solver_oracles():
    g7, g9 = game("game3x3.json"), game("game2x2.json")
    assert dekel_fudenberg(g7) == Restriction({"1": ["B", "C"], "2": ["D"]})
    assert iewds(g7)[-1] == Restriction({"1": ["B", "C"], "2": ["D"]})
    assert dekel_fudenberg(g9) == Restriction({"1": ["A"], "2": ["D"]})


def test_weak_certificate_verifies():
    g = game("weakdom_game.json")
    cert = weakly_dominated(g, "2", "D")
    assert cert is not None
    assert sum(cert.mixture.values()) == 1
    assert cert.verify(g, Restriction.full(g))


def test_mixed_strategy_needed_for_strict_dominance():
    g = Game.from_rows("ABC", "DE", [[3, 0], [0, 3], [1, 1]], [[0, 0, 0], [0, 0, 0]])
    assert strictly_dominated(g, "1", "C") is not None
    assert strictly_dominated(g, "1", "A") is None


def test_choice_outside_restriction_rejected():
    g = game("game3x3.json")
    with pytest.raises(ValueError):
        weakly_dominated(g, "1", "A", Restriction({"1": ["B", "C"], "2": ["D"]}))


def test_cautious_optimality_matches_weak_dominance():
    g = game("weakdom_game.json")
    for p in g.choices:
        for c in g.choices[p]:
            assert optimal_for_some_cautious_belief(g, p, c) == (weakly_dominated(g, p, c) is None)


def test_dekel_fudenberg_trace_starts_with_one_weak_round():
    g = game("iewds_game.json")
    trace = dekel_fudenberg_trace(g)
    assert trace[0] == Restriction.full(g)
    assert trace[-1] == dekel_fudenberg(g)
    ladder = iewds(g)
    assert survivors(ladder, 1) == ladder[min(1, len(ladder) - 1)]


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_dominance_agrees_with_vertex_enumeration(data):
    pick = tape_pick(data)
    g = random_game(pick)
    for p in g.choices:
        for c in g.choices[p]:
            assert (weakly_dominated(g, p, c) is not None) == bruteforce.weakly_dominated(g, p, c)
            assert (strictly_dominated(g, p, c) is not None) == bruteforce.strictly_dominated(g, p, c)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_elimination_chain(data):
    g = random_game(tape_pick(data))
    ladder = iewds(g)
    assert all(b.issubset(a) for a, b in zip(ladder, ladder[1:]))
    assert ladder[-1].issubset(dekel_fudenberg(g))
    fix = ladder[-1]
    assert all(weakly_dominated(g, p, c, fix) is None for p in g.choices for c in fix[p])
    assert Restriction(bruteforce.iterate(g, bruteforce.weakly_dominated)) == fix
