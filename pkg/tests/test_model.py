import json
from fractions import Fraction

import pytest

from conftest import fixture_text, game, model
from lexiepist.model import (
    DocumentSyntaxError,
    Game,
    LexBelief,
    ModelError,
    ValidationError,
    isomorphism,
    parse_belief,
    parse_game,
    parse_model,
    serialize,
    structurally_equal,
    to_fraction,
)


def test_fractions_parse_exactly():
    assert to_fraction("7/3") == Fraction(7, 3)
    assert to_fraction(-2) == Fraction(-2)
    assert to_fraction(" 1/2 ") == Fraction(1, 2)


@pytest.mark.parametrize("bad", [0.5, True, "x", "1/0", None])
def test_fractions_reject_non_rationals(bad):
    with pytest.raises(DocumentSyntaxError):
        to_fraction(bad)


def test_game_round_trip_is_identity():
    g = game("game3x3.json")
    assert parse_game(serialize(g)) == g


def test_model_round_trip_is_structural_identity():
    g = game("game3x3.json")
    m = model("skew3_incomplete.json", "game3x3.json")
    again = parse_model(serialize(m), g)
    assert structurally_equal(again, m)
    assert isomorphism(again, m) == {t: t for t in m.all_types()}


def test_invalid_json_names_a_location():
    with pytest.raises(DocumentSyntaxError) as err:
        parse_game("{not json")
    assert "line 1" in str(err.value)


def test_duplicate_choice_labels_rejected():
    doc = json.loads(fixture_text("game2x2.json"))
    doc["choices"]["1"] = ["A", "A"]
    with pytest.raises(ValidationError):
        parse_game(doc)


def test_ragged_matrix_rejected_with_path():
    doc = json.loads(fixture_text("game2x2.json"))
    doc["utilities"]["2"][1] = ["1"]
    with pytest.raises(ValidationError) as err:
        parse_game(doc)
    assert err.value.location == "$.utilities.2[1]"


def test_level_must_sum_to_one():
    with pytest.raises(ValidationError):
        parse_belief([[{"choice": "D", "prob": "1/2"}]])


def test_repeated_pair_counts_from_its_first_level():
    b = parse_belief([[{"choice": "D", "prob": "1"}], [{"choice": "D", "prob": "1/2"}, {"choice": "E", "prob": "1/2"}]])
    assert b.first_level(("D", "_")) == 0
    assert b.first_level(("E", "_")) == 1


def test_belief_about_undeclared_type_rejected():
    doc = json.loads(fixture_text("pair_complete.json"))
    doc["beliefs"]["t1"][0][0]["type"] = "ghost"
    with pytest.raises(ModelError):
        parse_model(doc, game("game2x2.json"))


def test_incomplete_type_needs_utility():
    doc = json.loads(fixture_text("pair_incomplete.json"))
    doc["utilities"].popitem()
    with pytest.raises(ValidationError):
        parse_model(doc, game("game2x2.json"))


def test_complete_model_needs_utilities():
    g = game("game2x2.json")
    with pytest.raises(ValidationError):
        parse_model(fixture_text("pair_complete.json"), g.form)


def test_first_level_and_deemed_pairs():
    b = LexBelief.from_pairs({("D", "t"): Fraction(1)}, {("E", "t"): Fraction(1, 2), ("F", "t"): Fraction(1, 2)})
    assert b.first_level(("D", "t")) == 0
    assert b.first_level(("F", "t")) == 1
    assert b.first_level(("D", "s")) is None
    assert sorted(b.deemed()) == [("D", "t"), ("E", "t"), ("F", "t")]


def test_same_as_ignores_order_within_level():
    a = LexBelief.from_pairs({("D", "t"): Fraction(1, 3), ("E", "t"): Fraction(2, 3)})
    b = LexBelief.from_pairs({("E", "t"): Fraction(2, 3), ("D", "t"): Fraction(1, 3)})
    assert a.same_as(b)
    assert not a.same_as(LexBelief.from_pairs({("D", "t"): Fraction(1)}, {("E", "t"): Fraction(1)}))


def test_isomorphism_finds_renaming_and_rejects_different_models():
    g = game("game2x2.json")
    m = model("pair_complete.json", "game2x2.json")
    text = serialize(m).replace("t1", "x1").replace("t2", "x2")
    renamed = parse_model(text, g)
    assert isomorphism(m, renamed) == {"t1": "x1", "t2": "x2"}
    doc = json.loads(serialize(m))
    doc["beliefs"]["t1"].reverse()
    assert isomorphism(m, parse_model(doc, g)) is None


def test_game_from_rows_matches_parsed_game():
    g = Game.from_rows("AB", "CD", [[1, 0], [0, 0]], [[0, 0], [1, 1]])
    assert g == game("game2x2.json")


MUTATIONS = {
    "duplicate-choice": lambda d: d["choices"]["1"].append(d["choices"]["1"][0]),
    "drop-row": lambda d: d["utilities"]["1"].pop(),
    "float-entry": lambda d: d["utilities"]["2"][0].__setitem__(0, 0.5),
    "prob-sum": lambda d: d["beliefs"]["a"][0][0].__setitem__("prob", "1"),
    "unknown-type": lambda d: d["beliefs"]["b1"][0][0].__setitem__("type", "zz"),
    "unknown-choice": lambda d: d["beliefs"]["b1"][0][0].__setitem__("choice", "Q"),
    "empty-level": lambda d: d["beliefs"]["b2"].append([]),
    "no-levels": lambda d: d["beliefs"].__setitem__("b2", []),
    "flavor": lambda d: d.__setitem__("flavor", "partial"),
    "negative-prob": lambda d: d["beliefs"]["a"][2][0].__setitem__("prob", "-1"),
    "missing-belief": lambda d: d["beliefs"].pop("b1"),
    "extra-player": lambda d: d["choices"].__setitem__("3", ["X"]),
}


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_every_single_field_mutation_is_rejected(name):
    g_doc = json.loads(fixture_text("game3x3.json"))
    m_doc = json.loads(fixture_text("weak_one_missing.json"))
    parse_model(m_doc, parse_game(g_doc))
    target = g_doc if name in ("duplicate-choice", "drop-row", "float-entry", "extra-player") else m_doc
    MUTATIONS[name](target)
    with pytest.raises(ModelError):
        parse_model(m_doc, parse_game(g_doc))
