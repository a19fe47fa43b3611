"""Games, lexicographic beliefs and epistemic models.

Every number is a :class:`fractions.Fraction`. Objects are frozen after
construction and validate their invariants eagerly, so a model that exists
is a well-formed model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Mapping, Union

PLAYERS = ("1", "2")

Pair = tuple[str, str]  # (opponent choice, opponent type)


def opponent(player: str) -> str:
    if player not in PLAYERS:
        raise ValueError(f"unknown player {player!r}")
    return "2" if player == "1" else "1"


class ModelError(ValueError):
    """Base class for malformed games, beliefs and models."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.detail = message


class DocumentSyntaxError(ModelError):
    """The document is not JSON or does not have the expected shape."""


class ValidationError(ModelError):
    """The document is well-shaped but breaks a declared invariant."""


def to_fraction(value: Any, location: str = "$") -> Fraction:
    """Parse an exact rational from an int or a ``"p/q"`` string."""
    if isinstance(value, bool):
        raise DocumentSyntaxError("booleans are not numbers", location)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentSyntaxError(f"not a rational: {value!r}", location) from exc
    if isinstance(value, float):
        raise DocumentSyntaxError(
            f"floating point number {value!r}; write it as an integer or a 'p/q' string",
            location,
        )
    raise DocumentSyntaxError(f"expected a rational, got {type(value).__name__}", location)


def fraction_str(value: Fraction) -> str:
    """Canonical text form: ``"3"`` or ``"-1/2"``."""
    return str(value)


@dataclass(frozen=True)
class UtilityFunction:
    """A utility matrix for one player, rows are own choices, columns the opponent's."""

    owner: str
    own: tuple[str, ...]
    opp: tuple[str, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.owner not in PLAYERS:
            raise ValidationError(f"unknown owner {self.owner!r}")
        if len(self.values) != len(self.own):
            raise ValidationError(
                f"utility for player {self.owner} has {len(self.values)} rows, expected {len(self.own)}"
            )
        for r, row in enumerate(self.values):
            if len(row) != len(self.opp):
                raise ValidationError(
                    f"row {r} has {len(row)} entries, expected {len(self.opp)}",
                    f"$[{r}]",
                )
            for x in row:
                if not isinstance(x, Fraction):
                    raise ValidationError("utility entries must be Fractions", f"$[{r}]")

    @classmethod
    def from_rows(cls, owner: str, own: Iterable[str], opp: Iterable[str], rows) -> UtilityFunction:
        return cls(
            owner,
            tuple(own),
            tuple(opp),
            tuple(tuple(Fraction(x) for x in row) for row in rows),
        )

    @cached_property
    def _own_index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.own)}

    @cached_property
    def _opp_index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.opp)}

    def __call__(self, own_choice: str, opp_choice: str) -> Fraction:
        try:
            return self.values[self._own_index[own_choice]][self._opp_index[opp_choice]]
        except KeyError as exc:
            raise ValueError(
                f"({own_choice!r}, {opp_choice!r}) is not a cell of player {self.owner}'s utility"
            ) from exc

    def row(self, own_choice: str) -> tuple[Fraction, ...]:
        return self.values[self._own_index[own_choice]]

    def replace_cells(self, updates: Mapping[tuple[str, str], Fraction]) -> UtilityFunction:
        rows = [list(r) for r in self.values]
        for (c, cj), x in updates.items():
            rows[self._own_index[c]][self._opp_index[cj]] = Fraction(x)
        return UtilityFunction(self.owner, self.own, self.opp, tuple(tuple(r) for r in rows))

    def cells(self):
        for c, row in zip(self.own, self.values):
            for cj, x in zip(self.opp, row):
                yield (c, cj), x


def _check_choices(choices: Mapping[str, tuple[str, ...]]) -> None:
    if set(choices) != set(PLAYERS):
        raise ValidationError(f"choices must be given for players {PLAYERS}", "$.choices")
    for p in PLAYERS:
        labels = choices[p]
        loc = f"$.choices.{p}"
        if not labels:
            raise ValidationError("choice list is empty", loc)
        seen = set()
        for label in labels:
            if not isinstance(label, str) or not label:
                raise ValidationError(f"choice label {label!r} is not a nonempty string", loc)
            if label in seen:
                raise ValidationError(f"duplicate choice label {label!r}", loc)
            seen.add(label)


@dataclass(frozen=True)
class GameForm:
    """Choice sets of the two players, without payoffs."""

    choices: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        object.__setattr__(self, "choices", {p: tuple(self.choices[p]) for p in self.choices})
        _check_choices(self.choices)

    @property
    def form(self) -> GameForm:
        return self


@dataclass(frozen=True)
class Game:
    """A finite two-player static game with exact payoffs."""

    choices: Mapping[str, tuple[str, ...]]
    utilities: Mapping[str, UtilityFunction]

    def __post_init__(self):
        object.__setattr__(self, "choices", {p: tuple(self.choices[p]) for p in self.choices})
        _check_choices(self.choices)
        if set(self.utilities) != set(PLAYERS):
            raise ValidationError("utilities must be given for both players", "$.utilities")
        for p in PLAYERS:
            u = self.utilities[p]
            if u.owner != p or u.own != self.choices[p] or u.opp != self.choices[opponent(p)]:
                raise ValidationError(
                    f"utility of player {p} is not indexed by (own choice, opponent choice)",
                    f"$.utilities.{p}",
                )
        object.__setattr__(self, "utilities", dict(self.utilities))

    def __hash__(self) -> int:
        return hash(tuple((p, self.choices[p], self.utilities[p].values) for p in PLAYERS))

    @classmethod
    def from_rows(cls, c1: Iterable[str], c2: Iterable[str], u1, u2) -> Game:
        """Build from row-major matrices ``u1[own][opp]`` and ``u2[own][opp]``."""
        c1, c2 = tuple(c1), tuple(c2)
        return cls(
            {"1": c1, "2": c2},
            {
                "1": UtilityFunction.from_rows("1", c1, c2, u1),
                "2": UtilityFunction.from_rows("2", c2, c1, u2),
            },
        )

    @classmethod
    def from_bimatrix(cls, c1: Iterable[str], c2: Iterable[str], cells) -> Game:
        """Build from the usual ``cells[row][col] = (u1, u2)`` layout with player 1 on rows."""
        c1, c2 = tuple(c1), tuple(c2)
        u1 = [[cells[r][k][0] for k in range(len(c2))] for r in range(len(c1))]
        u2 = [[cells[r][k][1] for r in range(len(c1))] for k in range(len(c2))]
        return cls.from_rows(c1, c2, u1, u2)

    @property
    def form(self) -> GameForm:
        return GameForm(self.choices)

    def with_utility(self, u: UtilityFunction) -> Game:
        utilities = dict(self.utilities)
        utilities[u.owner] = u
        return Game(self.choices, utilities)


@dataclass(frozen=True)
class LexBelief:
    """A lexicographic belief: an ordered tuple of levels.

    Each level is a tuple of ``(choice, type, prob)`` entries. Entry order is
    kept as written so documents round-trip exactly; comparisons between
    beliefs go through :meth:`canonical`.
    """

    levels: tuple[tuple[tuple[str, str, Fraction], ...], ...]

    def __post_init__(self):
        levels = tuple(tuple((c, t, Fraction(p)) for c, t, p in level) for level in self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise ValidationError("a lexicographic belief needs at least one level")
        for k, level in enumerate(levels):
            loc = f"$[{k}]"
            seen = set()
            total = Fraction(0)
            for c, t, p in level:
                if p < 0:
                    raise ValidationError(f"negative probability {p} for ({c}, {t})", loc)
                if (c, t) in seen:
                    raise ValidationError(f"pair ({c}, {t}) listed twice", loc)
                seen.add((c, t))
                total += p
            if total != 1:
                raise ValidationError(f"probabilities sum to {total}, not 1", loc)

    @classmethod
    def from_pairs(cls, *levels) -> LexBelief:
        """``from_pairs([("D", "t2")], {("E", "t2"): "1/2", ("F", "t2"): "1/2"})``.

        A level given as a list of pairs gets uniform weights.
        """
        out = []
        for level in levels:
            if isinstance(level, Mapping):
                out.append(tuple((c, t, Fraction(p)) for (c, t), p in level.items()))
            else:
                pairs = list(level)
                w = Fraction(1, len(pairs)) if pairs else Fraction(0)
                out.append(tuple((c, t, w) for c, t in pairs))
        return cls(tuple(out))

    def __len__(self) -> int:
        return len(self.levels)

    @cached_property
    def _level_maps(self) -> tuple[dict[Pair, Fraction], ...]:
        return tuple({(c, t): p for c, t, p in level if p > 0} for level in self.levels)

    def prob(self, k: int, pair: Pair) -> Fraction:
        return self._level_maps[k].get(pair, Fraction(0))

    def support(self, k: int) -> list[Pair]:
        return list(self._level_maps[k])

    @cached_property
    def _first_levels(self) -> dict[Pair, int]:
        first: dict[Pair, int] = {}
        for k, level in enumerate(self._level_maps):
            for pair in level:
                first.setdefault(pair, k)
        return first

    def first_level(self, pair: Pair) -> int | None:
        """Index of the first level giving ``pair`` positive probability."""
        return self._first_levels.get(pair)

    def deemed(self) -> list[Pair]:
        """Pairs deemed possible, in order of first appearance."""
        return list(self._first_levels)

    def deemed_types(self) -> list[str]:
        out: list[str] = []
        for _, t in self._first_levels:
            if t not in out:
                out.append(t)
        return out

    def choice_marginal(self, k: int) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for (c, _), p in self._level_maps[k].items():
            out[c] = out.get(c, Fraction(0)) + p
        return out

    def choice_marginals(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(self.choice_marginal(k).items()) for k in range(len(self)))

    def canonical(self) -> tuple[frozenset, ...]:
        """Order-free form used for belief equality."""
        return tuple(frozenset(level.items()) for level in self._level_maps)

    def same_as(self, other: LexBelief) -> bool:
        return self.canonical() == other.canonical()

    def relabel(self, mapping: Mapping[Pair, Pair]) -> LexBelief:
        """Rename pairs; pairs sent to the same target have their weights summed."""
        levels = []
        for level in self.levels:
            acc: dict[Pair, Fraction] = {}
            for c, t, p in level:
                target = mapping.get((c, t), (c, t))
                acc[target] = acc.get(target, Fraction(0)) + p
            levels.append(tuple((c, t, p) for (c, t), p in acc.items()))
        return LexBelief(tuple(levels))

    def insert_level(self, index: int, level) -> LexBelief:
        levels = list(self.levels)
        levels.insert(index, tuple(level))
        return LexBelief(tuple(levels))


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of checking one condition on one type.

    ``witness`` is present whenever ``holds`` is false and names the pair(s),
    level, distances or utility vectors that break the condition.
    ``precondition_failed`` marks conditions that are only defined for
    cautious types and were asked about a type that is not.
    """

    holds: bool
    witness: dict | None = None
    precondition_failed: bool = False

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    def __bool__(self) -> bool:
        return self.holds

    @classmethod
    def ok(cls) -> ConditionVerdict:
        return cls(True)

    @classmethod
    def fail(cls, **witness) -> ConditionVerdict:
        return cls(False, witness)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.precondition_failed:
            out["precondition_failed"] = True
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


class _ModelBase:
    """Shared type bookkeeping for both model flavors."""

    types: Mapping[str, tuple[str, ...]]
    beliefs: Mapping[str, LexBelief]

    def _validate_types(self, choices: Mapping[str, tuple[str, ...]]) -> None:
        if set(self.types) != set(PLAYERS):
            raise ValidationError("types must be given for both players", "$.types")
        seen: set[str] = set()
        for p in PLAYERS:
            if not self.types[p]:
                raise ValidationError(f"player {p} has no types", f"$.types.{p}")
            for t in self.types[p]:
                if not isinstance(t, str) or not t:
                    raise ValidationError(f"type id {t!r} is not a nonempty string", f"$.types.{p}")
                if t in seen:
                    raise ValidationError(f"duplicate type id {t!r}", f"$.types.{p}")
                seen.add(t)
        if set(self.beliefs) != seen:
            missing = sorted(seen - set(self.beliefs))
            extra = sorted(set(self.beliefs) - seen)
            if missing:
                raise ValidationError(f"no belief for types {missing}", "$.beliefs")
            raise ValidationError(f"beliefs for undeclared types {extra}", "$.beliefs")
        for p in PLAYERS:
            q = opponent(p)
            opp_types = set(self.types[q])
            opp_choices = set(choices[q])
            for t in self.types[p]:
                for k, level in enumerate(self.beliefs[t].levels):
                    for c, tj, _ in level:
                        loc = f"$.beliefs.{t}[{k}]"
                        if c not in opp_choices:
                            raise ValidationError(
                                f"choice {c!r} is not a choice of player {q}", loc
                            )
                        if tj not in opp_types:
                            raise ValidationError(
                                f"type {tj!r} is not a type of player {q}", loc
                            )

    @cached_property
    def _owner(self) -> dict[str, str]:
        return {t: p for p in PLAYERS for t in self.types[p]}

    def player_of(self, t: str) -> str:
        try:
            return self._owner[t]
        except KeyError as exc:
            raise KeyError(f"unknown type {t!r}") from exc

    def belief(self, t: str) -> LexBelief:
        return self.beliefs[t]

    def all_types(self) -> list[str]:
        return [t for p in PLAYERS for t in self.types[p]]

    def deemed_types(self, t: str) -> list[str]:
        """Opponent types deemed possible by ``t``, in the opponent's type order."""
        deemed = set(self.beliefs[t].deemed_types())
        q = opponent(self.player_of(t))
        return [tj for tj in self.types[q] if tj in deemed]


@dataclass(frozen=True)
class CompleteModel(_ModelBase):
    """Finite lexicographic epistemic model for a game (complete information)."""

    game: Game
    types: Mapping[str, tuple[str, ...]]
    beliefs: Mapping[str, LexBelief]

    def __post_init__(self):
        object.__setattr__(self, "types", {p: tuple(v) for p, v in self.types.items()})
        object.__setattr__(self, "beliefs", dict(self.beliefs))
        self._validate_types(self.game.choices)

    flavor = "complete"

    @property
    def choices(self) -> Mapping[str, tuple[str, ...]]:
        return self.game.choices

    def utility(self, t: str) -> UtilityFunction:
        return self.game.utilities[self.player_of(t)]

    def with_belief(self, t: str, belief: LexBelief) -> CompleteModel:
        beliefs = dict(self.beliefs)
        beliefs[t] = belief
        return CompleteModel(self.game, self.types, beliefs)


@dataclass(frozen=True)
class IncompleteModel(_ModelBase):
    """Finite lexicographic epistemic model for a game form with a utility per type."""

    form: GameForm
    types: Mapping[str, tuple[str, ...]]
    utilities: Mapping[str, UtilityFunction]
    beliefs: Mapping[str, LexBelief]

    def __post_init__(self):
        if isinstance(self.form, Game):
            object.__setattr__(self, "form", self.form.form)
        object.__setattr__(self, "types", {p: tuple(v) for p, v in self.types.items()})
        object.__setattr__(self, "beliefs", dict(self.beliefs))
        object.__setattr__(self, "utilities", dict(self.utilities))
        self._validate_types(self.form.choices)
        for p in PLAYERS:
            for t in self.types[p]:
                loc = f"$.utilities.{t}"
                if t not in self.utilities:
                    raise ValidationError(f"type {t!r} has no utility function", loc)
                u = self.utilities[t]
                if (
                    u.owner != p
                    or u.own != self.form.choices[p]
                    or u.opp != self.form.choices[opponent(p)]
                ):
                    raise ValidationError(f"utility of {t!r} does not match the game form", loc)
        extra = set(self.utilities) - set(self._owner)
        if extra:
            raise ValidationError(f"utilities for undeclared types {sorted(extra)}", "$.utilities")

    flavor = "incomplete"

    @property
    def choices(self) -> Mapping[str, tuple[str, ...]]:
        return self.form.choices

    def utility(self, t: str) -> UtilityFunction:
        return self.utilities[t]


Model = Union[CompleteModel, IncompleteModel]


# --- JSON documents ---------------------------------------------------------


def _load(document: str | bytes | Mapping) -> Any:
    if isinstance(document, Mapping):
        return document
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc


def _expect(obj, kind, location):
    if not isinstance(obj, kind):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise DocumentSyntaxError(f"expected {name}, got {type(obj).__name__}", location)
    return obj


def _parse_matrix(raw, own, opp, location) -> tuple[tuple[Fraction, ...], ...]:
    _expect(raw, list, location)
    if len(raw) != len(own):
        raise ValidationError(f"matrix has {len(raw)} rows, expected {len(own)}", location)
    rows = []
    for r, row in enumerate(raw):
        _expect(row, list, f"{location}[{r}]")
        if len(row) != len(opp):
            raise ValidationError(
                f"row has {len(row)} entries, expected {len(opp)}", f"{location}[{r}]"
            )
        rows.append(tuple(to_fraction(x, f"{location}[{r}][{k}]") for k, x in enumerate(row)))
    return tuple(rows)


def _parse_choices(doc) -> dict[str, tuple[str, ...]]:
    raw = _expect(doc.get("choices"), dict, "$.choices")
    out = {}
    for p in PLAYERS:
        if p not in raw:
            raise ValidationError(f"missing choices for player {p}", "$.choices")
        out[p] = tuple(_expect(raw[p], list, f"$.choices.{p}"))
    extra = set(raw) - set(PLAYERS)
    if extra:
        raise ValidationError(f"unknown players {sorted(extra)}", "$.choices")
    _check_choices(out)
    return out


def parse_game(document: str | bytes | Mapping) -> Game:
    """Parse a game document (see README for the format)."""
    doc = _expect(_load(document), dict, "$")
    choices = _parse_choices(doc)
    raw = _expect(doc.get("utilities"), dict, "$.utilities")
    utilities = {}
    for p in PLAYERS:
        if p not in raw:
            raise ValidationError(f"missing utilities for player {p}", "$.utilities")
        q = opponent(p)
        values = _parse_matrix(raw[p], choices[p], choices[q], f"$.utilities.{p}")
        utilities[p] = UtilityFunction(p, choices[p], choices[q], values)
    return Game(choices, utilities)


def parse_game_form(document: str | bytes | Mapping) -> GameForm:
    doc = _expect(_load(document), dict, "$")
    return GameForm(_parse_choices(doc))


def _parse_belief(raw, location) -> LexBelief:
    _expect(raw, list, location)
    if not raw:
        raise ValidationError("a lexicographic belief needs at least one level", location)
    levels = []
    for k, level in enumerate(raw):
        loc = f"{location}[{k}]"
        _expect(level, list, loc)
        if not level:
            raise ValidationError("empty belief level", loc)
        entries = []
        for e, entry in enumerate(level):
            eloc = f"{loc}[{e}]"
            _expect(entry, dict, eloc)
            for key in ("choice", "type", "prob"):
                if key not in entry:
                    raise DocumentSyntaxError(f"missing key {key!r}", eloc)
            c = _expect(entry["choice"], str, f"{eloc}.choice")
            t = _expect(entry["type"], str, f"{eloc}.type")
            entries.append((c, t, to_fraction(entry["prob"], f"{eloc}.prob")))
        levels.append(tuple(entries))
    try:
        return LexBelief(tuple(levels))
    except ValidationError as exc:
        raise ValidationError(exc.detail, location + exc.location[1:]) from None


def parse_belief(document: str | bytes | list, default_type: str = "_") -> LexBelief:
    """Parse a bare belief (list of levels); entries may omit ``type``."""
    raw = _load(document) if not isinstance(document, list) else document
    _expect(raw, list, "$")
    filled = [
        [dict({"type": default_type}, **e) if isinstance(e, dict) else e for e in level]
        if isinstance(level, list)
        else level
        for level in raw
    ]
    return _parse_belief(filled, "$")


def parse_model(document: str | bytes | Mapping, game: Game | GameForm) -> Model:
    """Parse a complete or incomplete model against a game or game form.

    A complete model needs a :class:`Game`; an incomplete one only uses the
    game's form.
    """
    doc = _expect(_load(document), dict, "$")
    flavor = doc.get("flavor")
    if flavor not in ("complete", "incomplete"):
        raise DocumentSyntaxError("flavor must be 'complete' or 'incomplete'", "$.flavor")
    raw_types = _expect(doc.get("types"), dict, "$.types")
    types = {}
    for p in PLAYERS:
        if p not in raw_types:
            raise ValidationError(f"missing types for player {p}", "$.types")
        types[p] = tuple(_expect(raw_types[p], list, f"$.types.{p}"))
    raw_beliefs = _expect(doc.get("beliefs"), dict, "$.beliefs")
    beliefs = {t: _parse_belief(b, f"$.beliefs.{t}") for t, b in raw_beliefs.items()}
    if flavor == "complete":
        if not isinstance(game, Game):
            raise ValidationError("a complete model needs a game with utilities", "$")
        return CompleteModel(game, types, beliefs)
    form = game.form
    raw_u = _expect(doc.get("utilities"), dict, "$.utilities")
    owner = {t: p for p in PLAYERS for t in types[p]}
    utilities = {}
    for t, matrix in raw_u.items():
        loc = f"$.utilities.{t}"
        if t not in owner:
            raise ValidationError(f"utility for undeclared type {t!r}", loc)
        p = owner[t]
        q = opponent(p)
        utilities[t] = UtilityFunction(
            p, form.choices[p], form.choices[q], _parse_matrix(matrix, form.choices[p], form.choices[q], loc)
        )
    for t in owner:
        if t not in utilities:
            raise ValidationError(f"type {t!r} has no utility function", "$.utilities")
    return IncompleteModel(form, types, utilities, beliefs)


def _matrix_doc(u: UtilityFunction) -> list:
    return [[fraction_str(x) for x in row] for row in u.values]


def _belief_doc(b: LexBelief) -> list:
    return [
        [{"choice": c, "type": t, "prob": fraction_str(p)} for c, t, p in level]
        for level in b.levels
    ]


def to_document(obj: Game | GameForm | Model | LexBelief) -> dict:
    """Plain-JSON form of a game, game form, model or belief."""
    if isinstance(obj, Game):
        return {
            "choices": {p: list(obj.choices[p]) for p in PLAYERS},
            "utilities": {p: _matrix_doc(obj.utilities[p]) for p in PLAYERS},
        }
    if isinstance(obj, GameForm):
        return {"choices": {p: list(obj.choices[p]) for p in PLAYERS}}
    if isinstance(obj, LexBelief):
        return {"levels": _belief_doc(obj)}
    if isinstance(obj, (CompleteModel, IncompleteModel)):
        doc: dict[str, Any] = {
            "flavor": obj.flavor,
            "types": {p: list(obj.types[p]) for p in PLAYERS},
            "beliefs": {t: _belief_doc(obj.beliefs[t]) for t in obj.all_types()},
        }
        if isinstance(obj, IncompleteModel):
            doc["utilities"] = {t: _matrix_doc(obj.utilities[t]) for t in obj.all_types()}
        return doc
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj: Game | GameForm | Model) -> str:
    """Deterministic UTF-8 JSON text; ``parse(serialize(x)) == x``."""
    return json.dumps(to_document(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def structurally_equal(a: Model, b: Model) -> bool:
    """Same flavor, same type lists, same beliefs (order-free within a level), same utilities."""
    if type(a) is not type(b) or dict(a.types) != dict(b.types):
        return False
    if dict(a.choices) != dict(b.choices):
        return False
    if isinstance(a, CompleteModel) and a.game != b.game:
        return False
    if isinstance(a, IncompleteModel) and dict(a.utilities) != dict(b.utilities):
        return False
    return all(a.beliefs[t].same_as(b.beliefs[t]) for t in a.all_types())


def _signature(model: Model, t: str):
    b = model.belief(t)
    sig = (len(b), b.choice_marginals())
    if isinstance(model, IncompleteModel):
        sig += (model.utility(t).values,)
    return sig


def isomorphism(a: Model, b: Model) -> dict[str, str] | None:
    """A type renaming carrying ``a`` onto ``b``, or None.

    Candidates are pruned by level count, choice marginals and (incomplete
    models) utilities, then checked by backtracking.
    """
    if type(a) is not type(b) or dict(a.choices) != dict(b.choices):
        return None
    if isinstance(a, CompleteModel) and a.game != b.game:
        return None
    if any(len(a.types[p]) != len(b.types[p]) for p in PLAYERS):
        return None
    order = a.all_types()
    candidates = {
        t: [s for s in b.types[a.player_of(t)] if _signature(b, s) == _signature(a, t)] for t in order
    }
    mapping: dict[str, str] = {}

    def consistent() -> bool:
        for t in order:
            src = a.belief(t)
            if t not in mapping or any(s not in mapping for s in src.deemed_types()):
                continue
            renamed = src.relabel({(c, s): (c, mapping[s]) for c, s in src.deemed()})
            if not renamed.same_as(b.belief(mapping[t])):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        t = order[i]
        for s in candidates[t]:
            if s in mapping.values():
                continue
            mapping[t] = s
            if consistent() and extend(i + 1):
                return True
            del mapping[t]
        return False

    return dict(mapping) if extend(0) else None
