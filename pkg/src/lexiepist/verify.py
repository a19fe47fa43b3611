"""Witness-based checks of the characterization theorems.

Each theorem pairs a complete-side condition bundle with an incomplete-side
one. The only-if direction starts from a complete type ``t*`` whose choice
``c*`` is optimal, builds the incomplete model (or takes the one supplied)
and checks the incomplete bundle on ``θ*``. The if direction runs the other
way through the belief-class quotient. A direction whose premise fails is
reported as vacuous.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .conditions_co import (
    CO_CONDITIONS,
    bundle,
    common_assumption_rationality,
    full_belief_verdict,
)
from .conditions_in import common_assumption_prior_u, in_conditions
from .lexpref import optimal_for
from .model import CompleteModel, ConditionVerdict, Game, IncompleteModel
from .transform import class_map, cautious_extension_model, co2in_detailed, in2co


class VerifyInputError(ValueError):
    """Inputs that do not describe one game form, player and choice."""


@dataclass(frozen=True)
class Step:
    """One lemma-level check: ``conditions`` under common full belief, or a named special check."""

    lemma: str
    conditions: tuple[str, ...] = ()
    special: str | None = None


@dataclass(frozen=True)
class Theorem:
    co_premise: tuple[str, ...]
    in_premise: tuple[str, ...]
    only_if: tuple[Step, ...]
    if_: tuple[Step, ...]
    co_special: str | None = None
    in_special: str | None = None


THEOREMS: dict[str, Theorem] = {
    "thm41": Theorem(
        ("caution", "primary-belief-rationality"),
        ("caution", "primary-nearest-u", "best-supported-nearest"),
        (Step("lemma4.1", ("caution",)), Step("lemma4.2", ("primary-nearest-u",)),
         Step("obs4.3", ("best-supported-nearest",))),
        (Step("lemma4.3", ("caution",)), Step("lemma4.4", ("primary-belief-rationality",))),
    ),
    "thm42": Theorem(
        ("caution", "respect-preferences"),
        ("caution", "u-centered", "better-supported-nearer"),
        (Step("lemma4.1", ("caution",)), Step("lemma4.5", ("u-centered",)),
         Step("obs4.3", ("better-supported-nearer",))),
        (Step("lemma4.3", ("caution",)), Step("lemma4.6", ("respect-preferences",))),
    ),
    "thm43": Theorem(
        ("caution", "primary-belief-rationality"),
        ("caution", "belief-rationality", "primary-u"),
        (Step("lemma4.1", ("caution",)), Step("obs4.2", ("belief-rationality",)),
         Step("lemma4.7", ("primary-u",))),
        (Step("lemma4.3", ("caution",)), Step("lemma4.8", ("primary-belief-rationality",))),
    ),
    "thm44": Theorem(
        ("caution",),
        ("caution", "belief-rationality"),
        (Step("lemma4.1", ("caution",)), Step("obs4.2", ("belief-rationality",)),
         Step("lemma4.9", special="common-assumption-prior-u")),
        (Step("lemma4.3", ("caution",)), Step("lemma4.9", special="common-assumption-rationality")),
        co_special="common-assumption-rationality",
        in_special="common-assumption-prior-u",
    ),
    "prop51": Theorem(
        ("caution", "primary-belief-rationality"),
        ("weak-caution", "belief-rationality", "primary-u"),
        (Step("lemma4.1", ("weak-caution",)), Step("obs4.2", ("belief-rationality",)),
         Step("lemma4.7", ("primary-u",))),
        (Step("lemma5.2", ("weak-caution",)), Step("lemma4.8", ("primary-belief-rationality",)),
         Step("lemma6.1", special="cautious-extension")),
    ),
}


@dataclass
class VerifyReport:
    theorem: str
    choice: str
    complete_type: str
    incomplete_type: str
    directions: dict[str, str] = field(default_factory=dict)
    trace: list[dict] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(v == "pass" for v in self.directions.values())

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "choice": self.choice,
            "complete_type": self.complete_type,
            "incomplete_type": self.incomplete_type,
            "directions": dict(self.directions),
            "trace": list(self.trace),
            "verdict": self.verdict,
        }


def _cfb(model, t, names, registry) -> ConditionVerdict:
    return full_belief_verdict(model, t, bundle(names, registry))


def _member(holds: bool, t: str, name: str) -> ConditionVerdict:
    return ConditionVerdict.ok() if holds else ConditionVerdict.fail(type=t, outside=name)


def _optimal(model, t, c) -> ConditionVerdict:
    best = optimal_for(model, t)
    return ConditionVerdict.ok() if c in best else ConditionVerdict.fail(type=t, choice=c, optimal=best)


def _special(name: str, model, t: str, u: Game, c: str) -> ConditionVerdict:
    if name == "common-assumption-rationality":
        return _member(t in common_assumption_rationality(model), t, name)
    if name == "common-assumption-prior-u":
        return _member(t in common_assumption_prior_u(model, u), t, name)
    if name == "cautious-extension":
        extended = cautious_extension_model(model)
        v = _cfb(extended, t, ("caution", "primary-belief-rationality"), CO_CONDITIONS)
        if not v:
            return v
        return _optimal(extended, t, c)
    raise KeyError(name)


class _Recorder:
    def __init__(self, report: VerifyReport, direction: str):
        self.report, self.direction = report, direction
        self.premise_ok = True
        self.conclusion_ok = True

    def add(self, lemma: str, role: str, subject: str, verdict: ConditionVerdict, what: str) -> None:
        entry = {"direction": self.direction, "lemma": lemma, "role": role, "type": subject,
                 "check": what, "holds": bool(verdict)}
        if not verdict:
            entry["witness"] = verdict.to_json().get("witness")
        self.report.trace.append(entry)
        if not verdict:
            if role == "premise":
                self.premise_ok = False
            else:
                self.conclusion_ok = False

    def status(self) -> str:
        if not self.premise_ok:
            return "vacuous"
        return "pass" if self.conclusion_ok else "fail"


def _has_reference(model: IncompleteModel, t: str, u: Game) -> ConditionVerdict:
    p = model.player_of(t)
    return _member(model.utility(t) == u.utilities[p], t, "reference utility")


def verify(
    tag: str,
    game: Game,
    choice: str,
    complete: CompleteModel | None = None,
    complete_type: str | None = None,
    incomplete: IncompleteModel | None = None,
    incomplete_type: str | None = None,
) -> VerifyReport:
    """Check both directions of theorem ``tag`` on the given witnesses.

    Missing counterparts are constructed: the incomplete model by splitting
    types along utility ladders (``θ*`` is the rung-1 type of ``t*``), the
    complete model by collapsing belief classes (``t*`` is the class of
    ``θ*``).
    """
    if tag not in THEOREMS:
        raise VerifyInputError(f"unknown theorem {tag!r}; known: {sorted(THEOREMS)}")
    thm = THEOREMS[tag]
    if complete is None and incomplete is None:
        raise VerifyInputError("need a complete model, an incomplete model, or both")
    if complete is not None:
        if complete.game != game:
            raise VerifyInputError("the complete model is built on a different game")
        if complete_type is None:
            raise VerifyInputError("a complete model needs --type")
        complete.player_of(complete_type)
    if incomplete is not None:
        if dict(incomplete.choices) != dict(game.choices):
            raise VerifyInputError("the incomplete model is built on a different game form")
    if incomplete is None:
        built = co2in_detailed(complete)
        incomplete = built.model
        incomplete_type = built.first(complete_type)
    if incomplete_type is None:
        raise VerifyInputError("an incomplete model needs --theta")
    player = incomplete.player_of(incomplete_type)
    if complete is None:
        complete = in2co(incomplete, game)
        complete_type = class_map(incomplete)[incomplete_type]
    if complete.player_of(complete_type) != player:
        raise VerifyInputError("the two types belong to different players")
    if choice not in game.choices[player]:
        raise VerifyInputError(f"{choice!r} is not a choice of player {player}")

    in_registry = in_conditions(game)
    report = VerifyReport(tag, choice, complete_type, incomplete_type)

    # only if: complete premise on t*, incomplete conclusion on the rung-1 type of t*
    rec = _Recorder(report, "only_if")
    rec.add("premise", "premise", complete_type,
            _cfb(complete, complete_type, thm.co_premise, CO_CONDITIONS), "cfb:" + ",".join(thm.co_premise))
    if thm.co_special:
        rec.add("premise", "premise", complete_type,
                _special(thm.co_special, complete, complete_type, game, choice), thm.co_special)
    rec.add("premise", "premise", complete_type, _optimal(complete, complete_type, choice), "optimal")
    built = co2in_detailed(complete)
    theta = built.first(complete_type)
    for step in thm.only_if:
        if step.special:
            v, what = _special(step.special, built.model, theta, game, choice), step.special
        else:
            v, what = _cfb(built.model, theta, step.conditions, in_registry), "cfb:" + ",".join(step.conditions)
        rec.add(step.lemma, "conclusion", theta, v, what)
    rec.add("optimality", "conclusion", theta, _optimal(built.model, theta, choice), "optimal")
    rec.add("optimality", "conclusion", theta, _has_reference(built.model, theta, game), "reference utility")
    report.directions["only_if"] = rec.status()

    # if: incomplete premise on θ*, complete conclusion on its belief class
    rec = _Recorder(report, "if")
    rec.add("premise", "premise", incomplete_type,
            _cfb(incomplete, incomplete_type, thm.in_premise, in_registry), "cfb:" + ",".join(thm.in_premise))
    if thm.in_special:
        rec.add("premise", "premise", incomplete_type,
                _special(thm.in_special, incomplete, incomplete_type, game, choice), thm.in_special)
    rec.add("premise", "premise", incomplete_type, _optimal(incomplete, incomplete_type, choice), "optimal")
    rec.add("premise", "premise", incomplete_type, _has_reference(incomplete, incomplete_type, game),
            "reference utility")
    quotient = in2co(incomplete, game)
    t = class_map(incomplete)[incomplete_type]
    for step in thm.if_:
        if step.special:
            v, what = _special(step.special, quotient, t, game, choice), step.special
        else:
            v, what = _cfb(quotient, t, step.conditions, CO_CONDITIONS), "cfb:" + ",".join(step.conditions)
        rec.add(step.lemma, "conclusion", t, v, what)
    rec.add("optimality", "conclusion", t, _optimal(quotient, t, choice), "optimal")
    report.directions["if"] = rec.status()
    return report
