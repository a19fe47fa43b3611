"""Command-line front end.

Exit status: 0 when the condition holds or the run passes, 1 when it fails,
2 on usage or input errors. JSON output uses sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .conditions_co import (
    CO_CONDITIONS,
    assumes_rationality_nfold,
    bundle,
    common_assumption_rationality,
    common_full_belief,
)
from .conditions_in import assumes_prior_u_good_nfold, common_assumption_prior_u, in_conditions
from .corpus import default_directory, run_corpus
from .metric import ordinal_distance, sq_euclid
from .model import (
    CompleteModel,
    Game,
    ModelError,
    fraction_str,
    parse_belief,
    parse_game,
    parse_game_form,
    parse_model,
    serialize,
)
from .solvers import Restriction, dekel_fudenberg, iewds, strictly_dominated, weakly_dominated
from .transform import PreconditionError, cautious_extension, cautious_extension_model, co2in, in2co, utility_ladder
from .verify import THEOREMS, VerifyInputError, verify


class UsageError(Exception):
    pass


def emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))


def read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_game(path: str):
    """A game, or just its form when the document has no utilities."""
    text = read(path)
    if '"utilities"' not in text:
        return parse_game_form(text)
    return parse_game(text)


def load_reference(args, game) -> Game | None:
    if getattr(args, "u", None):
        return parse_game(read(args.u))
    return game if isinstance(game, Game) else None


def split_condition(text: str) -> list[str]:
    return [c.strip() for c in text.split(",") if c.strip()]


def nfold(condition: str) -> tuple[str, int] | None:
    """``assume-rationality:3`` -> ("assume-rationality", 3)."""
    if ":" not in condition:
        return None
    name, n = condition.split(":", 1)
    if not n.isdigit() or int(n) < 1:
        raise UsageError(f"bad fold count in {condition!r}")
    return name, int(n)


def registry_for(model, u):
    if isinstance(model, CompleteModel):
        return CO_CONDITIONS
    return in_conditions(u)


# --- subcommands ------------------------------------------------------------


def cmd_check(args) -> int:
    game = load_game(args.game)
    model = parse_model(read(args.model), game)
    u = load_reference(args, game)
    model.player_of(args.type)
    names = split_condition(args.condition)
    folded = [nfold(n) for n in names]
    if any(folded):
        if len(names) != 1:
            raise UsageError("an n-fold condition cannot be combined with others")
        name, n = folded[0]
        if name == "assume-rationality" and isinstance(model, CompleteModel):
            verdict = assumes_rationality_nfold(model, args.type, n)
        elif name == "assume-prior-u-good" and not isinstance(model, CompleteModel):
            if u is None:
                raise UsageError("assume-prior-u-good needs reference utilities (--u)")
            verdict = assumes_prior_u_good_nfold(model, args.type, u, n)
        else:
            raise UsageError(f"{name!r} does not apply to a {model.flavor} model")
    else:
        registry = registry_for(model, u)
        unknown = [n for n in names if n not in registry]
        if unknown:
            raise UsageError(f"unknown condition(s) {unknown} for a {model.flavor} model; known: {sorted(registry)}")
        verdict = bundle(names, registry)(model, args.type)
    emit({"type": args.type, "condition": args.condition, **verdict.to_json()})
    return 0 if verdict else 1


def cmd_common(args) -> int:
    game = load_game(args.game)
    model = parse_model(read(args.model), game)
    u = load_reference(args, game)
    names = split_condition(args.condition)
    if names == ["assume-rationality"] and isinstance(model, CompleteModel):
        types = common_assumption_rationality(model)
    elif names == ["assume-prior-u-good"] and not isinstance(model, CompleteModel):
        if u is None:
            raise UsageError("assume-prior-u-good needs reference utilities (--u)")
        types = common_assumption_prior_u(model, u)
    else:
        registry = registry_for(model, u)
        unknown = [n for n in names if n not in registry]
        if unknown:
            raise UsageError(f"unknown condition(s) {unknown}; known: {sorted(registry)}")
        types = common_full_belief(model, bundle(names, registry))
    emit({"condition": args.condition, "types": types})
    if args.type:
        model.player_of(args.type)
        return 0 if args.type in types else 1
    return 0


def write_model(obj, out: str | None) -> None:
    text = serialize(obj)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_transform(args) -> int:
    if args.op == "ladder":
        game = parse_game(read(args.game))
        if args.utility not in game.utilities:
            raise UsageError(f"no player {args.utility!r}")
        belief = parse_belief(read(args.belief))
        ladder = utility_ladder(game.utilities[args.utility], belief)
        emit({
            "player": args.utility,
            "partition": ladder.partition.to_json(),
            "rungs": [[[fraction_str(x) for x in row] for row in r.values] for r in ladder.rungs],
            "row_labels": list(game.choices[args.utility]),
        })
        return 0
    if not args.model:
        raise UsageError(f"transform {args.op} needs --model")
    game = load_game(args.game)
    if args.op == "co2in":
        model = parse_model(read(args.model), game)
        if not isinstance(model, CompleteModel):
            raise UsageError("co2in needs a complete model")
        write_model(co2in(model), args.output)
    elif args.op == "in2co":
        if not isinstance(game, Game):
            raise UsageError("in2co needs a game with utilities")
        model = parse_model(read(args.model), game)
        if isinstance(model, CompleteModel):
            raise UsageError("in2co needs an incomplete model")
        write_model(in2co(model, game), args.output)
    else:
        model = parse_model(read(args.model), game)
        if not isinstance(model, CompleteModel):
            raise UsageError("cautious-ext needs a complete model")
        if args.type:
            write_model(cautious_extension(model, args.type), args.output)
        else:
            write_model(cautious_extension_model(model), args.output)
    return 0


def parse_restriction(text: str | None, game: Game) -> Restriction | None:
    if not text:
        return None
    raw = json.loads(read(text) if Path(text).is_file() else text)
    for p, cs in raw.items():
        unknown = [c for c in cs if c not in game.choices.get(p, ())]
        if unknown:
            raise UsageError(f"restriction names unknown choices {unknown} for player {p}")
    return Restriction(raw)


def cmd_solve(args) -> int:
    game = parse_game(read(args.game))
    if args.procedure == "df":
        emit({"procedure": "df", "survivors": dekel_fudenberg(game).to_json()})
        return 0
    if args.procedure == "iewds":
        ladder = iewds(game)
        emit({"procedure": "iewds", "rounds": [r.to_json() for r in ladder], "fixpoint": ladder[-1].to_json()})
        return 0
    if not args.player or not args.choice:
        raise UsageError(f"{args.procedure} needs --player and --choice")
    if args.choice not in game.choices.get(args.player, ()):
        raise UsageError(f"{args.choice!r} is not a choice of player {args.player!r}")
    restriction = parse_restriction(args.restrict, game)
    test = weakly_dominated if args.procedure == "weak-dom" else strictly_dominated
    cert = test(game, args.player, args.choice, restriction)
    emit({
        "procedure": args.procedure,
        "player": args.player,
        "choice": args.choice,
        "dominated": cert is not None,
        "certificate": None if cert is None else cert.to_json(),
    })
    return 0


def cmd_distance(args) -> int:
    u_game = parse_game(read(args.u))
    if args.player not in u_game.utilities:
        raise UsageError(f"no player {args.player!r}")
    u = u_game.utilities[args.player]
    if args.v_model:
        model = parse_model(read(args.v_model), u_game)
        if not args.v_type:
            raise UsageError("--v-model needs --v-type")
        v = model.utility(args.v_type)
    elif args.v:
        v = parse_game(read(args.v)).utilities[args.player]
    else:
        raise UsageError("give --v or --v-model/--v-type")
    if args.metric == "euclid2":
        emit({"metric": "euclid2", "distance": fraction_str(sq_euclid(v, u))})
    else:
        if not args.belief:
            raise UsageError("the ordinal metric needs --belief")
        emit({"metric": "ordinal", "distance": ordinal_distance(parse_belief(read(args.belief)), v, u)})
    return 0


def cmd_verify(args) -> int:
    game = parse_game(read(args.game))
    complete = parse_model(read(args.model), game) if args.model else None
    incomplete = parse_model(read(args.incomplete), game) if args.incomplete else None
    if complete is not None and not isinstance(complete, CompleteModel):
        raise UsageError("--model must be a complete model")
    if incomplete is not None and isinstance(incomplete, CompleteModel):
        raise UsageError("--incomplete must be an incomplete model")
    if args.construct and complete is not None and incomplete is not None:
        raise UsageError("--construct builds the counterpart; pass only one model")
    report = verify(args.theorem, game, args.choice, complete, args.type, incomplete, args.theta)
    emit(report.to_json())
    return 0 if report.verdict else 1


def print_table(result: dict) -> None:
    rows = [(r["id"], r["kind"], r["status"] + (" (disputed)" if r["disputed"] else "")) for r in result["results"]]
    width = max((len(r[0]) for r in rows), default=2)
    for ident, kind, status in rows:
        print(f"{ident:<{width}}  {kind:<9}  {status}")
    s = result["summary"]
    print(
        f"\n{s['total']} run, {s['pass']} passed, {s['fail']} failed, {s['error']} errors, "
        f"{s['disputed_fail']} disputed not passing, {s['counted_failures']} counted failures"
    )


def cmd_corpus(args) -> int:
    directory = Path(args.dir) if args.dir else default_directory()
    if not (directory / "corpus.json").is_file():
        raise UsageError(f"no corpus.json in {directory}")
    result = run_corpus(directory, args.filter, args.strict_paper, args.samples)
    if args.json:
        emit(result)
    else:
        print_table(result)
    return 0 if result["ok"] else 1


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexiepist", description="Lexicographic epistemic model checker.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide a condition for one type")
    p.add_argument("--model", required=True)
    p.add_argument("--game", required=True, help="game (or game form, for incomplete models)")
    p.add_argument("--u", help="reference utilities as a game file (defaults to --game)")
    p.add_argument("--type", required=True)
    p.add_argument("--condition", required=True, help="tag, comma-separated tags, or tag:n for n-fold assumption")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("common", help="types expressing common full belief (or common assumption)")
    p.add_argument("--model", required=True)
    p.add_argument("--game", required=True)
    p.add_argument("--u")
    p.add_argument("--condition", required=True)
    p.add_argument("--type", help="exit 1 unless this type is in the set")
    p.set_defaults(func=cmd_common)

    p = sub.add_parser("transform", help="model constructions")
    p.add_argument("op", choices=["co2in", "in2co", "cautious-ext", "ladder"])
    p.add_argument("--game", required=True)
    p.add_argument("--model")
    p.add_argument("--type", help="cautious-ext: extend only this type")
    p.add_argument("--utility", help="ladder: player whose utility is laddered")
    p.add_argument("--belief", help="ladder: belief file (levels of choice/prob entries)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("solve", help="elimination procedures and dominance checks")
    p.add_argument("procedure", choices=["df", "iewds", "weak-dom", "strict-dom"])
    p.add_argument("--game", required=True)
    p.add_argument("--player")
    p.add_argument("--choice")
    p.add_argument("--restrict", help='JSON like {"1":["A"],"2":["D"]} or a file holding it')
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("distance", help="distance between two utility functions of one player")
    p.add_argument("--metric", choices=["euclid2", "ordinal"], required=True)
    p.add_argument("--player", required=True)
    p.add_argument("--u", required=True, help="game holding the reference utility")
    p.add_argument("--v", help="game holding the other utility")
    p.add_argument("--v-model", help="incomplete model holding the other utility")
    p.add_argument("--v-type", help="type of --v-model whose utility is used")
    p.add_argument("--belief", help="belief file for the ordinal metric")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("verify", help="check a characterization theorem on witnesses")
    p.add_argument("theorem", choices=sorted(THEOREMS))
    p.add_argument("--game", required=True)
    p.add_argument("--model", help="complete model")
    p.add_argument("--type", help="complete type t*")
    p.add_argument("--incomplete", help="incomplete model")
    p.add_argument("--theta", help="incomplete type θ*")
    p.add_argument("--choice", required=True)
    p.add_argument("--construct", action="store_true", help="build the missing counterpart model")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="run the fixture corpus and property suites")
    p.add_argument("--filter", help="glob over entry ids, e.g. 'lemma4.*'")
    p.add_argument("--strict-paper", action="store_true", help="count disputed fixtures as failures")
    p.add_argument("--dir", help="fixture directory (default: $LEXIEPIST_CORPUS or the bundled one)")
    p.add_argument("--samples", type=int, help="override suite sample counts")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, ModelError, VerifyInputError, PreconditionError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(json.dumps({"error": type(exc).__name__, "message": str(msg)}, ensure_ascii=False), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
