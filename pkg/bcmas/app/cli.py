"""
Command-line front end.

    python -m bcmas.app.cli ts corpus/sumo_agent.bc --dot
    python -m bcmas.app.cli conflicts corpus/sumo_union.toml --max-size 2
    python -m bcmas.app.cli resolve corpus/table_union.toml \
        --actions lift_l,lift_r --state "table(onfloor)" --target "table(lifted)"
    python -m bcmas.app.cli cover corpus/sumo_agent.bc --actions "" --state "-out(a), at(a,2)"

Inputs ending in `.toml` are MAS manifests and stand for the composed
description of their stage; anything else is read as a `.bc` file.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .composer import AbPolicy, auto_resolve, covered_laws, explore_global, potential_conflicts
from .config import get_settings
from .engine import enumerate_models
from .errors import BcError
from .grounder import ground
from .model import format_description, format_law, validate
from .parser import parse
from .properties import PropertyReport, check_lemma1, check_lemma2, random_description
from .schemas import ActionDescription, Literal, Severity
from .transitions import Reasoner, export_dot, export_json, split_literals
from .translator import emit_json, emit_text, translate
from .workflow import CompositionWorkflow, Stage, load_description

logger = logging.getLogger(__name__)


def _policy(args) -> Optional[AbPolicy]:
    return AbPolicy.LAW if args.ab_per_law else None


def _is_manifest(path: str) -> bool:
    return Path(path).suffix == ".toml"


def load_input(args, stage: Optional[Stage] = None) -> ActionDescription:
    if _is_manifest(args.input):
        result = CompositionWorkflow(_policy(args)).run(args.input, stage)
        return result.description
    return load_description(args.input)


def _literals(text: str) -> List[Literal]:
    return [Literal.parse(part) for part in split_literals(text)]


def _actions(text: str) -> List[str]:
    return split_literals(text)


LITERAL_OPTIONS = ("--actions", "--state", "--target")


def join_literal_options(argv: List[str]) -> List[str]:
    """
    Fold `--state -out(a)` into `--state=-out(a)`: argparse would otherwise
    read a negative literal as an option.
    """
    joined: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in LITERAL_OPTIONS and i + 1 < len(argv):
            joined.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def _reasoner(args, desc: ActionDescription) -> Reasoner:
    return Reasoner(desc, max_candidates=args.max_candidates)


# subcommands

def cmd_check(args) -> int:
    text = Path(args.input).read_text(encoding="utf-8") if not _is_manifest(args.input) else None
    if text is not None:
        spec = parse(text)
        desc, stats = ground(spec)
        print(f"{args.input}: {len(spec.laws)} schematic laws, {stats.ground_laws} ground laws")
    else:
        desc = load_input(args)
        print(f"{args.input}: {len(desc.statics)} static and {len(desc.dynamics)} dynamic laws")
    diagnostics = validate(desc)
    for diagnostic in diagnostics:
        print(str(diagnostic))
    return 1 if any(d.severity == Severity.ERROR for d in diagnostics) else 0


def cmd_ground(args) -> int:
    sys.stdout.write(format_description(load_input(args)))
    return 0


def cmd_translate(args) -> int:
    program = translate(load_input(args), args.horizon)
    sys.stdout.write(emit_json(program) + "\n" if args.json else emit_text(program))
    return 0


def cmd_solve(args) -> int:
    program = translate(load_input(args), args.horizon)
    models = enumerate_models(program, limit=args.limit, naive=args.naive,
                              max_candidates=args.max_candidates)
    if args.json:
        print(models.to_json())
    else:
        for i, model in enumerate(models.to_list(), start=1):
            print(f"model {i}: {' '.join(model)}")
        print(f"{len(models)} stable models")
    return 0


def cmd_ts(args) -> int:
    ts = _reasoner(args, load_input(args)).transitions()
    if args.dot:
        sys.stdout.write(export_dot(ts, show_negatives=args.show_negatives, show_ab=args.show_ab,
                                    show_idle_loops=args.show_idle_loops))
    elif args.json:
        print(export_json(ts))
    else:
        index = ts.index()
        for state, i in index.items():
            print(f"s{i + 1} {state}")
        for t in ts.transitions:
            print(f"s{index[t.source] + 1} -{{{', '.join(sorted(t.actions))}}}-> s{index[t.target] + 1}")
        print(f"{len(ts.states)} states, {len(ts.transitions)} transitions")
    return 0


def cmd_compose(args) -> int:
    if not _is_manifest(args.input):
        raise BcError(f"{args.input} is not a manifest (.toml)")
    stage = Stage(args.stage) if args.stage else None
    result = CompositionWorkflow(_policy(args)).run(args.input, stage)
    sys.stdout.write(format_description(result.description))
    for diagnostic in result.diagnostics:
        print(f"% {diagnostic}", file=sys.stderr)
    if args.reachability:
        if result.stage != Stage.GLOBAL:
            raise BcError("reachability needs the global stage")
        reasoner = _reasoner(args, result.global_view)
        report, _ = explore_global(result.global_view, result.union,
                                   max_states=args.max_states, reasoner=reasoner)
        sys.stdout.write(report.to_text())
    return 0


def cmd_conflicts(args) -> int:
    desc = load_input(args)
    report = potential_conflicts(desc, args.max_size, reasoner=_reasoner(args, desc))
    sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
    return 0


def cmd_cover(args) -> int:
    desc = load_input(args)
    state = _reasoner(args, desc).complete_state(_literals(args.state))
    laws = covered_laws(desc, _actions(args.actions), state)
    print(f"% {len(laws)} dynamic laws covered by {{{', '.join(sorted(_actions(args.actions)))}}} at {state}")
    for law in laws:
        print(f"{format_law(law)}  % {', '.join(law.groups)}")
    return 0


def cmd_resolve(args) -> int:
    desc = load_input(args, Stage.UNION)
    reasoner = _reasoner(args, desc)
    state = reasoner.complete_state(_literals(args.state))
    target = reasoner.complete_state(_literals(args.target))
    resolution = auto_resolve(desc, _actions(args.actions), state, target,
                              policy=_policy(args) or AbPolicy.HEAD, reasoner=reasoner)
    sys.stdout.write(resolution.to_json() + "\n" if args.json else resolution.to_bc())
    return 0


def cmd_verify(args) -> int:
    check = check_lemma1 if args.lemma == 1 else check_lemma2
    kwargs = {"policy": _policy(args) or AbPolicy.HEAD, "seed": args.seed} if args.lemma == 1 else {}
    descriptions = []
    if args.input:
        descriptions.append((args.input, load_input(args, Stage.UNION)))
    for offset in range(args.random):
        seed = args.seed + offset
        descriptions.append((f"random description {seed}", random_description(seed)))
    if not descriptions:
        raise BcError("nothing to verify: give an input or --random N")

    total: Optional[PropertyReport] = None
    for name, desc in descriptions:
        report = check(desc, **kwargs)
        logger.info(f"{name}: {report.checked} checks, {len(report.counterexamples)} counterexamples")
        report = report.model_copy(update={"counterexamples": [f"{name}: {c}" for c in report.counterexamples]})
        total = report if total is None else total.merge(report)
    sys.stdout.write(total.to_text())
    return 0 if total.holds else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcmas",
        description="Action language BC descriptions and their multi-agent composition.",
    )
    parser.add_argument("--log-level", default=None,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    parser.add_argument("--ab-per-law", action="store_true",
                        help="key abnormality fluents by law id instead of head literal")
    parser.add_argument("--max-candidates", type=int, default=None, metavar="N",
                        help="search nodes the solver may visit")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler, help_text: str, needs_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("input", help=".bc file or .toml manifest")
        p.set_defaults(handler=handler)
        return p

    command("check", cmd_check, "parse, ground and validate")
    command("ground", cmd_ground, "print the ground description")

    p = command("translate", cmd_translate, "emit the logic program for a horizon")
    p.add_argument("--horizon", type=_non_negative, default=1)
    p.add_argument("--json", action="store_true")

    p = command("solve", cmd_solve, "enumerate stable models")
    p.add_argument("--horizon", type=_non_negative, default=1)
    p.add_argument("--naive", action="store_true", help="brute-force subset enumeration")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = command("ts", cmd_ts, "states and transitions")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--show-negatives", action="store_true")
    p.add_argument("--show-ab", action="store_true")
    p.add_argument("--show-idle-loops", action="store_true")

    p = command("compose", cmd_compose, "compose the union or global view of a manifest")
    p.add_argument("--stage", choices=[s.value for s in Stage], default=None)
    p.add_argument("--reachability", action="store_true",
                   help="report states of the global view reachable from sound states")
    p.add_argument("--max-states", type=int, default=10000)

    p = command("conflicts", cmd_conflicts, "potential conflicts per state")
    p.add_argument("--max-size", type=int, default=None, metavar="K")
    p.add_argument("--json", action="store_true")

    p = command("cover", cmd_cover, "dynamic laws covered by a compound action at a state")
    p.add_argument("--actions", required=True, help="comma separated, may be empty")
    p.add_argument("--state", required=True, help="literals identifying one state")

    p = command("resolve", cmd_resolve, "build resolution laws for one potential conflict")
    p.add_argument("--actions", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--target", required=True, help="literals identifying the desired successor")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="check that conflicts and transitions survive the transformations")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--lemma", type=int, choices=[1, 2], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=0, metavar="N", help="also check N random descriptions")
    p.set_defaults(handler=cmd_verify)
    return parser


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("horizon must be non-negative")
    return value


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(join_literal_options(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logging.basicConfig(level=args.log_level or get_settings().log_level,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except BcError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: cannot read {e.filename}: {e.strerror}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
