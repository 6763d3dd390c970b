"""Command line front end: one-shot parsing, an interactive loop,
benchmark sweeps, and the HTTP service launcher."""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import IO, Iterator

from . import synth
from .baseline import (
    ComplexityParams,
    compare_engines,
    predict_chart_ops,
    predict_recursive_ops,
    recursive_parse,
    DEFAULT_WORK_BUDGET,
)
from .chart import ChartParser, IconInstance, ParserConfig
from .compatibility import FadingConfig
from .errors import (
    IconParseError,
    LexiconError,
    SequenceTooLongError,
    UnknownIconError,
    WorkBudgetError,
)
from .lexicon import BUILTIN_LEXICONS, Lexicon, builtin_lexicon, load_lexicon
from .report import (
    ParseReport,
    build_report,
    compact_interpretation,
    format_score,
    interpretation_payload,
)

EXIT_BAD_LEXICON = 2
EXIT_UNKNOWN_ICON = 3
EXIT_SEQUENCE_TOO_LONG = 4

BENCH_COLUMNS = [
    "N",
    "V",
    "engine",
    "structure_compat_evals",
    "assignment_scorings",
    "interpretations_scored",
    "wall_ms",
    "predicted_ops",
]


def resolve_lexicon(spec: str) -> Lexicon:
    """A path to a lexicon file, or the name of a builtin sample."""
    path = Path(spec)
    if path.exists():
        return load_lexicon(path)
    if spec in BUILTIN_LEXICONS:
        return builtin_lexicon(spec)
    raise LexiconError(
        f"no such lexicon file or builtin: {spec!r} (builtins: {', '.join(BUILTIN_LEXICONS)})"
    )


def config_from_args(args: argparse.Namespace) -> ParserConfig:
    return ParserConfig(
        fading=FadingConfig(args.gamma),
        pair_threshold=args.threshold,
        top_k_assignments=args.top_k,
        top_m_interpretations=args.top_m,
        strict_fill=args.strict_fill,
    )


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--gamma", type=float, default=0.5, help="fading base, in (0, 1)")
    sub.add_argument(
        "--threshold", type=float, default=0.1,
        help="minimum raw compatibility to enter the chart (accepts -inf)",
    )
    sub.add_argument("--top-k", type=int, default=3, help="assignments kept per predicate")
    sub.add_argument("--top-m", type=int, default=10, help="interpretations kept")
    sub.add_argument(
        "--strict-fill", action="store_true",
        help="require every case slot to be filled (no partial assignments)",
    )


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iconparse")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("parse", help="parse one icon sequence and print the rankings")
    p.add_argument("--lexicon", required=True, help="lexicon file path or builtin name")
    p.add_argument("--icons", default="", help="comma-separated icon ids")
    _add_config_flags(p)
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.add_argument("--engine", choices=("chart", "recursive", "both"), default="chart")
    p.add_argument("--budget", type=int, default=DEFAULT_WORK_BUDGET,
                   help="work cutoff for the recursive engine")
    p.set_defaults(func=cmd_parse)

    p = subs.add_parser("repl", help="interactive session using the incremental operations")
    p.add_argument("--lexicon", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_repl)

    p = subs.add_parser("bench", help="sweep worst-case sizes and emit CSV counters")
    p.add_argument("--n-from", type=int, default=2)
    p.add_argument("--n-to", type=int, default=6)
    p.add_argument("--valency", type=int, default=2)
    _add_config_flags(p)
    p.add_argument("--engine", choices=("chart", "recursive", "both"), default="both")
    p.add_argument("--a", type=int, default=1, help="role/filler scoring cost ratio")
    p.add_argument("--b", type=int, default=1, help="assignment scoring cost ratio")
    p.add_argument("--budget", type=int, default=DEFAULT_WORK_BUDGET)
    p.set_defaults(func=cmd_bench)

    p = subs.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--lexicon", required=True)
    _add_config_flags(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ttl", type=float, default=1800.0, help="idle session expiry, seconds")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    return args.func(args)


def console_main() -> None:
    sys.exit(main())


# -- parse --------------------------------------------------------------


def cmd_parse(args: argparse.Namespace) -> int:
    try:
        lexicon = resolve_lexicon(args.lexicon)
    except LexiconError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_LEXICON
    ids = [token for token in args.icons.split(",") if token]
    config = config_from_args(args)
    try:
        if args.engine == "both":
            comparison = compare_engines(lexicon, ids, config, args.budget)
            parser = ChartParser(lexicon, config)
            parser.parse_from_scratch(ids)
            report = build_report(
                lexicon, parser.sequence, parser.interpretations_table,
                comparison.chart_counters, config.fading, comparison.chart_wall_s * 1000,
            )
            if args.format == "machine":
                doc = {
                    "engine": "both",
                    "equal": comparison.equal,
                    "divergence": comparison.divergence,
                    "chart": report.to_dict(),
                    "recursive_counters": comparison.recursive_counters.as_dict(),
                    "recursive_wall_ms": comparison.recursive_wall_s * 1000,
                }
                print(json.dumps(doc))
            else:
                render_human(report, sys.stdout)
                verdict = "engines agree on the ranking" if comparison.equal else (
                    f"ENGINES DISAGREE: {comparison.divergence}"
                )
                print(verdict)
                print(f"recursive counters: {comparison.recursive_counters.as_dict()}")
            return 0

        if args.engine == "chart":
            parser = ChartParser(lexicon, config)
            t0 = time.perf_counter()
            parser.parse_from_scratch(ids)
            wall_ms = (time.perf_counter() - t0) * 1000
            instances = parser.sequence
            interpretations = parser.interpretations_table
            counters = parser.counters
        else:
            t0 = time.perf_counter()
            result = recursive_parse(lexicon, ids, config, args.budget)
            wall_ms = (time.perf_counter() - t0) * 1000
            instances = tuple(
                IconInstance(pos, icon_id, pos) for pos, icon_id in enumerate(ids, start=1)
            )
            interpretations = result.interpretations
            counters = result.counters
    except UnknownIconError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_ICON
    except SequenceTooLongError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEQUENCE_TOO_LONG
    except WorkBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    report = build_report(lexicon, instances, interpretations, counters, config.fading, wall_ms)
    if args.format == "machine":
        print(report.to_json())
    else:
        render_human(report, sys.stdout)
    return 0


def render_human(report: ParseReport, out: IO[str]) -> None:
    interps = report.interpretations
    if interps:
        print(compact_interpretation(interps[0]), file=out)
    for interp in interps:
        print(f"#{interp['rank']} score={format_score(interp['score'])}", file=out)
        for assignment in interp["assignments"]:
            if not assignment["fills"]:
                print(f"  {assignment['predicate']} (no fillers)", file=out)
                continue
            for f in assignment["fills"]:
                print(
                    "  {pred} -{case}-> {cand}   value={value}"
                    " (raw={raw}, distance={d}, fading={fade})".format(
                        pred=assignment["predicate"],
                        case=f["case"],
                        cand=f["candidate"],
                        value=format_score(f["value"]),
                        raw=format_score(f["raw"]),
                        d=f["distance"],
                        fade=format_score(f["fading"]),
                    ),
                    file=out,
                )
    print(f"counters: {report.counters}", file=out)
    print(f"wall_ms: {report.wall_ms:.3f}", file=out)


# -- repl ---------------------------------------------------------------


def cmd_repl(args: argparse.Namespace) -> int:
    try:
        lexicon = resolve_lexicon(args.lexicon)
    except LexiconError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_LEXICON
    run_repl(lexicon, config_from_args(args))
    return 0


def run_repl(
    lexicon: Lexicon,
    config: ParserConfig,
    stdin: IO[str] | None = None,
    stdout: IO[str] | None = None,
) -> None:
    """Line-oriented loop over one parser session.  Errors are reported and
    the loop continues; the session state is never corrupted by a failed
    command."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    parser = ChartParser(lexicon, config)
    parser.parse_from_scratch([])
    print("commands: add <icon ...> | rm <position ...> | show | config | quit", file=stdout)
    while True:
        print("> ", end="", file=stdout, flush=True)
        line = stdin.readline()
        if not line:
            break
        tokens = line.split()
        if not tokens:
            continue
        command, *rest = tokens
        try:
            if command in ("quit", "exit"):
                break
            elif command == "add":
                parser.add_icons(rest)
                _print_state(parser, stdout)
            elif command == "rm":
                positions = [int(token) for token in rest]
                instance_ids = [parser.instance_at(pos).instance_id for pos in positions]
                parser.remove_icons(instance_ids)
                _print_state(parser, stdout)
            elif command == "show":
                _print_state(parser, stdout)
            elif command == "config":
                cfg = parser.config
                print(
                    f"gamma={cfg.fading.gamma} threshold={cfg.pair_threshold} "
                    f"top_k={cfg.top_k_assignments} top_m={cfg.top_m_interpretations} "
                    f"strict_fill={cfg.strict_fill} max_len={cfg.max_sequence_length}",
                    file=stdout,
                )
            else:
                print(
                    f"unknown command {command!r}; try: add, rm, show, config, quit",
                    file=stdout,
                )
        except (IconParseError, ValueError) as exc:
            print(f"error: {exc}", file=stdout)


def _print_state(parser: ChartParser, out: IO[str]) -> None:
    strip = " ".join(f"{inst.position}:{inst.lexicon_id}" for inst in parser.sequence)
    print(f"sequence: {strip}" if strip else "sequence: (empty)", file=out)
    payload = interpretation_payload(
        parser.lexicon, parser.sequence, parser.interpretations_table, parser.config.fading
    )
    for interp in payload:
        print(f"#{interp['rank']} {compact_interpretation(interp)}", file=out)


# -- bench --------------------------------------------------------------


def bench_rows(
    n_from: int,
    n_to: int,
    valency: int,
    config: ParserConfig,
    engines: str = "both",
    a: int = 1,
    b: int = 1,
    budget: int = DEFAULT_WORK_BUDGET,
) -> Iterator[list]:
    """Rows of the benchmark CSV (without the header), sweeping saturated
    worst-case instances.  Recursive runs whose predicted work exceeds the
    budget are emitted with wall_ms marked 'skipped'."""
    for n in range(n_from, n_to + 1):
        lexicon, ids = synth.worst_case_lexicon(n, valency)
        predicted_chart: object = ""
        predicted_recursive: object = ""
        if valency >= 1 and n - 1 > valency:
            params = ComplexityParams(n, valency, a, b)
            predicted_chart = predict_chart_ops(params)
            predicted_recursive = predict_recursive_ops(params)
        if engines in ("chart", "both"):
            parser = ChartParser(lexicon, config)
            t0 = time.perf_counter()
            parser.parse_from_scratch(ids)
            wall = (time.perf_counter() - t0) * 1000
            c = parser.counters
            yield [
                n, valency, "chart",
                c.structure_compat_evals, c.assignment_scorings, c.interpretations_scored,
                f"{wall:.3f}", predicted_chart,
            ]
        if engines in ("recursive", "both"):
            try:
                t0 = time.perf_counter()
                result = recursive_parse(lexicon, ids, config, budget)
                wall = (time.perf_counter() - t0) * 1000
                c = result.counters
                yield [
                    n, valency, "recursive",
                    c.structure_compat_evals, c.assignment_scorings, c.interpretations_scored,
                    f"{wall:.3f}", predicted_recursive,
                ]
            except WorkBudgetError:
                yield [n, valency, "recursive", "", "", "", "skipped", predicted_recursive]


def cmd_bench(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    writer = csv.writer(sys.stdout)
    writer.writerow(BENCH_COLUMNS)
    for row in bench_rows(
        args.n_from, args.n_to, args.valency, config, args.engine, args.a, args.b, args.budget
    ):
        writer.writerow(row)
    return 0


# -- serve --------------------------------------------------------------


def cmd_serve(args: argparse.Namespace) -> int:
    try:
        lexicon = resolve_lexicon(args.lexicon)
    except LexiconError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_LEXICON
    import uvicorn

    from .service import create_app

    app = create_app(lexicon, config_from_args(args), session_ttl=args.ttl)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0
