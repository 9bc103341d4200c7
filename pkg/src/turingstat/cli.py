"""``turingstat`` command line.

Exit codes: 0 analysis completed, 2 input validation failure, 3 statistical
precondition failure.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction
from importlib import resources
from typing import List, Optional

from ._numbers import Interval, decimal_str, encode_number, exact_str, two_decimals
from .criteria import TURING_HUMANNESS_THRESHOLD, humanness, humanness_bounds, required_human_rate
from .exact import DEFAULT_GRID_STEP, BinomialObservation, binomial_pmf, compatible_set, exact_significance
from .model import GameFormat, make_three_player_model, make_two_player_model
from .report import PipelineError, emit_curve, emit_report, verdict
from .simulate import SimulationConfig, power_sweep, simulate
from .trials import TrialValidationError, classify_format, dumps_trials, parse_trials

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_STATS = 3

BUNDLED = {
    "restrepo": "restrepo_replication.jsonl",
    "goostman": "goostman_2014_machine.jsonl",
}


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _show(x) -> str:
    return f"{exact_str(x)} = {decimal_str(x)}"


def _ivs(ivs) -> str:
    return " ".join(f"[{two_decimals(iv.low)}, {two_decimals(iv.high)}]" for iv in ivs) or "none"


def cmd_analyze(args) -> int:
    if args.bundled:
        ref = resources.files("turingstat.data").joinpath(BUNDLED[args.bundled])
        with ref.open("r", encoding="utf-8") as fh:
            text = fh.read()
        stream = io.StringIO(text)
        stream.name = BUNDLED[args.bundled]
        dataset = parse_trials(stream, format_hint=args.format)
    elif args.path:
        dataset = parse_trials(args.path, format_hint=args.format)
    else:
        raise InputError("give a trial file or --bundled NAME")
    v = verdict(dataset, p0=args.p0, level=args.level, humanness_threshold=args.threshold,
                grid_step=args.grid_step, refine=args.refine)
    sys.stdout.write(emit_report(v, "json" if args.json else "text"))
    return EXIT_OK


def cmd_pmf(args) -> int:
    obs = BinomialObservation(args.n, args.k)
    value = binomial_pmf(obs, args.p)
    _emit(args, {"n": obs.n, "k": obs.k, "p": encode_number(args.p), "pmf": encode_number(value)},
          f"pmf(n={obs.n}, k={obs.k}, p={exact_str(args.p)}): {_show(value)}\n")
    return EXIT_OK


def cmd_significance(args) -> int:
    r = exact_significance(BinomialObservation(args.n, args.k), args.p0, args.level)
    payload = {
        "n": args.n, "k": args.k, "p0": encode_number(r.p0), "level": encode_number(r.level),
        "pmf_at_k": encode_number(r.pmf_at_k), "tail_mass": encode_number(r.tail_mass),
        "significant": r.significant, "contributing_outcomes": sorted(r.contributing_outcomes),
    }
    text = (
        f"pmf_at_k: {_show(r.pmf_at_k)}\n"
        f"tail_mass: {_show(r.tail_mass)}\n"
        f"contributing_outcomes: {', '.join(map(str, sorted(r.contributing_outcomes)))}\n"
        f"significant={'true' if r.significant else 'false'} at level {exact_str(r.level)}\n"
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_interval(args) -> int:
    cs = compatible_set(BinomialObservation(args.n, args.k), args.level, args.grid_step, args.refine)
    enc = lambda ivs: [[encode_number(iv.low), encode_number(iv.high)] for iv in ivs]  # noqa: E731
    payload = {
        "n": args.n, "k": args.k, "level": encode_number(cs.level), "grid_step": encode_number(cs.grid_step),
        "compatible": enc(cs.compatible), "significant": enc(cs.significant),
        "undetermined": [[encode_number(a), encode_number(b)] for a, b in cs.undetermined],
        "crossings": [encode_number(c.point) for c in cs.crossings],
    }
    lines = [f"compatible: {_ivs(cs.compatible)}", f"significant: {_ivs(cs.significant)}"]
    if cs.undetermined:
        lines.append("undetermined: " + " ".join(f"({two_decimals(a)}, {two_decimals(b)})" for a, b in cs.undetermined))
    for c in cs.crossings:
        lines.append(f"crossing: {decimal_str(c.point)} (+/- {decimal_str((c.high - c.low) / 2)})")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_humanness(args) -> int:
    payload = {}
    lines = []
    if args.human_correct is None:
        model = make_three_player_model(args.misid)
    else:
        model = make_two_player_model(args.misid, args.human_correct)
    score = humanness(model)
    payload["format"] = model.format.value
    payload["ratio"] = encode_number(score.ratio)
    payload["denominator"] = encode_number(score.denominator)
    lines.append(f"humanness ({model.format.value}): {_show(score.ratio)}")
    if args.misid_high is not None:
        lo = args.misid_low if args.misid_low is not None else Fraction(0)
        b: Interval = humanness_bounds(lo, args.misid_high, score.denominator)
        payload["bounds"] = [encode_number(b.low), encode_number(b.high)]
        lines.append(f"bounds: [{exact_str(b.low)}, {exact_str(b.high)}] = [{two_decimals(b.low)}, {two_decimals(b.high)}]")
    req = required_human_rate(args.misid, args.threshold)
    payload["required_human_rate"] = encode_number(req.rate)
    payload["required_human_rate_overflow"] = req.overflow
    lines.append(
        f"required human rate for threshold {exact_str(req.threshold)}: {_show(req.rate)}"
        + (" (overflow: unreachable)" if req.overflow else "")
    )
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.format is GameFormat.TWO_PLAYER or args.p_human is not None:
        if args.p_human is None:
            raise InputError("two-player simulation needs --p-human")
        model = make_two_player_model(args.p_misid, args.p_human)
    else:
        model = make_three_player_model(args.p_misid)
    cfg = SimulationConfig(model, args.trials, args.human_trials, args.seed)
    text = dumps_trials(simulate(cfg), "csv" if args.csv else "jsonl")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_curve(args) -> int:
    text = emit_curve(BinomialObservation(args.n, args.k), args.level, args.grid_step)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_classify(args) -> int:
    fmt = classify_format(args.paired, args.forced)
    _emit(args, {"format": fmt.value}, fmt.value + "\n")
    return EXIT_OK


def cmd_power(args) -> int:
    rows = power_sweep(args.p_true, args.p0, args.level, args.n, args.replications, args.seed)
    payload = {"rows": [{"n": r.n, "replications": r.replications, "rejections": r.rejections} for r in rows]}
    text = "n,replications,rejections,rejection_rate\n" + "".join(
        f"{r.n},{r.replications},{r.rejections},{r.rejection_rate!r}\n" for r in rows
    )
    _emit(args, payload, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turingstat", description="Exact statistics for imitation-game trials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, p0=False, level=False, grid=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if p0:
            p.add_argument("--p0", type=_rational, default=Fraction(1, 2), help="null probability (default 1/2)")
        if level:
            p.add_argument("--level", type=_rational, default=Fraction(1, 100), help="significance level (default 0.01)")
        if grid:
            p.add_argument("--grid-step", type=_rational, default=DEFAULT_GRID_STEP, help="scan step (default 0.01)")
            p.add_argument("--refine", action="store_true", help="bisect boundary gaps to width 1e-6")

    p = sub.add_parser("analyze", help="full verdict pipeline on a trial file")
    p.add_argument("path", nargs="?", help="JSON-lines or CSV trial file")
    p.add_argument("--bundled", choices=sorted(BUNDLED), help="use a bundled dataset instead of a path")
    p.add_argument("--format", type=GameFormat, choices=list(GameFormat), help="expected game format")
    p.add_argument("--threshold", type=_rational, default=TURING_HUMANNESS_THRESHOLD, help="humanness threshold (default 3/5)")
    common(p, p0=True, level=True, grid=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pmf", help="binomial probability of k successes in n trials")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("p", type=_rational)
    common(p)
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("significance", help="equally-or-less-probable significance test")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    common(p, p0=True, level=True)
    p.set_defaults(func=cmd_significance)

    p = sub.add_parser("interval", help="grid scan of compatible success probabilities")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    common(p, level=True, grid=True)
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("humanness", help="humanness ratio, bounds and required human rate")
    p.add_argument("misid", type=_rational, help="machine misidentification probability")
    p.add_argument("--human-correct", type=_rational, help="human correct rate (two-player); omit for three-player")
    p.add_argument("--misid-low", type=_rational)
    p.add_argument("--misid-high", type=_rational)
    p.add_argument("--threshold", type=_rational, default=TURING_HUMANNESS_THRESHOLD)
    common(p)
    p.set_defaults(func=cmd_humanness)

    p = sub.add_parser("simulate", help="seeded synthetic trials (JSON-lines or CSV)")
    p.add_argument("--p-misid", type=_rational, required=True)
    p.add_argument("--p-human", type=_rational, help="human correct probability (two-player)")
    p.add_argument("--trials", type=int, required=True, help="joint trials, or machine sessions in two-player")
    p.add_argument("--human-trials", type=int, default=0)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--format", type=GameFormat, choices=list(GameFormat), default=GameFormat.THREE_PLAYER)
    p.add_argument("--csv", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("curve", help="CSV of p,tail_mass,significant over the grid")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--level", type=_rational, default=Fraction(1, 100))
    p.add_argument("--grid-step", type=_rational, default=DEFAULT_GRID_STEP)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("classify", help="three-player or two-player design")
    p.add_argument("--paired", action=argparse.BooleanOptionalAction, required=True,
                   help="interrogator converses with both respondents in one trial")
    p.add_argument("--forced", action=argparse.BooleanOptionalAction, required=True,
                   help="verdicts must be complementary")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("power", help="rejection frequency by trial count")
    p.add_argument("--p-true", type=_rational, required=True)
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--replications", type=int, default=1000)
    p.add_argument("--seed", type=_seed, default=0)
    common(p, p0=True, level=True)
    p.set_defaults(func=cmd_power)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TrialValidationError, InputError, OSError) as exc:
        print(f"turingstat: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PipelineError, ValueError, ZeroDivisionError) as exc:
        print(f"turingstat: {exc}", file=sys.stderr)
        return EXIT_STATS


if __name__ == "__main__":
    sys.exit(main())
