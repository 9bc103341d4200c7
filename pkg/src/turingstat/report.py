"""Verdict pipeline and its text/JSON/CSV renderings.

JSON reports follow the ``tt-verdict/1`` schema.  Rational values are
``{"num": int, "den": int}``; float values are decimal strings.  Intervals
are two-element lists, sets of outcomes are sorted lists.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ._numbers import Interval, Real, decimal_str, encode_number, exact_str, to_probability, to_real, two_decimals
from .criteria import (
    THREE_PLAYER_OPTIMUM,
    TURING_HUMANNESS_THRESHOLD,
    HumannessScore,
    RequiredHumanRate,
    humanness,
    humanness_bounds,
    required_human_rate,
)
from .exact import (
    DEFAULT_GRID_STEP,
    BinomialObservation,
    CompatibleSet,
    RateEstimate,
    SignificanceResult,
    compatible_set,
    estimate_rates,
    exact_significance,
    grid_points,
    misid_bounds_from_correct,
)
from .model import GameFormat, make_three_player_model, make_two_player_model
from .trials import ExperimentDataset

REPORT_SCHEMA = "tt-verdict/1"
CURVE_HEADER = ("p", "tail_mass", "significant")


class PipelineError(ValueError):
    """A statistical step of :func:`verdict` failed; ``stage`` names it."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")


@dataclass(frozen=True)
class VerdictConfig:
    p0: Real = Fraction(1, 2)
    level: Real = Fraction(1, 100)
    humanness_threshold: Real = TURING_HUMANNESS_THRESHOLD
    grid_step: Real = DEFAULT_GRID_STEP
    refine: bool = False


@dataclass(frozen=True)
class TestVerdict:
    """Everything :func:`verdict` derives from one dataset.

    ``observation`` is the count that was tested: joint correct trials for
    three-player data, correct machine identifications for two-player data.
    """

    __test__ = False

    format: GameFormat
    source: str
    config: VerdictConfig
    rates: RateEstimate
    observation: BinomialObservation
    significance: SignificanceResult
    compatible: CompatibleSet
    misid_bounds: Optional[Interval]
    humanness_point: Optional[HumannessScore]
    humanness_denominator: Optional[Real]
    humanness_bounds: Optional[Interval]
    required_human_rate: Optional[RequiredHumanRate]
    human_significance: Optional[SignificanceResult] = None

    @property
    def narrative(self) -> Dict[str, Any]:
        threshold = self.config.humanness_threshold
        if self.format is GameFormat.THREE_PLAYER:
            baseline = "fixed at 1/2 (three-player optimum)"
        elif self.rates.human is None:
            baseline = "not reported"
        else:
            baseline = "measured"
        hb = self.humanness_bounds
        return {
            "null_rejected": self.significance.significant,
            "human_baseline": baseline,
            "threshold_reachable": None if hb is None else hb.high >= threshold,
            "optimum_compatible": None if hb is None else hb.low <= 1 <= hb.high,
        }


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ValueError, ZeroDivisionError) as exc:
        raise PipelineError(name, exc) from exc


def verdict(dataset: ExperimentDataset, p0=Fraction(1, 2), level=Fraction(1, 100),
            humanness_threshold=TURING_HUMANNESS_THRESHOLD, grid_step=DEFAULT_GRID_STEP,
            refine: bool = False) -> TestVerdict:
    """Run rates -> significance -> compatible set -> misidentification bounds
    -> humanness bounds on a dataset.

    The humanness denominator is 1/2 for three-player data and the measured
    human correct rate for two-player data; without human sessions humanness
    is reported absent together with the human rate that would put the
    machine exactly at ``humanness_threshold``.
    """
    p0 = _stage("config", to_probability, p0, "p0")
    level = _stage("config", to_real, level, "level")
    threshold = _stage("config", to_real, humanness_threshold, "humanness_threshold")
    if threshold <= 0:
        raise PipelineError("config", ValueError("humanness threshold must be positive"))
    config = VerdictConfig(p0, level, threshold, to_real(grid_step, "grid_step"), refine)

    rates = _stage("estimate_rates", estimate_rates, dataset)
    if dataset.format is GameFormat.THREE_PLAYER:
        obs = rates.joint
    else:
        obs = rates.machine
        if obs is None:
            raise PipelineError("estimate_rates", ValueError("no machine sessions to test"))

    sig = _stage("exact_significance", exact_significance, obs, p0, level)
    cs = _stage("compatible_set", compatible_set, obs, level, grid_step, refine)
    misid = _stage("misid_bounds", misid_bounds_from_correct, cs)
    misid_rate = rates.machine_misid_rate

    human_sig = None
    required = None
    point = None
    if dataset.format is GameFormat.THREE_PLAYER:
        denominator: Optional[Real] = THREE_PLAYER_OPTIMUM
        point = _stage("humanness", humanness, make_three_player_model(misid_rate))
    else:
        required = _stage("required_human_rate", required_human_rate, misid_rate, threshold)
        denominator = rates.human_correct_rate
        if rates.human is not None:
            human_sig = _stage("exact_significance", exact_significance, rates.human, p0, level)
        if not denominator:
            denominator = None
        else:
            point = _stage("humanness", humanness, make_two_player_model(misid_rate, denominator))

    bounds = None
    if misid is not None and denominator is not None:
        bounds = _stage("humanness_bounds", humanness_bounds, misid.low, misid.high, denominator)

    return TestVerdict(
        format=dataset.format,
        source=dataset.source,
        config=config,
        rates=rates,
        observation=obs,
        significance=sig,
        compatible=cs,
        misid_bounds=misid,
        humanness_point=point,
        humanness_denominator=denominator,
        humanness_bounds=bounds,
        required_human_rate=required,
        human_significance=human_sig,
    )


# -- JSON ------------------------------------------------------------------

def _interval(iv: Optional[Interval]):
    return None if iv is None else [encode_number(iv.low), encode_number(iv.high)]


def _obs(o: Optional[BinomialObservation]):
    return None if o is None else {"n": o.n, "k": o.k}


def _significance(s: Optional[SignificanceResult]):
    if s is None:
        return None
    return {
        "n": s.observation.n,
        "k": s.observation.k,
        "p0": encode_number(s.p0),
        "pmf_at_k": encode_number(s.pmf_at_k),
        "tail_mass": encode_number(s.tail_mass),
        "level": encode_number(s.level),
        "significant": s.significant,
        "contributing_outcomes": sorted(s.contributing_outcomes),
    }


def verdict_to_dict(v: TestVerdict) -> Dict[str, Any]:
    cs = v.compatible
    hp = v.humanness_point
    req = v.required_human_rate
    return {
        "schema": REPORT_SCHEMA,
        "source": v.source,
        "format": v.format.value,
        "config": {
            "p0": encode_number(v.config.p0),
            "level": encode_number(v.config.level),
            "humanness_threshold": encode_number(v.config.humanness_threshold),
            "grid_step": encode_number(v.config.grid_step),
            "refine": v.config.refine,
        },
        "observations": {
            "joint": _obs(v.rates.joint),
            "machine": _obs(v.rates.machine),
            "human": _obs(v.rates.human),
        },
        "rates": {
            "machine_misid": encode_number(v.rates.machine_misid_rate),
            "human_correct": encode_number(v.rates.human_correct_rate),
        },
        "significance": _significance(v.significance),
        "human_significance": _significance(v.human_significance),
        "compatible": {
            "grid_step": encode_number(cs.grid_step),
            "level": encode_number(cs.level),
            "compatible": [_interval(iv) for iv in cs.compatible],
            "significant": [_interval(iv) for iv in cs.significant],
            "undetermined": [[encode_number(a), encode_number(b)] for a, b in cs.undetermined],
            "crossings": [
                {"low": encode_number(c.low), "high": encode_number(c.high), "low_compatible": c.low_compatible}
                for c in cs.crossings
            ],
        },
        "misid_bounds": _interval(v.misid_bounds),
        "humanness_point": None if hp is None else {
            "ratio": encode_number(hp.ratio),
            "numerator": encode_number(hp.numerator),
            "denominator": encode_number(hp.denominator),
            "format": hp.format.value,
        },
        "humanness_denominator": encode_number(v.humanness_denominator),
        "humanness_bounds": _interval(v.humanness_bounds),
        "required_human_rate": None if req is None else {
            "rate": encode_number(req.rate),
            "threshold": encode_number(req.threshold),
            "machine_misid_rate": encode_number(req.machine_misid_rate),
            "overflow": req.overflow,
        },
        "narrative": v.narrative,
    }


# -- text ------------------------------------------------------------------

def _num(x: Real) -> str:
    """``exact = full decimal (two decimals)``."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return f"{x.numerator} ({two_decimals(x)})"
    return f"{exact_str(x)} = {decimal_str(x)} ({two_decimals(x)})"


def _iv_exact(iv: Interval) -> str:
    return f"[{exact_str(iv.low)}, {exact_str(iv.high)}]"


def _iv_short(iv: Interval) -> str:
    return f"[{two_decimals(iv.low)}, {two_decimals(iv.high)}]"


def _ivs(ivs) -> str:
    return " ".join(_iv_short(iv) for iv in ivs) or "none"


def _text(v: TestVerdict) -> str:
    s = v.significance
    cs = v.compatible
    lines = [
        f"turingstat verdict ({REPORT_SCHEMA})",
        f"source: {v.source or '<memory>'}",
        f"format: {v.format.value}",
        f"p0: {_num(v.config.p0)}",
        f"level: {_num(v.config.level)}",
    ]
    if v.format is GameFormat.THREE_PLAYER:
        lines.append(f"observation: n={s.observation.n} k={s.observation.k} (trials with both respondents identified)")
    else:
        lines.append(f"observation: n={s.observation.n} k={s.observation.k} (machine sessions identified as machine)")
        h = v.rates.human
        lines.append("human sessions: " + (f"n={h.n} k={h.k}" if h else "none"))
    lines += [
        f"machine_misid_rate: {_num(v.rates.machine_misid_rate)}",
        f"pmf_at_k: {_num(s.pmf_at_k)}",
        f"tail_mass: {_num(s.tail_mass)}",
        f"contributing_outcomes: {', '.join(str(j) for j in sorted(s.contributing_outcomes))}",
        f"significant={'true' if s.significant else 'false'} "
        f"(tail_mass {'<' if s.significant else '>='} level)",
        f"compatible: {_ivs(cs.compatible)}",
        f"significant_region: {_ivs(cs.significant)}",
    ]
    if cs.undetermined:
        lines.append("undetermined: " + " ".join(f"({two_decimals(a)}, {two_decimals(b)})" for a, b in cs.undetermined))
    for c in cs.crossings:
        lines.append(f"crossing: {decimal_str(c.point)} in [{decimal_str(c.low)}, {decimal_str(c.high)}]")
    if v.misid_bounds is not None:
        lines.append(f"misid_bounds: {_iv_exact(v.misid_bounds)} = {_iv_short(v.misid_bounds)}")
    if v.humanness_denominator is None:
        lines.append("human baseline: not reported")
    else:
        lines.append(f"human baseline: {_num(v.humanness_denominator)}")
    if v.humanness_point is None:
        lines.append("humanness_point: not available")
    else:
        lines.append(f"humanness_point: {_num(v.humanness_point.ratio)}")
    if v.humanness_bounds is None:
        lines.append("humanness_bounds: not available")
    else:
        lines.append(f"humanness_bounds: {_iv_exact(v.humanness_bounds)} = {_iv_short(v.humanness_bounds)}")
    req = v.required_human_rate
    if req is not None:
        lines.append(f"required_human_rate: {_num(req.rate)}")
        if req.overflow:
            lines.append(
                f"  no human baseline can put humanness below {exact_str(req.threshold)}"
            )
        else:
            pct = float(req.rate) * 100
            lines.append(
                f"  = {pct:.2f}% ({math.floor(pct)}% in whole percent); a human correct-identification "
                f"rate above {exact_str(req.rate)} puts humanness below {exact_str(req.threshold)}"
            )
    if v.human_significance is not None:
        hs = v.human_significance
        lines.append(
            f"human tail_mass: {_num(hs.tail_mass)}; significant={'true' if hs.significant else 'false'}"
        )
    return "\n".join(lines) + "\n"


def emit_report(v: TestVerdict, mode: str = "text") -> str:
    if mode == "json":
        return json.dumps(verdict_to_dict(v), indent=2) + "\n"
    if mode == "text":
        return _text(v)
    raise ValueError(f"unknown report mode {mode!r}")


def emit_curve(obs, level=Fraction(1, 100), grid_step=DEFAULT_GRID_STEP) -> str:
    """CSV of ``p,tail_mass,significant`` over the grid, for plotting."""
    if not isinstance(obs, BinomialObservation):
        obs = BinomialObservation(*obs)
    level = to_real(level, "level")
    step = to_real(grid_step, "grid_step")
    pts = grid_points(step)
    if isinstance(level, float):
        pts = [float(p) for p in pts]
    places = 2
    if isinstance(step, Fraction):
        while (step * 10**places).denominator != 1 and places < 12:
            places += 1
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CURVE_HEADER)
    for p in pts:
        r = exact_significance(obs, p, level)
        p_str = f"{float(p):.{places}f}" if isinstance(p, Fraction) and (p * 10**places).denominator == 1 else decimal_str(p)
        w.writerow([p_str, decimal_str(r.tail_mass), "true" if r.significant else "false"])
    return buf.getvalue()
