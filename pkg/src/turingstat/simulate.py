"""Seeded Monte Carlo experiments under a :class:`BernoulliModel`."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from ._numbers import to_probability
from .exact import _check_level, rejection_region
from .model import BernoulliModel, GameFormat, RespondentKind
from .rng import Xoshiro256, check_seed
from .trials import ExperimentDataset, Response, TrialRecord

MACHINE_STREAM = 0
HUMAN_STREAM = 1


@dataclass(frozen=True)
class SimulationConfig:
    """``trials_machine`` counts joint trials for three-player models, where
    ``trials_human`` must be 0."""

    model: BernoulliModel
    trials_machine: int
    trials_human: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.trials_machine < 1:
            raise ValueError("trials_machine must be positive")
        if self.trials_human < 0:
            raise ValueError("trials_human must be nonnegative")
        if self.model.format is GameFormat.THREE_PLAYER and self.trials_human:
            raise ValueError("three-player trials are joint; set trials_human=0")
        check_seed(self.seed)


def _width(n: int) -> int:
    return max(2, len(str(n)))


def simulate(config: SimulationConfig) -> ExperimentDataset:
    model = config.model
    source = f"simulate(seed={config.seed})"
    if model.format is GameFormat.THREE_PLAYER:
        draws = Xoshiro256(config.seed, MACHINE_STREAM).bernoulli(model.p_machine_misid, config.trials_machine)
        w = _width(config.trials_machine)
        trials = []
        for i, misid in enumerate(draws, start=1):
            correct = not misid
            trials.append(TrialRecord(
                f"t{i:0{w}d}",
                GameFormat.THREE_PLAYER,
                (
                    Response(RespondentKind.MACHINE, RespondentKind.MACHINE.verdict_if(correct)),
                    Response(RespondentKind.HUMAN, RespondentKind.HUMAN.verdict_if(correct)),
                ),
            ))
        return ExperimentDataset(GameFormat.THREE_PLAYER, tuple(trials), source)

    machine = Xoshiro256(config.seed, MACHINE_STREAM).bernoulli(model.p_machine_misid, config.trials_machine)
    human = Xoshiro256(config.seed, HUMAN_STREAM).bernoulli(model.p_human_correct, config.trials_human)
    trials = []
    w = _width(config.trials_machine)
    for i, misid in enumerate(machine, start=1):
        verdict = RespondentKind.MACHINE.verdict_if(not misid)
        trials.append(TrialRecord(f"m{i:0{w}d}", GameFormat.TWO_PLAYER, (Response(RespondentKind.MACHINE, verdict),)))
    w = _width(config.trials_human)
    for i, correct in enumerate(human, start=1):
        verdict = RespondentKind.HUMAN.verdict_if(bool(correct))
        trials.append(TrialRecord(f"h{i:0{w}d}", GameFormat.TWO_PLAYER, (Response(RespondentKind.HUMAN, verdict),)))
    return ExperimentDataset(GameFormat.TWO_PLAYER, tuple(trials), source)


@dataclass(frozen=True)
class PowerRow:
    n: int
    replications: int
    rejections: int

    @property
    def rejection_rate(self) -> float:
        return self.rejections / self.replications


def power_sweep(p_true, p0, level, trial_counts: Sequence[int], replications: int, seed: int = 0) -> List[PowerRow]:
    """Fraction of simulated experiments whose count is significant against ``p0``.

    Replication ``r`` at the ``i``-th trial count draws from stream
    ``(seed, i, r)``, so results do not depend on evaluation order.
    """
    p_true = to_probability(p_true, "p_true")
    p0 = to_probability(p0, "p0")
    level = _check_level(level)
    for name, v in (("p_true", p_true), ("p0", p0)):
        if not 0 < v < 1:
            raise ValueError(f"{name} must lie strictly inside (0, 1), got {v}")
    if replications < 1:
        raise ValueError("replications must be positive")
    check_seed(seed)
    rows = []
    for i, n in enumerate(trial_counts):
        if n < 1:
            raise ValueError(f"trial counts must be positive, got {n}")
        reject = rejection_region(n, p0, level)
        hits = 0
        for r in range(replications):
            k = Xoshiro256(seed, i, r).bernoulli_count(p_true, n)
            hits += k in reject
        rows.append(PowerRow(n, replications, hits))
    return rows
