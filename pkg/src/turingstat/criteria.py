"""Absolute and relative pass criteria.

The absolute criterion asks whether the machine is declared human as often as
a human is.  The relative one ("degree of humanness") divides the machine's
misidentification probability by the rate an optimal machine would reach:
1/2 in the three-player game, the human's own correct-identification rate in
the two-player game.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._numbers import Interval, Real, to_probability, to_real, unify
from .model import BernoulliModel, GameFormat, is_equal_recognition_point

# Turing's 30% over the 50% optimum.
TURING_HUMANNESS_THRESHOLD = Fraction(3, 5)
THREE_PLAYER_OPTIMUM = Fraction(1, 2)


class UndefinedRatioError(ValueError):
    """Human baseline is zero, so the humanness ratio has no value."""


@dataclass(frozen=True)
class HumannessScore:
    ratio: Real
    numerator: Real
    denominator: Real
    format: GameFormat


@dataclass(frozen=True)
class RequiredHumanRate:
    """Human correct-identification rate at which humanness hits a threshold.

    Any measured human baseline above ``rate`` puts the machine below the
    threshold.  ``overflow`` marks a rate above 1, i.e. no human baseline can
    push the machine under the threshold.
    """

    rate: Real
    threshold: Real
    machine_misid_rate: Real

    @property
    def overflow(self) -> bool:
        return self.rate > 1


def absolute_pass(model: BernoulliModel, tolerance=None) -> bool:
    return is_equal_recognition_point(model, tolerance)


def optimum_reference(model: BernoulliModel) -> Real:
    if model.format is GameFormat.THREE_PLAYER:
        return THREE_PLAYER_OPTIMUM if model.exact else float(THREE_PLAYER_OPTIMUM)
    return model.p_human_correct


def humanness(model: BernoulliModel) -> HumannessScore:
    num, den = unify(model.p_machine_misid, optimum_reference(model))
    if den == 0:
        raise UndefinedRatioError("human correct-identification probability is 0; humanness undefined")
    return HumannessScore(ratio=num / den, numerator=num, denominator=den, format=model.format)


def humanness_bounds(misid_low, misid_high, denominator) -> Interval:
    lo = to_probability(misid_low, "misid_low")
    hi = to_probability(misid_high, "misid_high")
    den = to_probability(denominator, "denominator")
    if lo > hi:
        raise ValueError(f"inverted bounds: {lo} > {hi}")
    if den == 0:
        raise ValueError("denominator must be positive")
    lo, hi, den = unify(lo, hi, den)
    return Interval(lo / den, hi / den)


def required_human_rate(machine_misid_rate, humanness_threshold=TURING_HUMANNESS_THRESHOLD) -> RequiredHumanRate:
    rate = to_probability(machine_misid_rate, "machine_misid_rate")
    t = to_real(humanness_threshold, "humanness_threshold")
    if t <= 0:
        raise ValueError(f"humanness threshold must be positive, got {t}")
    rate, t = unify(rate, t)
    return RequiredHumanRate(rate=rate / t, threshold=t, machine_misid_rate=rate)
