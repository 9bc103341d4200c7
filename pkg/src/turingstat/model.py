"""Bernoulli models of the two imitation-game formats.

Each interrogation of a respondent is a two-outcome experiment: the
interrogator declares the respondent human or machine.  In the three-player
game the interrogator must give complementary verdicts on the pair, so the
machine is misidentified exactly when the human is, and a single number
(``p_machine_misid``) fixes all four event probabilities.  In the two-player
game machine and human sessions are separate and the two probabilities are
unrelated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ._numbers import Real, check_tolerance, to_probability, unify


class GameFormat(str, enum.Enum):
    THREE_PLAYER = "three-player"
    TWO_PLAYER = "two-player"

    def __str__(self) -> str:
        return self.value


class Verdict(str, enum.Enum):
    DECLARED_HUMAN = "human"
    DECLARED_MACHINE = "machine"

    def __str__(self) -> str:
        return self.value

    @property
    def opposite(self) -> "Verdict":
        if self is Verdict.DECLARED_HUMAN:
            return Verdict.DECLARED_MACHINE
        return Verdict.DECLARED_HUMAN


class RespondentKind(str, enum.Enum):
    MACHINE = "machine"
    HUMAN = "human"

    def __str__(self) -> str:
        return self.value

    def verdict_if(self, correct: bool) -> Verdict:
        """Verdict the interrogator gives this respondent when ``correct``."""
        right = Verdict(self.value)
        return right if correct else right.opposite


@dataclass(frozen=True)
class OutcomeEvent:
    """One elementary event: a respondent kind identified (in)correctly.

    Machine-incorrect is the machine's "success" (it passed as human);
    human-correct is the human's success.
    """

    kind: RespondentKind
    correct: bool

    @property
    def is_success(self) -> bool:
        return (self.kind is RespondentKind.MACHINE) != self.correct


class JointOutcome(enum.Enum):
    """Outcomes of one three-player trial viewed as a single experiment."""

    BOTH_MISIDENTIFIED = "both-misidentified"  # machine declared human, human declared machine
    BOTH_CORRECT = "both-correct"


@dataclass(frozen=True)
class BernoulliModel:
    """Probability assignment for one game format.

    Three-player models store only ``p_machine_misid``; the human's
    correct-identification probability is derived from it, so the
    complementarity constraint cannot be violated.  Use
    :func:`make_three_player_model` / :func:`make_two_player_model`.
    """

    format: GameFormat
    p_machine_misid: Real
    _p_human_correct: Optional[Real] = None

    def __post_init__(self):
        fmt = GameFormat(self.format)
        object.__setattr__(self, "format", fmt)
        object.__setattr__(self, "p_machine_misid", to_probability(self.p_machine_misid, "p_machine_misid"))
        if fmt is GameFormat.THREE_PLAYER:
            if self._p_human_correct is not None:
                raise ValueError("three-player models derive p_human_correct; do not pass it")
        else:
            if self._p_human_correct is None:
                raise ValueError("two-player models need p_human_correct")
            object.__setattr__(
                self, "_p_human_correct", to_probability(self._p_human_correct, "p_human_correct")
            )

    @property
    def p_human_correct(self) -> Real:
        if self.format is GameFormat.THREE_PLAYER:
            return 1 - self.p_machine_misid
        return self._p_human_correct

    @property
    def p_machine_correct(self) -> Real:
        return 1 - self.p_machine_misid

    @property
    def p_human_misid(self) -> Real:
        return 1 - self.p_human_correct

    @property
    def exact(self) -> bool:
        return isinstance(self.p_machine_misid, Fraction) and isinstance(self.p_human_correct, Fraction)


def make_three_player_model(p_machine_misid) -> BernoulliModel:
    return BernoulliModel(GameFormat.THREE_PLAYER, p_machine_misid)


def make_two_player_model(p_machine_misid, p_human_correct) -> BernoulliModel:
    return BernoulliModel(GameFormat.TWO_PLAYER, p_machine_misid, p_human_correct)


def event_probability(model: BernoulliModel, event: OutcomeEvent) -> Real:
    if event.kind is RespondentKind.MACHINE:
        return model.p_machine_correct if event.correct else model.p_machine_misid
    return model.p_human_correct if event.correct else model.p_human_misid


def joint_probability(model: BernoulliModel, outcome: JointOutcome) -> Real:
    """Probability of a joint three-player outcome.

    Only meaningful when the two identifications are logically tied; for a
    two-player model the pair has no joint sample space and this raises.
    """
    if model.format is not GameFormat.THREE_PLAYER:
        raise ValueError("joint outcomes are undefined for two-player models")
    outcome = JointOutcome(outcome)
    if outcome is JointOutcome.BOTH_MISIDENTIFIED:
        return model.p_machine_misid
    return 1 - model.p_machine_misid


def is_equal_recognition_point(model: BernoulliModel, tolerance=None) -> bool:
    """True when machine and human are equally likely to be declared human.

    ``tolerance`` defaults to 0 for exact models and 1e-12 for float models.
    """
    a, b = unify(model.p_machine_misid, model.p_human_correct)
    tol = check_tolerance(tolerance, a, b)
    return abs(a - b) <= tol
