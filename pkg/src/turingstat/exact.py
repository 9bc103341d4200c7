"""Exact binomial pmf, the "equally or less probable" significance test, and
the scan over success probabilities that are compatible with an observation.

With rational inputs everything is computed in :class:`~fractions.Fraction`
arithmetic, so ties between outcome probabilities (e.g. the symmetry at
p = 1/2) are detected exactly.  Float inputs use a relative tie tolerance of
1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence, Tuple, Union

from ._numbers import FLOAT_TOLERANCE, Interval, Real, is_exact, to_probability, to_real
from .model import GameFormat, RespondentKind

if TYPE_CHECKING:
    from .trials import ExperimentDataset

DEFAULT_GRID_STEP = Fraction(1, 100)
REFINE_WIDTH = Fraction(1, 10**6)


@dataclass(frozen=True)
class BinomialObservation:
    n: int
    k: int

    def __post_init__(self):
        for name in ("n", "k"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"{name} must be an int, got {v!r}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k must satisfy 0 <= k <= n, got k={self.k}, n={self.n}")

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)


@dataclass(frozen=True)
class SignificanceResult:
    observation: BinomialObservation
    p0: Real
    pmf_at_k: Real
    tail_mass: Real
    level: Real
    significant: bool
    contributing_outcomes: frozenset = field(default_factory=frozenset)


def _coerce_obs(obs, k=None) -> BinomialObservation:
    if isinstance(obs, BinomialObservation):
        return obs
    if k is None:
        n, k = obs
        return BinomialObservation(n, k)
    return BinomialObservation(obs, k)


def pmf_table(n: int, p) -> List[Real]:
    """``[P(X = j) for j in 0..n]`` for ``X ~ Binomial(n, p)``."""
    p = to_probability(p)
    q = 1 - p
    return [math.comb(n, j) * p**j * q ** (n - j) for j in range(n + 1)]


def binomial_pmf(obs, p) -> Real:
    """``C(n, k) p^k (1-p)^(n-k)``; exact when ``p`` is rational.

    ``obs`` is a :class:`BinomialObservation` or an ``(n, k)`` pair.
    """
    obs = _coerce_obs(obs)
    p = to_probability(p)
    return math.comb(obs.n, obs.k) * p**obs.k * (1 - p) ** (obs.n - obs.k)


def _at_most(a: Real, b: Real, exact: bool) -> bool:
    """``a <= b`` where near-equal floats count as tied."""
    if exact:
        return a <= b
    return a <= b or abs(a - b) <= FLOAT_TOLERANCE * max(abs(a), abs(b))


def _check_level(level) -> Real:
    level = to_real(level, "level")
    if not 0 < level < 1:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    return level


def exact_significance(obs, p0, level) -> SignificanceResult:
    """Sum the probability of the observed count and of every count that is
    equally or less probable under ``p0``; significant iff that sum is
    strictly below ``level``.

    An observation that is impossible under a degenerate ``p0`` gets tail
    mass 0 and is significant.
    """
    obs = _coerce_obs(obs)
    p0 = to_probability(p0, "p0")
    level = _check_level(level)
    exact = is_exact(p0, level)
    if not exact:
        p0, level = float(p0), float(level)
    table = pmf_table(obs.n, p0)
    at_k = table[obs.k]
    contributing = frozenset(j for j, v in enumerate(table) if _at_most(v, at_k, exact))
    tail = sum((table[j] for j in contributing), Fraction(0) if exact else 0.0)
    if exact:
        tail = Fraction(tail)
    else:
        tail = min(float(tail), 1.0)
    return SignificanceResult(
        observation=obs,
        p0=p0,
        pmf_at_k=at_k,
        tail_mass=tail,
        level=level,
        significant=tail < level,
        contributing_outcomes=contributing,
    )


def tail_masses(n: int, p0) -> List[Real]:
    """Tail mass of every count ``k`` in ``0..n`` at once (sort + prefix sums)."""
    p0 = to_probability(p0, "p0")
    exact = isinstance(p0, Fraction)
    table = pmf_table(n, p0)
    order = sorted(range(n + 1), key=table.__getitem__)
    out: List[Real] = [0] * (n + 1)
    running = Fraction(0) if exact else 0.0
    i = 0
    while i <= n:
        # group ties so every member of a tie class sees the whole class
        j = i
        group_sum = table[order[i]]
        while j + 1 <= n and _at_most(table[order[j + 1]], table[order[i]], exact):
            j += 1
            group_sum += table[order[j]]
        running += group_sum
        for idx in order[i : j + 1]:
            out[idx] = running if exact else min(running, 1.0)
        i = j + 1
    return out


def rejection_region(n: int, p0, level) -> frozenset:
    """Counts ``k`` that :func:`exact_significance` declares significant."""
    level = _check_level(level)
    p0 = to_probability(p0, "p0")
    if not is_exact(p0, level):
        p0, level = float(p0), float(level)
    return frozenset(k for k, t in enumerate(tail_masses(n, p0)) if t < level)


@dataclass(frozen=True)
class Crossing:
    """Bracket ``(low, high)`` around a classification change, narrowed by bisection."""

    low: Real
    high: Real
    low_compatible: bool

    @property
    def point(self) -> Real:
        return (self.low + self.high) / 2


@dataclass(frozen=True)
class CompatibleSet:
    """Grid scan of success probabilities against one observation.

    ``compatible`` and ``significant`` hold maximal closed intervals of grid
    points, sorted; ``undetermined`` holds the open gaps between neighbouring
    grid points that fall in different classes (unrefined scans only);
    ``crossings`` holds the bisected brackets (refined scans only).
    """

    observation: BinomialObservation
    grid_step: Real
    level: Real
    compatible: Tuple[Interval, ...]
    significant: Tuple[Interval, ...]
    undetermined: Tuple[Tuple[Real, Real], ...] = ()
    crossings: Tuple[Crossing, ...] = ()
    grid: Tuple[Tuple[Real, bool], ...] = field(default=(), repr=False, compare=False)

    def is_compatible(self, p) -> Optional[bool]:
        """Grid classification of ``p``; ``None`` if ``p`` is not a grid point."""
        for q, sig in self.grid:
            if q == p:
                return not sig
        return None


def grid_points(step) -> List[Real]:
    step = to_real(step, "grid_step")
    if step <= 0:
        raise ValueError(f"grid_step must be positive, got {step}")
    if step > 1:
        raise ValueError(f"grid_step must not exceed 1, got {step}")
    if isinstance(step, Fraction):
        count = math.floor(1 / step)
        pts = [i * step for i in range(count + 1)]
        if pts[-1] != 1:
            pts.append(Fraction(1))
        return pts
    count = math.floor(1 / step + FLOAT_TOLERANCE)
    pts = [min(i * step, 1.0) for i in range(count + 1)]
    if abs(pts[-1] - 1.0) > FLOAT_TOLERANCE:
        pts.append(1.0)
    else:
        pts[-1] = 1.0
    return pts


def _runs(points: Sequence[Tuple[Real, bool]], want: bool) -> Tuple[Interval, ...]:
    out = []
    start = None
    prev = None
    for p, sig in points:
        if sig == want:
            if start is None:
                start = p
            prev = p
        elif start is not None:
            out.append(Interval(start, prev))
            start = None
    if start is not None:
        out.append(Interval(start, prev))
    return tuple(out)


def _bisect(obs: BinomialObservation, level: Real, lo: Real, hi: Real, lo_sig: bool, width: Real) -> Crossing:
    while hi - lo > width:
        mid = (lo + hi) / 2
        if exact_significance(obs, mid, level).significant == lo_sig:
            lo = mid
        else:
            hi = mid
    return Crossing(lo, hi, low_compatible=not lo_sig)


def compatible_set(obs, level, grid_step=DEFAULT_GRID_STEP, refine: bool = False) -> CompatibleSet:
    """Classify every grid point ``p`` as compatible (not significant) or not.

    With ``refine`` each boundary gap is bisected down to width <= 1e-6.
    """
    obs = _coerce_obs(obs)
    level = _check_level(level)
    pts = grid_points(grid_step)
    if not is_exact(level):
        pts = [float(p) for p in pts]
    classified = tuple((p, exact_significance(obs, p, level).significant) for p in pts)
    gaps = tuple(
        (a, b) for (a, sa), (b, sb) in zip(classified, classified[1:]) if sa != sb
    )
    undetermined: Tuple[Tuple[Real, Real], ...] = gaps
    crossings: Tuple[Crossing, ...] = ()
    if refine:
        width = REFINE_WIDTH if is_exact(level) else float(REFINE_WIDTH)
        sig_of = dict(classified)
        crossings = tuple(_bisect(obs, level, a, b, sig_of[a], width) for a, b in gaps)
        undetermined = ()
    return CompatibleSet(
        observation=obs,
        grid_step=to_real(grid_step, "grid_step"),
        level=level,
        compatible=_runs(classified, False),
        significant=_runs(classified, True),
        undetermined=undetermined,
        crossings=crossings,
        grid=classified,
    )


def misid_bounds_from_correct(
    compatible: Union[CompatibleSet, Interval, Iterable[Interval]],
) -> Optional[Interval]:
    """Map correct-identification intervals to misidentification ones.

    Each ``[a, b]`` becomes ``[1 - b, 1 - a]``; the hull of the images is
    returned, or ``None`` when nothing is compatible.
    """
    if isinstance(compatible, CompatibleSet):
        intervals = compatible.compatible
    elif isinstance(compatible, Interval):
        intervals = (compatible,)
    else:
        intervals = tuple(compatible)
    if not intervals:
        return None
    images = [Interval(1 - iv.high, 1 - iv.low) for iv in intervals]
    return Interval(min(iv.low for iv in images), max(iv.high for iv in images))


@dataclass(frozen=True)
class RateEstimate:
    """Counts of correct identifications per experiment in a dataset.

    Three-player data yield one ``joint`` observation (a trial is correct
    when both respondents are identified); two-player data yield separate
    ``machine`` and ``human`` observations, either of which may be absent.
    """

    format: GameFormat
    joint: Optional[BinomialObservation] = None
    machine: Optional[BinomialObservation] = None
    human: Optional[BinomialObservation] = None

    @property
    def correct_rate(self) -> Optional[Fraction]:
        return self.joint.rate if self.joint else None

    @property
    def machine_misid_rate(self) -> Optional[Fraction]:
        obs = self.joint if self.format is GameFormat.THREE_PLAYER else self.machine
        return 1 - obs.rate if obs else None

    @property
    def human_correct_rate(self) -> Optional[Fraction]:
        obs = self.joint if self.format is GameFormat.THREE_PLAYER else self.human
        return obs.rate if obs else None


def estimate_rates(dataset: "ExperimentDataset") -> RateEstimate:
    trials = dataset.trials
    if not trials:
        raise ValueError("dataset is empty")
    if dataset.format is GameFormat.THREE_PLAYER:
        k = sum(1 for t in trials if t.correct)
        return RateEstimate(dataset.format, joint=BinomialObservation(len(trials), k))

    def observe(kind: RespondentKind) -> Optional[BinomialObservation]:
        hits = [r.correct for t in trials for r in t.responses if r.respondent is kind]
        return BinomialObservation(len(hits), sum(hits)) if hits else None

    return RateEstimate(
        dataset.format,
        machine=observe(RespondentKind.MACHINE),
        human=observe(RespondentKind.HUMAN),
    )
