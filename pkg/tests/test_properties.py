"""Invariants checked with hypothesis at 1000 examples per property."""

import io
from fractions import Fraction as F

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from turingstat import (
    GameFormat,
    JointOutcome,
    OutcomeEvent,
    RespondentKind,
    SimulationConfig,
    absolute_pass,
    binomial_pmf,
    compatible_set,
    dumps_trials,
    event_probability,
    exact_significance,
    humanness,
    is_equal_recognition_point,
    joint_probability,
    make_three_player_model,
    make_two_player_model,
    misid_bounds_from_correct,
    parse_trials,
    pmf_table,
    required_human_rate,
    simulate,
)
from turingstat._numbers import Interval

PROP = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])

probs = st.fractions(min_value=0, max_value=1, max_denominator=1000)
open_probs = st.fractions(min_value=0, max_value=1, max_denominator=1000).filter(lambda p: 0 < p < 1)
levels = st.fractions(min_value=0, max_value=1, max_denominator=1000).filter(lambda a: 0 < a < 1)


@st.composite
def observations(draw, max_n=64):
    n = draw(st.integers(1, max_n))
    return n, draw(st.integers(0, n))


# -- binomial --------------------------------------------------------------

@PROP
@given(st.integers(1, 64), probs)
def test_normalization(n, p):
    assert sum(pmf_table(n, p)) == 1


@PROP
@given(observations())
def test_half_symmetry(obs):
    n, k = obs
    assert binomial_pmf((n, k), F(1, 2)) == binomial_pmf((n, n - k), F(1, 2))
    contributing = exact_significance((n, k), F(1, 2), F(1, 20)).contributing_outcomes
    assert contributing == {n - j for j in contributing}


@PROP
@given(observations(max_n=40), probs, levels)
def test_significance_invariants(obs, p0, level):
    r = exact_significance(obs, p0, level)
    assert r.pmf_at_k <= r.tail_mass <= 1
    assert obs[1] in r.contributing_outcomes
    assert r.significant == (r.tail_mass < level)


@PROP
@given(observations(max_n=40), probs)
def test_strict_boundary(obs, p0):
    # use the tail mass itself as the level: equal is never significant
    tail = exact_significance(obs, p0, F(1, 2)).tail_mass
    if 0 < tail < 1:
        assert not exact_significance(obs, p0, tail).significant
        assert exact_significance(obs, p0, tail + F(1, 10**30)).significant


@PROP
@given(observations(max_n=30), probs, st.integers(0, 30))
def test_adding_outcomes_never_decreases_tail(obs, p0, extra):
    n, k = obs
    table = pmf_table(n, p0)
    r = exact_significance(obs, p0, F(1, 2))
    j = extra % (n + 1)
    bigger = r.contributing_outcomes | {j}
    assert sum(table[i] for i in bigger) >= r.tail_mass


@settings(max_examples=1000, deadline=None)
@given(observations(max_n=12), levels)
def test_scan_consistency(obs, level):
    cs = compatible_set(obs, level, grid_step=F(1, 10))
    for p, sig in cs.grid:
        assert exact_significance(obs, p, level).significant == sig
        in_compat = any(p in iv for iv in cs.compatible)
        in_sig = any(p in iv for iv in cs.significant)
        assert in_compat != in_sig and in_compat == (not sig)


@PROP
@given(probs, probs)
def test_misid_bounds_involution(a, b):
    iv = Interval(min(a, b), max(a, b))
    assert misid_bounds_from_correct(misid_bounds_from_correct(iv)) == iv


# -- model and criteria ----------------------------------------------------

@PROP
@given(probs)
def test_three_player_correlation(p):
    m = make_three_player_model(p)
    S_m = event_probability(m, OutcomeEvent(RespondentKind.MACHINE, False))
    F_h = event_probability(m, OutcomeEvent(RespondentKind.HUMAN, False))
    F_m = event_probability(m, OutcomeEvent(RespondentKind.MACHINE, True))
    S_h = event_probability(m, OutcomeEvent(RespondentKind.HUMAN, True))
    assert S_m == F_h and F_m == S_h
    assert S_m + F_m == 1 and S_h + F_h == 1
    assert joint_probability(m, JointOutcome.BOTH_MISIDENTIFIED) == S_m
    assert is_equal_recognition_point(m, 0) == (p == F(1, 2))
    assert humanness(m).ratio == 2 * p


@PROP
@given(probs, probs)
def test_two_player_freedom(a, b):
    m = make_two_player_model(a, b)
    assert (m.p_machine_misid, m.p_human_correct) == (a, b)
    if b > 0:
        assert absolute_pass(m, 0) == (humanness(m).ratio == 1)


@PROP
@given(probs, probs)
def test_humanness_monotone(a, b):
    if a != b:
        lo, hi = sorted((a, b))
        assert humanness(make_three_player_model(lo)).ratio < humanness(make_three_player_model(hi)).ratio


@PROP
@given(probs, st.fractions(min_value=0, max_value=5, max_denominator=1000).filter(lambda t: t > 0))
def test_required_rate_identity(x, t):
    assert required_human_rate(x, t).rate * t == x


# -- simulation and I/O ----------------------------------------------------

configs = st.one_of(
    st.builds(lambda p, n, s: SimulationConfig(make_three_player_model(p), n, 0, s),
              probs, st.integers(1, 25), st.integers(0, 2**64 - 1)),
    st.builds(lambda p, q, n, m, s: SimulationConfig(make_two_player_model(p, q), n, m, s),
              probs, probs, st.integers(1, 25), st.integers(0, 25), st.integers(0, 2**64 - 1)),
)


@PROP
@given(configs)
def test_round_trip(cfg):
    ds = simulate(cfg)
    assert parse_trials(io.StringIO(dumps_trials(ds))) == ds
    assert parse_trials(io.StringIO(dumps_trials(ds, "csv"))) == ds


@PROP
@given(configs)
def test_seeded_determinism(cfg):
    assert dumps_trials(simulate(cfg)) == dumps_trials(simulate(cfg))


@PROP
@given(configs)
def test_three_player_complementary(cfg):
    ds = simulate(cfg)
    if ds.format is GameFormat.THREE_PLAYER:
        for t in ds.trials:
            m, h = t.responses
            assert m.correct == h.correct and m.verdict is not h.verdict
