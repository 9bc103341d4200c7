"""Exit criteria, one test each; run ``pytest tests/test_acceptance.py -s``."""

import math
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

import test_properties as props
from oracles import enumerate_pmf
from turingstat import (
    GameFormat,
    Interval,
    SimulationConfig,
    binomial_pmf,
    compatible_set,
    emit_report,
    estimate_rates,
    exact_significance,
    humanness,
    humanness_bounds,
    make_three_player_model,
    make_two_player_model,
    misid_bounds_from_correct,
    parse_trials,
    required_human_rate,
    simulate,
    verdict,
)
from turingstat._numbers import two_decimals
from turingstat.cli import BUNDLED

DATA = __import__("pathlib").Path(__file__).parents[1] / "src" / "turingstat" / "data"
P = F(1, 100)


def restrepo():
    return parse_trials(DATA / BUNDLED["restrepo"])


def _show(ivs):
    return " ".join(f"[{two_decimals(iv.low)}, {two_decimals(iv.high)}]" for iv in ivs)


def test_c01_pmf(criterion):
    exact = binomial_pmf((10, 9), F(1, 2))
    flt = binomial_pmf((10, 9), 0.5)
    ok = exact == F(5, 512) and abs(flt - 0.009765625) <= 1e-15
    criterion(1, ok, f"pmf(10, 9, 1/2) = {exact} / {flt!r}")


def test_c02_tail_one_percent(criterion):
    r = exact_significance((10, 9), F(1, 2), F(1, 100))
    ok = r.tail_mass == F(11, 512) and r.contributing_outcomes == {0, 1, 9, 10} and not r.significant
    criterion(2, ok, f"tail_mass = {r.tail_mass} over {sorted(r.contributing_outcomes)}, significant={r.significant}")


def test_c03_five_percent(criterion):
    r = exact_significance((10, 9), F(1, 2), F(5, 100))
    criterion(3, r.significant, f"significant={r.significant} at 0.05")


def test_c04_compatible_one_percent(criterion):
    cs = compatible_set((10, 9), F(1, 100), F(1, 100), refine=False)
    ok = (
        cs.compatible == (Interval(49 * P, 1),)
        and cs.significant == (Interval(0, 48 * P),)
        and (48 * P, 49 * P) in cs.undetermined
    )
    detail = f"compatible {_show(cs.compatible)}; significant {_show(cs.significant)}; undetermined {cs.undetermined}"
    if not ok:
        detail += (f"; expected compatible [0.49, 1.00], significant [0.00, 0.48]."
                   f" pmf(9 | p=1) = {binomial_pmf((10, 9), 1)}, so p = 1.00 is significant")
    criterion(4, ok, detail)


def test_c05_compatible_five_percent(criterion):
    cs = compatible_set((10, 9), F(5, 100), F(1, 100))
    ok = cs.compatible == (Interval(56 * P, 1),) and cs.significant == (Interval(0, 55 * P),)
    detail = f"compatible {_show(cs.compatible)}; significant {_show(cs.significant)}"
    if not ok:
        detail += "; expected compatible [0.56, 1.00], significant [0.00, 0.55]"
    criterion(5, ok, detail)


def test_c06_humanness(criterion):
    a = humanness(make_three_player_model(F(3, 10))).ratio
    b = humanness(make_two_player_model(F(1, 2), F(3, 4))).ratio
    criterion(6, a == F(3, 5) and b == F(2, 3), f"three-player 0.3 -> {a}; two-player (0.5, 0.75) -> {b}")


def test_c07_humanness_bounds(criterion):
    ds = restrepo()
    obs = estimate_rates(ds).joint
    got = {}
    for level in (F(5, 100), F(1, 100)):
        misid = misid_bounds_from_correct(compatible_set(obs, level))
        hb = humanness_bounds(misid.low, misid.high, F(1, 2))
        got[level] = (two_decimals(hb.low), two_decimals(hb.high))
    ok = got[F(5, 100)] == ("0.00", "0.88") and got[F(1, 100)] == ("0.00", "1.02")
    detail = f"level 0.05 -> {list(got[F(5, 100)])}; level 0.01 -> {list(got[F(1, 100)])}"
    if not ok:
        detail += "; expected [0.00, 0.88] and [0.00, 1.02]"
    criterion(7, ok, detail)


def test_c08_required_rate(criterion):
    r = required_human_rate(F(10, 30), F(3, 5))
    text = emit_report(verdict(parse_trials(DATA / BUNDLED["goostman"])))
    ok = r.rate == F(5, 9) and "required_human_rate: 5/9" in text and "(55% in whole percent)" in text
    criterion(8, ok, f"required rate {r.rate} = {float(r.rate):.4f}; report states 55% cut-off: {'55%' in text}")


def test_c09_oracle_equivalence(criterion):
    start = time.perf_counter()
    bad = []
    for n in range(1, 13):
        for p in (F(0), F(1, 4), F(1, 3), F(1, 2), F(3, 4), F(1)):
            ref = enumerate_pmf(n, p)
            for k in range(n + 1):
                if binomial_pmf((n, k), p) != ref[k] or abs(binomial_pmf((n, k), float(p)) - float(ref[k])) > 1e-12:
                    bad.append((n, k, p))
    elapsed = time.perf_counter() - start
    criterion(9, not bad and elapsed <= 10, f"{len(bad)} mismatches, {elapsed:.2f}s")


def test_c10_simulator(criterion):
    n = 100_000
    notes = []
    ok = True
    for p in (F(1, 10), F(1, 2), F(9, 10)):
        ds = simulate(SimulationConfig(make_three_player_model(p), n, seed=20250101))
        complementary = sum(
            1 for t in ds.trials
            if t.responses[0].correct == t.responses[1].correct and t.responses[0].verdict is not t.responses[1].verdict
        )
        misid = sum(1 for t in ds.trials if not t.correct) / n
        z = abs(misid - float(p)) / math.sqrt(float(p * (1 - p)) / n)
        ok &= complementary == n and z <= 4
        notes.append(f"p={float(p)}: {complementary}/{n} complementary, z={z:.2f}")
    criterion(10, ok, "; ".join(notes))


PROPERTIES = [
    props.test_normalization,
    props.test_half_symmetry,
    props.test_strict_boundary,
    props.test_round_trip,
    props.test_seeded_determinism,
]


def test_c11_properties(criterion):
    failures = []
    for prop in PROPERTIES:
        assert prop.hypothesis.inner_test is not None
        assert prop._hypothesis_internal_use_settings.max_examples >= 1000
        try:
            prop()
        except Exception as exc:  # noqa: BLE001
            failures.append(f"{prop.__name__}: {exc}")
    criterion(11, not failures, f"{len(PROPERTIES)} properties x 1000 cases" + (f"; {failures}" if failures else ""))


def _cli(*extra):
    return subprocess.run([sys.executable, "-m", "turingstat", "analyze", "--bundled", "restrepo", *extra],
                          capture_output=True, text=True)


def _bounds_line(text):
    return next((ln for ln in text.splitlines() if ln.startswith("humanness_bounds:")), "")


def test_c12_cli(criterion):
    a = _cli()
    b = _cli("--level", "0.05")
    ok = (
        a.returncode == 0 and b.returncode == 0
        and "significant=false" in a.stdout and _bounds_line(a.stdout).endswith("= [0.00, 1.02]")
        and "significant=true" in b.stdout and _bounds_line(b.stdout).endswith("= [0.00, 0.88]")
    )
    detail = f"default: {_bounds_line(a.stdout)!r}; --level 0.05: {_bounds_line(b.stdout)!r}; exit {a.returncode}/{b.returncode}"
    criterion(12, ok, detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
