from fractions import Fraction as F

import pytest

from turingstat import (
    GameFormat,
    JointOutcome,
    OutcomeEvent,
    RespondentKind,
    event_probability,
    is_equal_recognition_point,
    joint_probability,
    make_three_player_model,
    make_two_player_model,
)

M, H = RespondentKind.MACHINE, RespondentKind.HUMAN


@pytest.mark.parametrize("misid, human", [(F(1, 2), F(1, 2)), (0, 1), (F(3, 10), F(7, 10))])
def test_three_player_derives_human_rate(misid, human):
    m = make_three_player_model(misid)
    assert m.format is GameFormat.THREE_PLAYER
    assert m.p_human_correct == human


def test_decimal_strings_are_exact():
    assert make_three_player_model("0.3").p_human_correct == F(7, 10)


@pytest.mark.parametrize("bad", [-0.1, 1.5, F(11, 10), "2"])
def test_out_of_range_rejected(bad):
    with pytest.raises(ValueError):
        make_three_player_model(bad)
    with pytest.raises(ValueError):
        make_two_player_model(F(1, 2), bad)


def test_three_player_cannot_store_human_rate():
    from turingstat.model import BernoulliModel

    with pytest.raises(ValueError):
        BernoulliModel(GameFormat.THREE_PLAYER, F(1, 2), F(1, 2))


@pytest.mark.parametrize("pair", [(F(1, 2), F(3, 4)), (F(1, 2), F(1, 2)), (1, 1)])
def test_two_player_accepts_any_pair(pair):
    m = make_two_player_model(*pair)
    assert (m.p_machine_misid, m.p_human_correct) == pair


def test_event_probabilities():
    m = make_three_player_model(F(3, 10))
    assert event_probability(m, OutcomeEvent(H, False)) == F(3, 10)
    assert event_probability(m, OutcomeEvent(M, False)) == F(3, 10)
    assert event_probability(m, OutcomeEvent(M, True)) == F(7, 10)
    assert event_probability(m, OutcomeEvent(H, True)) == F(7, 10)
    two = make_two_player_model(F(1, 2), F(3, 4))
    assert event_probability(two, OutcomeEvent(H, False)) == F(1, 4)


def test_success_events():
    assert OutcomeEvent(M, False).is_success
    assert OutcomeEvent(H, True).is_success
    assert not OutcomeEvent(M, True).is_success


def test_joint_probability():
    assert joint_probability(make_three_player_model(F(1, 2)), JointOutcome.BOTH_CORRECT) == F(1, 2)
    m = make_three_player_model(F(3, 10))
    assert joint_probability(m, JointOutcome.BOTH_MISIDENTIFIED) == F(3, 10)
    assert joint_probability(m, JointOutcome.BOTH_CORRECT) == F(7, 10)
    with pytest.raises(ValueError):
        joint_probability(make_two_player_model(F(1, 2), F(1, 2)), JointOutcome.BOTH_CORRECT)


def test_equal_recognition_point():
    assert is_equal_recognition_point(make_three_player_model(F(1, 2)))
    assert not is_equal_recognition_point(make_three_player_model(F(3, 10)))
    assert is_equal_recognition_point(make_two_player_model(F(3, 5), F(3, 5)))
    assert is_equal_recognition_point(make_three_player_model(0.5 + 1e-14))
    assert not is_equal_recognition_point(make_three_player_model(0.5 + 1e-14), tolerance=0)
    with pytest.raises(ValueError):
        is_equal_recognition_point(make_three_player_model(F(1, 2)), tolerance=-1)


def test_float_complement_closure():
    m = make_two_player_model(0.123456789, 0.987654321)
    for kind in (M, H):
        total = event_probability(m, OutcomeEvent(kind, True)) + event_probability(m, OutcomeEvent(kind, False))
        assert abs(total - 1) <= 1e-15
