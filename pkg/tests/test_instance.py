import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import TWO_COIN_TEXT, explicit_corpus
from focusedsls.errors import InstanceError, ParseError
from focusedsls.instance import (ExplicitInstance, format_instance, parse_instance, random_instance,
                                 two_coin)
from focusedsls.walk import make_rng


def test_two_coin_text_matches_builder():
    assert parse_instance(TWO_COIN_TEXT) == two_coin()


def test_measures_are_normalized():
    inst = parse_instance("states 3\nweight 0 2\nweight 1 1\nweight 2 1\ntheta 2 5\n")
    assert inst.mu.tolist() == [0.5, 0.25, 0.25]
    assert inst.theta.tolist() == [0.0, 0.0, 1.0]


def test_fraction_probabilities():
    inst = parse_instance("states 3\ntheta 0 1\nflaw f 0\narc f 0 1 1/3\narc f 0 2 2/3\n")
    assert dict(inst.actions[(0, 0)]) == pytest.approx({1: 1 / 3, 2: 2 / 3}, abs=1e-15)


def test_present_flaws():
    inst = two_coin()
    assert [sorted(u) for u in inst.present] == [[], [1], [0], [0, 1]]


@pytest.mark.parametrize("text, line", [
    ("states 2\ntheta 0 1\nflaw f 0\narc f 0 1 0.7\n", 4),
    ("states 2\ntheta 0 1\nflaw f 0\narc f 0 1\n", 4),
    ("states 2\ntheta 0 1\nflaw f 0\narc g 0 1 1\n", 4),
    ("states 2\ntheta 0 1\nflaw f 5\n", 3),
    ("states 2\ntheta 0 1\nflaw f 0\narc f 0 1 abc\n", 4),
    ("states 2\ntheta 0 -1\n", 2),
    ("states 2\nbogus 1\n", 2),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as err:
        parse_instance(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_missing_theta_rejected():
    with pytest.raises(ParseError):
        parse_instance("states 2\nflaw f 0\narc f 0 1 1\n")


def test_flaw_without_actions_rejected():
    with pytest.raises(InstanceError):
        ExplicitInstance(2, [("f", [0])], {})


def test_self_only_action_rejected():
    with pytest.raises(InstanceError):
        ExplicitInstance(2, [("f", [0])], {(0, 0): [(0, 1.0)]})


@pytest.mark.parametrize("name, inst", explicit_corpus())
def test_format_round_trip(name, inst):
    again = parse_instance(format_instance(inst))
    assert again == inst


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 12), m=st.integers(1, 4),
       atomic=st.booleans(), theta=st.sampled_from(["mu", "point", "random"]))
def test_random_instances_are_valid(seed, n, m, atomic, theta):
    inst = random_instance(make_rng(seed), n, m, atomic=atomic, theta=theta)
    for i in range(inst.n_flaws):
        for s in inst.flaw_sets[i]:
            arcs = inst.actions[(i, s)]
            assert abs(sum(p for _, p in arcs) - 1) < 1e-9
    assert parse_instance(format_instance(inst)) == inst
    if atomic:
        from focusedsls.framework import check_atomicity
        assert check_atomicity(inst) == []
