import pytest

from corpus import explicit_corpus
from focusedsls.instance import ExplicitInstance, two_coin
from focusedsls.walk import ExplicitProblem, check_trajectory, make_rng, run_walk


def test_flawless_start_takes_no_steps():
    inst = two_coin(theta=[1, 0, 0, 0])
    traj = run_walk(ExplicitProblem(inst), seed=3)
    assert traj.finished and len(traj) == 0 and traj.final == 0


def test_least_flaw_addressed_first():
    inst = two_coin(theta=[0, 0, 0, 1])
    for seed in range(20):
        traj = run_walk(ExplicitProblem(inst), seed=seed)
        assert traj.witness[0] == 0


def test_recursive_matches_simple_when_only_self_causing():
    inst = two_coin()
    for seed in range(50):
        a = run_walk(ExplicitProblem(inst), "simple", seed=seed)
        b = run_walk(ExplicitProblem(inst), "recursive", seed=seed)
        assert a.steps == b.steps


@pytest.mark.parametrize("strategy", ["simple", "recursive"])
@pytest.mark.parametrize("name, inst", explicit_corpus())
def test_trajectories_follow_the_action_digraph(name, inst, strategy):
    problem = ExplicitProblem(inst)
    for seed in range(10):
        traj = run_walk(problem, strategy, seed=seed, max_steps=200)
        assert check_trajectory(inst, traj) == []
        again = run_walk(problem, strategy, seed=seed, max_steps=200)
        assert again.steps == traj.steps and again.start == traj.start


def test_cap_returns_unfinished():
    # f can only move between its own two states
    inst = ExplicitInstance(3, [("f", [0, 1])], {(0, 0): [(1, 1.0)], (0, 1): [(0, 1.0)]},
                            theta_weight=[1, 0, 0])
    traj = run_walk(ExplicitProblem(inst), max_steps=7)
    assert not traj.finished and traj.capped and len(traj) == 7


def test_streams_are_independent():
    a = make_rng(5, 0).random(4)
    b = make_rng(5, 1).random(4)
    assert not (a == b).all()
    assert (make_rng(5, 1).random(4) == b).all()


def test_unknown_strategy():
    with pytest.raises(ValueError):
        run_walk(ExplicitProblem(two_coin()), "greedy")
