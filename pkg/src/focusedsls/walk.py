"""Focused random walks: the simple walk and the recursive walk.

Both strategies drive any object satisfying :class:`WalkProblem`.  The flaw
addressed among a set S is always the one with the smallest ``order_key``.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Protocol

import numpy as np

from .framework import causality_digraph
from .instance import ExplicitInstance

SIMPLE = "simple"
RECURSIVE = "recursive"
STRATEGIES = (SIMPLE, RECURSIVE)


def make_rng(seed: int = 0, stream: int = 0) -> np.random.Generator:
    """Counter-based generator keyed by (seed, stream).

    Independent trials use ``stream = trial index`` so each trial's draws do not
    depend on how many other trials ran before it.
    """
    key = np.array([int(seed) & (2**64 - 1), int(stream) & (2**64 - 1)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


class WalkProblem(Protocol):
    def sample_initial(self, rng) -> Any: ...

    def flaws_present(self, state) -> Iterable[Hashable]: ...

    def address(self, flaw, state, rng) -> Any: ...

    def neighbors(self, flaw) -> Iterable[Hashable]: ...

    def order_key(self, flaw) -> Any: ...


def sample_index(rng, cumulative):
    """Index drawn from the distribution with the given cumulative sums."""
    u = rng.random() * cumulative[-1]
    k = bisect.bisect_right(cumulative, u)
    return min(k, len(cumulative) - 1)


class ExplicitProblem:
    """Walk adapter for :class:`ExplicitInstance`.

    ``relation`` is the digraph R used by the recursive walk (default: the
    causality digraph); flaws are ordered by declaration index.
    """

    def __init__(self, inst: ExplicitInstance, relation=None):
        self.instance = inst
        self.relation = causality_digraph(inst) if relation is None else relation
        self._theta_cum = np.cumsum(inst.theta).tolist()
        self._action_cum = {
            key: (tuple(t for t, _ in arcs), np.cumsum([p for _, p in arcs]).tolist())
            for key, arcs in inst.actions.items()
        }

    def sample_initial(self, rng):
        return sample_index(rng, self._theta_cum)

    def flaws_present(self, state):
        return self.instance.present[state]

    def address(self, flaw, state, rng):
        targets, cum = self._action_cum[(flaw, state)]
        return targets[sample_index(rng, cum)]

    def neighbors(self, flaw):
        return self.relation[flaw]

    def flaws_near(self, flaw, state):
        return self.instance.present[state] & frozenset(self.relation[flaw])

    def order_key(self, flaw):
        return flaw


@dataclass
class Trajectory:
    start: Any
    steps: list = field(default_factory=list)     # (flaw, resulting state)
    finished: bool = True                           # ended at a flawless state
    final: Any = None                               # state the walk stopped in

    @property
    def witness(self):
        return tuple(f for f, _ in self.steps)

    @property
    def capped(self):
        return not self.finished

    def __len__(self):
        return len(self.steps)

    def states(self):
        out = [self.start]
        out.extend(s for _, s in self.steps)
        return out


def _least(problem, flaws):
    return min(flaws, key=problem.order_key)


def _near(problem, flaw, state):
    near = getattr(problem, "flaws_near", None)
    if near is not None:
        return near(flaw, state)
    try:
        nb = frozenset(problem.neighbors(flaw))
    except NotImplementedError:
        raise ValueError("recursive strategy needs neighbors() or flaws_near()") from None
    return frozenset(problem.flaws_present(state)) & nb


def recursive_select(problem, state, stack):
    """Next flaw for the recursive walk given the pending ADDRESS frames.

    Pops frames whose loop has ended.  Returns ``(flaw, stack)`` where the
    returned stack is what remains *before* pushing the frame for ``flaw``;
    ``flaw`` is None when the walk has reached a flawless state.
    """
    stack = list(stack)
    while stack:
        b = _near(problem, stack[-1], state)
        if b:
            return _least(problem, b), stack
        stack.pop()
    u = problem.flaws_present(state)
    if not u:
        return None, stack
    return _least(problem, u), stack


def run_walk(problem, strategy=SIMPLE, seed=0, max_steps=10_000, rng=None,
             record_states=True) -> Trajectory:
    """Run one walk; stops at a flawless state or after ``max_steps`` steps.

    Hitting the cap is not an error: the trajectory comes back with
    ``finished=False``.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if max_steps < 0:
        raise ValueError("max_steps must be nonnegative")
    if rng is None:
        rng = make_rng(seed)
    if strategy == RECURSIVE and getattr(problem, "flaws_near", None) is None:
        try:
            problem.neighbors
        except AttributeError:
            raise ValueError("recursive strategy needs neighbors()") from None
    state = problem.sample_initial(rng)
    traj = Trajectory(start=state)
    stack = []
    while True:
        if strategy == SIMPLE:
            u = problem.flaws_present(state)
            flaw = _least(problem, u) if u else None
        else:
            flaw, stack = recursive_select(problem, state, stack)
        if flaw is None or len(traj.steps) >= max_steps:
            traj.finished = flaw is None
            traj.final = state
            return traj
        state = problem.address(flaw, state, rng)
        if strategy == RECURSIVE:
            stack.append(flaw)
        traj.steps.append((flaw, state if record_states else None))


def check_trajectory(inst: ExplicitInstance, traj: Trajectory):
    """List of invariant violations of an explicit-instance trajectory."""
    problems = []
    cur = traj.start
    for k, (flaw, nxt) in enumerate(traj.steps):
        if flaw not in inst.present[cur]:
            problems.append(f"step {k}: flaw {flaw} not present in state {cur}")
        elif nxt not in inst.action_set(flaw, cur):
            problems.append(f"step {k}: state {nxt} not an action of flaw {flaw} at {cur}")
        cur = nxt
    if traj.finished and inst.present[cur]:
        problems.append("trajectory marked finished at a flawed state")
    return problems
