"""Acyclic edge coloring by the recursive walk over bichromatic cycles."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import StepCapExceeded
from ..walk import RECURSIVE, make_rng, run_walk
from .coloring import (find_flaws, four_available, in_omega, initial_coloring,
                       is_bichromatic, verify_acyclic_coloring)
from .params import params_for


class AecProblem:
    """Walk adapter: states are complete colorings, flaws are bichromatic cycles
    of length >= 6, and two cycles are related when they share an edge.

    Resampling is done in place unless ``copy_states`` is set, so a recorded
    trajectory only holds meaningful states when copies are kept.
    """

    def __init__(self, graph, params, debug=False, copy_states=False):
        self.graph = graph
        self.params = params
        self.debug = debug
        self.copy_states = copy_states
        self._initial = None

    def sample_initial(self, rng):
        if self._initial is None:
            self._initial = initial_coloring(self.graph, self.params.q)
        return self._initial.copy()

    def flaws_present(self, state):
        return find_flaws(self.graph, state)

    def flaws_near(self, flaw, state):
        return find_flaws(self.graph, state, restrict_to_edges=flaw.edges)

    def neighbors(self, flaw):
        raise NotImplementedError("cycles are related implicitly; use flaws_near")

    def order_key(self, flaw):
        return flaw.key

    def address(self, flaw, state, rng):
        if self.debug and not is_bichromatic(state, flaw):
            raise AssertionError(f"addressing {flaw.vertices}, which is not bichromatic")
        new = state.copy() if self.copy_states else state
        rest = flaw.edges[2:]
        for e in rest:
            new.uncolor(e)
        for e in rest:
            avail = four_available(self.graph, new, e)
            new.set(e, avail[int(rng.integers(len(avail)))])
        if self.debug and not in_omega(self.graph, new):
            raise AssertionError("resampling left the set of 4-cycle-free proper colorings")
        return new


@dataclass
class AecResult:
    coloring: object
    steps: int
    params: object

    def lines(self):
        g = self.coloring.graph
        return [f"{a + 1} {b + 1} {c}" for (a, b), c in zip(g.edges, self.coloring.tolist())]


def default_step_cap(graph, params):
    return 100 * max(graph.m, 1) * params.q


def aec_color(graph, params=None, seed=0, max_steps=None, debug=False):
    """Color ``graph`` acyclically; raises StepCapExceeded if the walk runs too long.

    The result is checked by an independent verifier before it is returned.
    """
    if params is None:
        params = params_for(graph)
    if max_steps is None:
        max_steps = default_step_cap(graph, params)
    problem = AecProblem(graph, params, debug=debug)
    traj = run_walk(problem, RECURSIVE, rng=make_rng(seed), max_steps=max_steps,
                    record_states=False)
    if not traj.finished:
        raise StepCapExceeded(len(traj), traj)
    final = traj.final
    bad = verify_acyclic_coloring(graph, final)
    if bad is not None:
        raise AssertionError(f"walk ended on an invalid coloring: {bad.describe()}")
    return AecResult(final, len(traj), params)
