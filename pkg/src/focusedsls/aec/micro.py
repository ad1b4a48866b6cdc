"""Fully enumerated AEC instances on tiny graphs, for the exact verifiers.

States are the complete proper colorings without bichromatic 4-cycles, mu is
uniform, theta is the point mass on the greedy initial coloring, and each even
cycle of length >= 6 is a flaw whose actions are the resampling outcomes with
their exact probabilities.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from ..errors import EnumerationCapExceeded
from ..instance import ExplicitInstance
from .coloring import EdgeColoring, canonical_cycle, four_available, in_omega, initial_coloring, make_flaw


def even_cycles(graph, min_length=6):
    """All simple cycles with an even number >= min_length of edges, canonical and sorted."""
    found = set()
    for start in range(graph.n):
        path = [start]
        on = {start}

        def extend(x):
            for y, _ in graph.adj[x]:
                if y == start and len(path) >= 3:
                    if len(path) % 2 == 0 and len(path) >= min_length:
                        found.add(canonical_cycle(path))
                elif y > start and y not in on:
                    path.append(y)
                    on.add(y)
                    extend(y)
                    path.pop()
                    on.discard(y)

        extend(start)
    return sorted(found, key=lambda vs: (len(vs), vs))


def omega_states(graph, q, cap=200_000):
    """Every coloring in Omega, as tuples, in lexicographic order."""
    out = []
    col = EdgeColoring(graph, q)

    def extend(e):
        if e == graph.m:
            out.append(tuple(col.tolist()))
            if len(out) > cap:
                raise EnumerationCapExceeded(f"more than {cap} colorings")
            return
        for c in four_available(graph, col, e):
            col.set(e, c)
            extend(e + 1)
            col.uncolor(e)

    extend(0)
    # 4-availability is checked against colored edges only, so each prefix
    # stays 4-cycle free and the leaves are exactly Omega.
    return out


def resample_distribution(graph, coloring, flaw):
    """{outcome tuple: exact probability} for one resampling of ``flaw``."""
    work = coloring.copy()
    rest = flaw.edges[2:]
    for e in rest:
        work.uncolor(e)
    dist = {}

    def extend(k, p):
        if k == len(rest):
            key = tuple(work.tolist())
            dist[key] = dist.get(key, 0) + p
            return
        avail = four_available(graph, work, rest[k])
        for c in avail:
            work.set(rest[k], c)
            extend(k + 1, p / len(avail))
            work.uncolor(rest[k])

    extend(0, Fraction(1))
    return dist


def aec_micro_instance(graph, q, cap=200_000):
    """(ExplicitInstance, states, flaws) for a tiny graph and palette size q."""
    states = omega_states(graph, q, cap)
    index = {s: k for k, s in enumerate(states)}
    flaws = [make_flaw(graph, vs) for vs in even_cycles(graph)]
    flaw_specs, actions = [], {}
    for i, flaw in enumerate(flaws):
        members = []
        for k, s in enumerate(states):
            cs = [s[e] for e in flaw.edges]
            if len(set(cs[0::2])) == 1 and len(set(cs[1::2])) == 1:
                members.append(k)
                col = EdgeColoring(graph, q, s)
                dist = resample_distribution(graph, col, flaw)
                actions[(i, k)] = [(index[t], float(p)) for t, p in sorted(dist.items())]
        flaw_specs.append(("C" + "-".join(str(v + 1) for v in flaw.vertices), members))
    flaw_specs_nonempty = [(n, m) for n, m in flaw_specs if m]
    keep = [i for i, (_, m) in enumerate(flaw_specs) if m]
    remap = {old: new for new, old in enumerate(keep)}
    actions = {(remap[i], s): arcs for (i, s), arcs in actions.items()}
    theta = [0.0] * len(states)
    theta[index[tuple(initial_coloring(graph, q).tolist())]] = 1.0
    names = ["".join(map(str, s)) if q < 10 else ",".join(map(str, s)) for s in states]
    inst = ExplicitInstance(len(states), flaw_specs_nonempty, actions,
                            theta_weight=theta, state_names=names)
    return inst, states, [flaws[i] for i in keep]


def check_omega_enumeration(graph, q):
    """Brute force over all q^m assignments; for testing omega_states on tiny graphs."""
    return [s for s in itertools.product(range(1, q + 1), repeat=graph.m) if in_omega(graph, s)]
