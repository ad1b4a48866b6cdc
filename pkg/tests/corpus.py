"""Shared test instances and graphs."""
from __future__ import annotations

import itertools

from focusedsls.aec.generators import (complete_graph, cycle_graph, path_graph,
                                       random_capped_gnp, random_planar_triangulation,
                                       random_series_parallel, random_tree, star_graph)
from focusedsls.aec.graph import Graph
from focusedsls.instance import ExplicitInstance, random_instance, two_coin, variable_setting_instance
from focusedsls.walk import make_rng

TWO_COIN_TEXT = """\
# two fair bits; f1 = first bit set, f2 = second bit set
states 4
theta 0 1
theta 1 1
theta 2 1
theta 3 1
flaw f1 2 3
flaw f2 1 3
arc f1 2 0 0.5
arc f1 2 2 0.5
arc f1 3 1 0.5
arc f1 3 3 0.5
arc f2 1 0 0.5
arc f2 1 1 0.5
arc f2 3 2 0.5
arc f2 3 3 0.5
"""


def three_bits():
    """Three fair bits with overlapping events."""
    return variable_setting_instance([2, 2, 2], [{0: 1, 1: 1}, {1: 1, 2: 0}, {2: 1}])


def exclusive_values():
    """One ternary and one binary variable; the two events are mutually exclusive."""
    return variable_setting_instance([3, 2], [{0: 0}, {0: 1}], var_weights=[[1, 2, 3], [1, 1]])


def weighted_pair():
    """Biased bits, events sharing a variable."""
    return variable_setting_instance([2, 2, 3], [{0: 0, 1: 1}, {1: 1, 2: 2}],
                                     var_weights=[[1, 3], [2, 1], [1, 1, 2]])


def single_flaw_chain():
    """A 3-state chain whose only flaw is fixed with probability 1/2."""
    return ExplicitInstance(3, [("f", [0])], {(0, 0): [(1, 0.5), (2, 0.5)]})


def self_feeding():
    """Non-atomic instance where addressing f can reintroduce g and vice versa."""
    flaws = [("f", [0, 1]), ("g", [1, 2])]
    actions = {
        (0, 0): [(2, 0.5), (3, 0.5)],
        (0, 1): [(2, 0.25), (3, 0.75)],
        (1, 1): [(0, 0.5), (3, 0.5)],
        (1, 2): [(1, 0.3), (3, 0.7)],
    }
    return ExplicitInstance(4, flaws, actions, measure_weight=[1, 2, 1, 4],
                            theta_weight=[1, 1, 0, 0])


def random_corpus(count=12):
    out = []
    for k in range(count):
        rng = make_rng(1234, k)
        n = int(rng.integers(3, 13))
        m = int(rng.integers(1, 4))
        atomic = bool(k % 2)
        theta = ("mu", "point", "random")[k % 3]
        out.append((f"random{k}", random_instance(rng, n, m, atomic=atomic, theta=theta)))
    return out


def explicit_corpus():
    """Every explicit instance used by the exact checks; all have <= 12 states."""
    out = [
        ("two_coin", two_coin()),
        ("two_coin_biased", two_coin(bias=0.75)),
        ("two_coin_point", two_coin(theta=[1, 0, 0, 0])),
        ("two_coin_skewed_theta", two_coin(theta=[1, 2, 3, 4])),
        ("three_bits", three_bits()),
        ("exclusive_values", exclusive_values()),
        ("weighted_pair", weighted_pair()),
        ("single_flaw_chain", single_flaw_chain()),
        ("self_feeding", self_feeding()),
    ]
    out.extend(random_corpus())
    return out


def atomic_regenerating_corpus():
    """Instances whose action digraph is atomic and regenerates mu, with theta = mu."""
    return [
        ("two_coin", two_coin()),
        ("three_bits", three_bits()),
        ("exclusive_values", exclusive_values()),
        ("weighted_pair", weighted_pair()),
        ("single_bit", variable_setting_instance([2], [{0: 1}])),
    ]


def forest_parameterizations():
    """(name, psi, Roots, List) families for the forest checks."""
    P = frozenset
    return [
        ("one_flaw", [1.0], [P(), P({0})], [[P()]]),
        ("one_flaw_self", [0.5], [P(), P({0})], [[P(), P({0})]]),
        ("chain", [1.0, 2.0, 0.5], [P(), P({0})],
         [[P(), P({1})], [P(), P({2})], [P()]]),
        ("pair_powerset", [1.0, 1.0], [P(), P({0}), P({1}), P({0, 1})],
         [[P(), P({0})], [P(), P({1})]]),
        ("two_coin_psi2", [2.0, 2.0], [P(), P({0}), P({1}), P({0, 1})],
         [[P(), P({0})], [P(), P({1})]]),
        ("triangle_ind", [0.3, 0.4, 0.5], [P(), P({0}), P({1}), P({2})],
         [[P(), P({0}), P({1})], [P(), P({1}), P({2})], [P(), P({2}), P({0})]]),
        ("roots_empty", [1.0], [P()], [[P(), P({0})]]),
    ]


def acyclic_forest_parameterizations():
    """Families in which every forest is finite (List only points to larger labels)."""
    P = frozenset
    return [
        ("one_flaw", [1.0], [P(), P({0})], [[P()]]),
        ("chain", [1.0, 2.0, 0.5], [P(), P({0})], [[P(), P({1})], [P(), P({2})], [P()]]),
        ("fan", [0.5, 1.5, 2.5], [P(), P({0}), P({0, 1})],
         [[P(), P({1, 2}), P({2})], [P(), P({2})], [P()]]),
        ("roots_empty", [1.0], [P()], [[P(), P({0})]]),
    ]


def small_graphs():
    """Named graphs with at most 10 vertices."""
    out = [
        ("P5", path_graph(5)),
        ("C4", cycle_graph(4)),
        ("C6", cycle_graph(6)),
        ("C8", cycle_graph(8)),
        ("K4", complete_graph(4)),
        ("K5", complete_graph(5)),
        ("K6", complete_graph(6)),
        ("star4", star_graph(4)),
        ("K33", Graph(6, [(a, b) for a in range(3) for b in range(3, 6)])),
        ("petersen", petersen()),
        ("prism", Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                            (0, 3), (1, 4), (2, 5)])),
        ("grid3x3", grid(3, 3)),
        ("wheel7", Graph(7, [(0, k) for k in range(1, 7)]
                         + [(k, k % 6 + 1) for k in range(1, 7)])),
    ]
    for k in range(6):
        rng = make_rng(77, k)
        out.append((f"gnp{k}", random_capped_gnp(rng, 10, 0.45, 6)))
        out.append((f"sp{k}", random_series_parallel(make_rng(78, k), 10, 5)))
        out.append((f"tri{k}", random_planar_triangulation(make_rng(79, k), 10, 7)))
        out.append((f"tree{k}", random_tree(make_rng(80, k), 10, 4)))
    return out


def petersen():
    outer = [(k, (k + 1) % 5) for k in range(5)]
    spokes = [(k, k + 5) for k in range(5)]
    inner = [(5 + k, 5 + (k + 2) % 5) for k in range(5)]
    return Graph(10, outer + spokes + inner)


def grid(r, c):
    edges = []
    for i, j in itertools.product(range(r), range(c)):
        v = i * c + j
        if j + 1 < c:
            edges.append((v, v + 1))
        if i + 1 < r:
            edges.append((v, v + c))
    return Graph(r * c, edges)
