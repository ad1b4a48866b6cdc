"""Labeled forests and the branching process that generates them.

Roots are drawn as a set S in Roots with probability Q(S) / sum_Roots Q, and a
vertex labeled l draws its children as a set S in List(l) with probability
Q(S) / sum_List(l) Q, where Q(S) = prod_{g in S} psi_g.  This is the law of
the rejection-sampling process conditioned on acceptance, sampled directly.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EnumerationCapExceeded, FocusedSLSError
from .families import family_weight, normalize_family, weight
from .walk import make_rng, sample_index

DEFAULT_CAP = 10**6


@dataclass(frozen=True, order=True)
class Node:
    label: int
    children: tuple = ()

    def size(self):
        return 1 + sum(c.size() for c in self.children)

    def depth(self):
        return 1 + max((c.depth() for c in self.children), default=-1)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def __str__(self):
        if not self.children:
            return str(self.label)
        return f"{self.label}(" + " ".join(str(c) for c in self.children) + ")"


def node(label, *children):
    """Build a canonical node (children sorted by label)."""
    return Node(int(label), tuple(sorted(children)))


@dataclass(frozen=True)
class LabeledForest:
    """Unordered rooted forest; roots and children are kept sorted (canonical)."""

    roots: tuple = ()
    truncated: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(sorted(self.roots)))

    def vertices(self):
        for r in self.roots:
            yield from r.walk()

    def size(self):
        return sum(r.size() for r in self.roots)

    def depth(self):
        """Depth of the deepest vertex (roots have depth 0); -1 when empty."""
        return max((r.depth() for r in self.roots), default=-1)

    def root_labels(self):
        return frozenset(r.label for r in self.roots)

    def __str__(self):
        return " ".join(str(r) for r in self.roots) if self.roots else "()"


def forest(*roots):
    return LabeledForest(tuple(roots))


def validate_forest(phi, roots_family, list_family):
    """Raise if phi violates the root/children constraints."""
    roots_family = set(normalize_family(roots_family))
    labels = [r.label for r in phi.roots]
    if len(set(labels)) != len(labels):
        raise FocusedSLSError("root labels are not distinct")
    if frozenset(labels) not in roots_family:
        raise FocusedSLSError(f"root set {sorted(labels)} is not in Roots")
    for v in phi.vertices():
        kids = [c.label for c in v.children]
        if len(set(kids)) != len(kids):
            raise FocusedSLSError(f"children of a {v.label}-vertex are not distinct")
        if not 0 <= v.label < len(list_family):
            raise FocusedSLSError(f"label {v.label} out of range")
        if frozenset(kids) not in set(normalize_family(list_family[v.label])):
            raise FocusedSLSError(f"children {sorted(kids)} of a {v.label}-vertex not in List")


def forest_probability(phi, psi, roots_family, list_family, check=True):
    """p_phi = (sum_Roots Q)^-1 * prod over vertices v of psi_v / sum_{List(v)} Q."""
    if check:
        validate_forest(phi, roots_family, list_family)
    norms = [family_weight(normalize_family(f), psi) for f in list_family]
    p = 1.0 / family_weight(normalize_family(roots_family), psi)
    for v in phi.vertices():
        p *= psi[v.label] / norms[v.label]
    return p


class ForestSampler:
    """Reusable sampler: precomputes the per-label child-set distributions."""

    def __init__(self, psi, roots_family, list_family):
        for i, p in enumerate(psi):
            if not p > 0 or math.isinf(p):
                raise ValueError(f"psi[{i}] must be finite and positive")
        self.psi = list(psi)
        self.roots = normalize_family(roots_family)
        self.lists = [normalize_family(f) for f in list_family]
        self._roots = self._table(self.roots)
        self._lists = [self._table(f) for f in self.lists]

    def _table(self, family):
        sets = [tuple(sorted(s)) for s in family]
        cum = np.cumsum([weight(s, self.psi) for s in sets]).tolist()
        return sets, cum

    def _draw(self, rng, table):
        sets, cum = table
        return sets[sample_index(rng, cum)]

    def sample(self, rng, depth_cap=64, max_vertices=100_000):
        truncated = False
        budget = [max_vertices]

        def grow(label, depth):
            nonlocal truncated
            kids = self._draw(rng, self._lists[label])
            if kids and (depth >= depth_cap or budget[0] < len(kids)):
                truncated = True
                return Node(label)
            budget[0] -= len(kids)
            return Node(label, tuple(grow(c, depth + 1) for c in kids))

        top = self._draw(rng, self._roots)
        budget[0] -= len(top)
        return LabeledForest(tuple(grow(r, 0) for r in top), truncated=truncated)


def sample_forest(seed, psi, roots_family, list_family, depth_cap=64, rng=None):
    """One forest from the branching process; ``truncated`` flags a cut at depth_cap."""
    if rng is None:
        rng = make_rng(seed)
    return ForestSampler(psi, roots_family, list_family).sample(rng, depth_cap)


# -- enumeration ---------------------------------------------------------------

class _Enumerator:
    def __init__(self, roots_family, list_family, cap):
        self.roots = normalize_family(roots_family)
        self.lists = [normalize_family(f) for f in list_family]
        self.cap = cap
        self.memo = {}

    def trees(self, label, size):
        """All valid trees rooted at ``label`` with exactly ``size`` vertices."""
        key = (label, size)
        if key in self.memo:
            return self.memo[key]
        out = []
        if size >= 1:
            for kids in self.lists[label]:
                out.extend(Node(label, combo)
                           for combo in self.combine(sorted(kids), size - 1))
                if len(out) > self.cap:
                    raise EnumerationCapExceeded(f"more than {self.cap} trees")
        self.memo[key] = out
        return out

    def combine(self, labels, total):
        """Tuples of trees, one per label (in order), with sizes summing to total."""
        if not labels:
            if total == 0:
                yield ()
            return
        if total < len(labels):
            return
        first, rest = labels[0], labels[1:]
        for k in range(1, total - len(rest) + 1):
            heads = self.trees(first, k)
            if not heads:
                continue
            tails = list(self.combine(rest, total - k))
            for h, tl in itertools.product(heads, tails):
                yield (h,) + tl

    def forests(self, size):
        out = []
        for top in self.roots:
            for combo in self.combine(sorted(top), size):
                out.append(LabeledForest(combo))
                if len(out) > self.cap:
                    raise EnumerationCapExceeded(f"more than {self.cap} forests")
        return out


def enumerate_forests(size, roots_family, list_family, cap=DEFAULT_CAP):
    """Every valid forest with exactly ``size`` vertices (each exactly once)."""
    return _Enumerator(roots_family, list_family, cap).forests(size)


def enumerate_forests_upto(max_size, roots_family, list_family, cap=DEFAULT_CAP):
    en = _Enumerator(roots_family, list_family, cap)
    out = []
    for t in range(max_size + 1):
        out.extend(en.forests(t))
        if len(out) > cap:
            raise EnumerationCapExceeded(f"more than {cap} forests")
    return out


def enumerate_forest_weight_sum(t, gamma, psi, roots_family, list_family, cap=DEFAULT_CAP):
    """(lhs, rhs) with lhs = sum over t-vertex forests of prod gamma_label and
    rhs = (max zeta)^t * sum_Roots Q, zeta_i = gamma_i / psi_i * sum_{List(i)} Q."""
    lists = [normalize_family(f) for f in list_family]
    zeta = [gamma[i] / psi[i] * family_weight(lists[i], psi) for i in range(len(lists))]
    lhs = math.fsum(math.prod(gamma[v.label] for v in phi.vertices())
                    for phi in enumerate_forests(t, roots_family, lists, cap))
    rhs = max(zeta) ** t * family_weight(normalize_family(roots_family), psi)
    return lhs, rhs
