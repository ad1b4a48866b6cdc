"""Charges, causality, regeneration and the convergence conditions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .families import (family_weight, independent_subsets, normalize_family,
                       powerset)
from .instance import PROB_TOL, ExplicitInstance


@dataclass(frozen=True)
class CausalityDigraph:
    """``adjacency[i]`` is Gamma(i), the flaws that flaw i potentially causes."""

    adjacency: tuple

    def __getitem__(self, i):
        return self.adjacency[i]

    def __len__(self):
        return len(self.adjacency)

    def items(self):
        return enumerate(self.adjacency)

    def arcs(self):
        return [(i, j) for i, js in enumerate(self.adjacency) for j in sorted(js)]


def causality_digraph(inst: ExplicitInstance) -> CausalityDigraph:
    adj = [set() for _ in range(inst.n_flaws)]
    for i, s, t, _ in inst.arcs():
        before = inst.present[s]
        for j in inst.present[t]:
            if j == i or j not in before:
                adj[i].add(j)
    return CausalityDigraph(tuple(frozenset(a) for a in adj))


def pushforward(inst: ExplicitInstance, i: int) -> np.ndarray:
    """nu_i: distribution after drawing sigma ~ mu restricted to f_i and addressing f_i."""
    _check_flaw(inst, i)
    mu = inst.mu
    nu = np.zeros(inst.n_states)
    for _, s, t, p in inst.arcs(i):
        nu[t] += mu[s] * p
    return nu / inst.flaw_measure(i)


def flaw_charge(inst: ExplicitInstance, i: int) -> tuple[float, float]:
    """Return (distortion d_i, charge gamma_i = d_i * mu(f_i))."""
    nu = pushforward(inst, i)
    d = float(np.max(nu / inst.mu))
    return d, d * inst.flaw_measure(i)


def charges(inst: ExplicitInstance) -> list[float]:
    return [flaw_charge(inst, i)[1] for i in range(inst.n_flaws)]


def check_regeneration(inst: ExplicitInstance, i: int) -> float:
    """Max |nu_i(tau) - mu(tau)|; the actions regenerate mu at f_i iff this is ~0."""
    return float(np.max(np.abs(pushforward(inst, i) - inst.mu)))


def is_regenerating(inst, tol=PROB_TOL):
    return all(check_regeneration(inst, i) <= tol for i in range(inst.n_flaws))


def check_atomicity(inst: ExplicitInstance):
    """Violations (flaw, target, sources) where a target has several sources."""
    into = {}
    for i, s, t, _ in inst.arcs():
        into.setdefault((i, t), []).append(s)
    return [(i, t, frozenset(srcs)) for (i, t), srcs in sorted(into.items()) if len(srcs) > 1]


def harmonic_kernel(inst: ExplicitInstance) -> ExplicitInstance:
    """Same action sets, with rho_i(sigma, tau) proportional to mu(tau)."""
    mu = inst.mu
    actions = {}
    for (i, s), arcs in inst.actions.items():
        targets = [t for t, _ in arcs]
        z = math.fsum(mu[t] for t in targets)
        probs = [mu[t] / z for t in targets]
        # exact normalization: the last entry absorbs rounding
        probs[-1] = 1.0 - math.fsum(probs[:-1])
        actions[(i, s)] = list(zip(targets, probs))
    return inst.with_actions(actions)


def span(inst: ExplicitInstance) -> frozenset:
    out = set()
    for s, w in enumerate(inst.theta_weight):
        if w > 0:
            out |= inst.present[s]
    return frozenset(out)


def max_ratio(inst: ExplicitInstance) -> float:
    """xi = max theta(sigma) / mu(sigma)."""
    return float(np.max(inst.theta / inst.mu))


def min_ratio(inst: ExplicitInstance) -> float:
    return float(np.min(inst.theta / inst.mu))


# -- conditions ----------------------------------------------------------------

def evaluate_condition(gamma, psi, list_family):
    """zeta_i = (gamma_i / psi_i) * sum_{S in List(i)} prod_{j in S} psi_j.

    Returns (zeta, delta) with delta = 1 - max zeta.
    """
    m = len(gamma)
    if len(psi) != m or len(list_family) != m:
        raise ValueError("gamma, psi and list_family must have one entry per flaw")
    for i, p in enumerate(psi):
        if p is None or not p > 0 or math.isinf(p):
            raise ValueError(f"psi[{i}] must be finite and positive, got {p!r}")
    zeta = []
    for i in range(m):
        fam = normalize_family(list_family[i])
        for s in fam:
            for j in s:
                if not 0 <= j < m:
                    raise ValueError(f"flaw index {j} in List({i}) out of range")
        zeta.append(gamma[i] / psi[i] * family_weight(fam, psi))
    delta = 1.0 - max(zeta) if zeta else 1.0
    return zeta, delta


def powerset_family(neighborhoods):
    return [powerset(nb) for nb in neighborhoods]


def ind_family(relation):
    return [independent_subsets(relation, relation[i]) for i in range(len(relation))]


def condition_powerset(gamma, psi, neighborhoods):
    """The simple-walk condition: List(i) = all subsets of Gamma(i)."""
    return evaluate_condition(gamma, psi, powerset_family(neighborhoods))


def condition_ind(gamma, psi, relation):
    """The recursive-walk condition: List(i) = Ind(Gamma_R(i))."""
    return evaluate_condition(gamma, psi, ind_family(relation))


def compute_T0(inst: ExplicitInstance, psi, roots_family) -> float:
    """log2(max theta/mu) + log2(sum over Roots of prod psi)."""
    return math.log2(max_ratio(inst)) + math.log2(family_weight(normalize_family(roots_family), psi))


def roots_for(inst, family, relation):
    """Roots(theta) matching a List family kind: powerset or Ind of the span."""
    sp = span(inst)
    if family == "powerset":
        return powerset(sp)
    if family == "ind":
        return independent_subsets(relation, sp)
    raise ValueError(f"unknown family kind {family!r}")


@dataclass
class ConditionReport:
    distortion: list
    charge: list
    zeta: list
    delta: float
    T0: float
    regeneration: list = field(default_factory=list)
    neighborhoods: list = field(default_factory=list)
    atomic: bool = True

    @property
    def satisfied(self):
        return self.delta > 0

    def steps_bound(self, s):
        """(T0 + s) / delta, the walk length exceeded with probability <= 2^-s."""
        if not self.satisfied:
            raise ValueError("condition not satisfied")
        return (self.T0 + s) / self.delta


def analyze(inst: ExplicitInstance, psi, family="powerset", relation=None,
            roots_family=None, list_family=None) -> ConditionReport:
    """Full condition report for an explicit instance.

    ``family`` is ``"powerset"``, ``"ind"`` or ``"custom"`` (then both
    ``roots_family`` and ``list_family`` must be given).  ``relation``
    defaults to the causality digraph.
    """
    caus = causality_digraph(inst)
    rel = caus if relation is None else relation
    dg = [flaw_charge(inst, i) for i in range(inst.n_flaws)]
    gamma = [g for _, g in dg]
    if family == "powerset":
        lists = powerset_family([rel[i] for i in range(inst.n_flaws)])
    elif family == "ind":
        lists = ind_family(rel)
    elif family == "custom":
        if roots_family is None or list_family is None:
            raise ValueError("custom family needs roots_family and list_family")
        lists = list_family
    else:
        raise ValueError(f"unknown family kind {family!r}")
    if roots_family is None:
        roots_family = roots_for(inst, family, rel)
    zeta, delta = evaluate_condition(gamma, psi, lists)
    return ConditionReport(
        distortion=[d for d, _ in dg],
        charge=gamma,
        zeta=zeta,
        delta=delta,
        T0=compute_T0(inst, psi, roots_family),
        regeneration=[check_regeneration(inst, i) for i in range(inst.n_flaws)],
        neighborhoods=[sorted(rel[i]) for i in range(inst.n_flaws)],
        atomic=not check_atomicity(inst),
    )


def _check_flaw(inst, i):
    if not isinstance(i, (int, np.integer)) or not 0 <= i < inst.n_flaws:
        raise IndexError(f"unknown flaw index {i!r}")
