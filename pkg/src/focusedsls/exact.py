"""Exact witness-sequence distributions and the bounds they must obey.

Everything here enumerates the walk's full joint law by forward dynamic
programming, so it is only meant for instances with a handful of states.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import PreconditionError, SupportCapExceeded
from .framework import (causality_digraph, charges, check_atomicity,
                        check_regeneration, max_ratio, min_ratio)
from .instance import PROB_TOL
from .walk import RECURSIVE, SIMPLE, ExplicitProblem, recursive_select

DEFAULT_CAP = 10**6


@dataclass
class WitnessDistribution:
    t: int
    entries: dict                 # witness tuple -> probability
    halt_mass: float              # reached a flawless state in fewer than t steps
    joint: dict = field(default_factory=dict, repr=False)   # (witness, state) -> prob

    def total(self):
        return math.fsum(self.entries.values()) + self.halt_mass

    def __getitem__(self, w):
        return self.entries.get(tuple(w), 0.0)


def witness_distribution(inst, strategy=SIMPLE, t=1, relation=None, cap=DEFAULT_CAP):
    """Exact law of W_t (first t flaws addressed) under (theta, rho, flaw choice).

    The DP key is (witness prefix, current state) for the simple walk and
    additionally the tuple of pending ADDRESS frames for the recursive walk.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if strategy not in (SIMPLE, RECURSIVE):
        raise ValueError(f"unknown strategy {strategy!r}")
    problem = ExplicitProblem(inst, relation)
    layer = defaultdict(float)
    for s, p in enumerate(inst.theta):
        if p > 0:
            layer[((), s, ())] += float(p)
    halt = 0.0
    for _ in range(t):
        nxt = defaultdict(float)
        for (w, s, stack), p in layer.items():
            if strategy == SIMPLE:
                u = inst.present[s]
                flaw = min(u) if u else None
                rest = ()
            else:
                flaw, rest = recursive_select(problem, s, stack)
                rest = tuple(rest)
            if flaw is None:
                halt += p
                continue
            w2 = w + (flaw,)
            stack2 = rest + (flaw,) if strategy == RECURSIVE else ()
            for tgt, q in inst.actions[(flaw, s)]:
                nxt[(w2, tgt, stack2)] += p * q
            if len(nxt) > cap:
                raise SupportCapExceeded(f"more than {cap} joint DP states")
        layer = nxt
    entries = defaultdict(float)
    joint = defaultdict(float)
    for (w, s, _), p in layer.items():
        entries[w] += p
        joint[(w, s)] += p
    return WitnessDistribution(t, dict(entries), halt, dict(joint))


# -- reports -------------------------------------------------------------------

@dataclass
class Assertion:
    name: str
    lhs: float
    rhs: float
    kind: str = "le"              # "le": lhs <= rhs, "eq": lhs == rhs
    tol: float = PROB_TOL

    @property
    def slack(self):
        if self.kind == "eq":
            return 0.0 - abs(self.lhs - self.rhs)
        return self.rhs - self.lhs

    @property
    def passed(self):
        return self.slack >= -self.tol

    def line(self):
        op = "==" if self.kind == "eq" else "<="
        status = "PASS" if self.passed else "FAIL"
        return (f"{self.name} {op} lhs={self.lhs:.12g} rhs={self.rhs:.12g} "
                f"slack={self.slack:.6g} {status}")


@dataclass
class Report:
    title: str
    assertions: list = field(default_factory=list)

    def add(self, *args, **kw):
        self.assertions.append(Assertion(*args, **kw))

    @property
    def passed(self):
        return all(a.passed for a in self.assertions)

    @property
    def worst_slack(self):
        return min((a.slack for a in self.assertions), default=math.inf)

    def failures(self):
        return [a for a in self.assertions if not a.passed]

    def format(self):
        lines = [f"# {self.title}"]
        lines.extend(a.line() for a in self.assertions)
        lines.append(f"# {'PASS' if self.passed else 'FAIL'} "
                     f"({len(self.assertions)} assertions, worst slack {self.worst_slack:.6g})")
        return "\n".join(lines)


def _wname(inst, w):
    return ",".join(inst.flaw_names[i] for i in w) or "-"


def verify_witness_bound(inst, strategy=SIMPLE, t=1, tol=PROB_TOL, relation=None,
                         cap=DEFAULT_CAP, per_state=True):
    """Pr[W_t = W] <= xi * prod gamma over W, for every W with positive probability.

    With ``per_state`` the stronger joint claim
    Pr[W_t = W, sigma_{t+1} = tau] <= xi * prod gamma * mu(tau) is checked too.
    """
    dist = witness_distribution(inst, strategy, t, relation, cap)
    gamma = charges(inst)
    xi = max_ratio(inst)
    rep = Report(f"witness bound ({strategy}, t={t}, xi={xi:.6g})")
    for w, p in sorted(dist.entries.items()):
        bound = xi * math.prod(gamma[i] for i in w)
        rep.add(f"W[{_wname(inst, w)}]", p, bound, tol=tol)
    if per_state:
        for (w, s), p in sorted(dist.joint.items()):
            bound = xi * math.prod(gamma[i] for i in w) * float(inst.mu[s])
            rep.add(f"W[{_wname(inst, w)}]&state={s}", p, bound, tol=tol)
    return rep


def _require_oracle(inst, tol):
    bad = check_atomicity(inst)
    if bad:
        i, t, srcs = bad[0]
        raise PreconditionError(
            f"action digraph is not atomic: flaw {inst.flaw_names[i]!r} reaches {t} "
            f"from {sorted(srcs)}")
    for i in range(inst.n_flaws):
        dev = check_regeneration(inst, i)
        if dev > tol:
            raise PreconditionError(
                f"actions do not regenerate mu at flaw {inst.flaw_names[i]!r} "
                f"(deviation {dev:.3g})")


def atomic_oracle_equations(inst, tol=PROB_TOL):
    """Evaluate the atomic resampling-oracle identities without checking hypotheses.

    For every flaw i and sigma in f_i: mu(A(i, sigma)) = mu(sigma) / mu(f_i),
    rho is harmonic on A(i, sigma), and the action sets of f_i cover all states.
    """
    mu = inst.mu
    rep = Report("atomic resampling oracle")
    for i in range(inst.n_flaws):
        mf = inst.flaw_measure(i)
        name = inst.flaw_names[i]
        covered = set()
        for s in sorted(inst.flaw_sets[i]):
            arcs = inst.actions[(i, s)]
            targets = [t for t, _ in arcs]
            covered.update(targets)
            mass = math.fsum(mu[t] for t in targets)
            rep.add(f"mass[{name}@{s}]", mass, float(mu[s]) / mf, kind="eq", tol=tol)
            for t, p in arcs:
                rep.add(f"harmonic[{name}@{s}->{t}]", p, float(mu[t]) / mass,
                        kind="eq", tol=tol)
        rep.add(f"cover[{name}]", float(len(covered)), float(inst.n_states), kind="eq", tol=0)
    return rep


def verify_atomic_oracle(inst, tol=PROB_TOL):
    """Check atomicity and regeneration first, then the oracle identities."""
    _require_oracle(inst, tol)
    return atomic_oracle_equations(inst, tol)


def trajectory_window(inst, strategy=SIMPLE, t=1, tol=PROB_TOL, relation=None,
                      cap=DEFAULT_CAP):
    """alpha * prod mu(w_i) <= Pr[W_t = W] <= beta * prod mu(w_i), hypotheses unchecked."""
    dist = witness_distribution(inst, strategy, t, relation, cap)
    alpha, beta = min_ratio(inst), max_ratio(inst)
    fm = [inst.flaw_measure(i) for i in range(inst.n_flaws)]
    rep = Report(f"trajectory window ({strategy}, t={t}, alpha={alpha:.6g}, beta={beta:.6g})")
    for w, p in sorted(dist.entries.items()):
        if p <= 0:
            continue
        base = math.prod(fm[i] for i in w)
        rep.add(f"lower[{_wname(inst, w)}]", alpha * base, p, tol=tol)
        rep.add(f"upper[{_wname(inst, w)}]", p, beta * base, tol=tol)
    return rep


def verify_trajectory_window(inst, strategy=SIMPLE, t=1, tol=PROB_TOL, relation=None,
                             cap=DEFAULT_CAP):
    _require_oracle(inst, tol)
    return trajectory_window(inst, strategy, t, tol, relation, cap)


def default_relation(inst):
    return causality_digraph(inst)
