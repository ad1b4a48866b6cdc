"""Explicit (fully enumerated) flaws/actions instances and their text format.

An instance is the tuple (states, mu, theta, flaws, actions).  Weights are
stored unnormalized; ``mu`` and ``theta`` are the normalized views.

Text format (one directive per line, ``#`` starts a comment, 0-based)::

    states 4
    weight 0 1          # mu-weight, default 1
    theta 3 1           # theta-weight, default 0, at least one line
    flaw f1 2 3         # flaw membership
    arc f1 2 0 0.5      # addressing f1 at state 2 moves to 0 w.p. 0.5
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import InstanceError, ParseError

PROB_TOL = 1e-9


class ExplicitInstance:
    """A small, fully enumerated focused-search problem.

    Parameters
    ----------
    n_states : int
    flaws : sequence of (name, iterable of state indices)
    actions : mapping (flaw index, state index) -> sequence of (target, prob)
    measure_weight, theta_weight : per-state weights, normalized internally.
        ``measure_weight`` defaults to uniform; ``theta_weight`` defaults to
        ``measure_weight`` (theta = mu).
    state_names : optional labels used only for display.
    """

    def __init__(self, n_states, flaws, actions, measure_weight=None,
                 theta_weight=None, state_names=None):
        n = int(n_states)
        if n < 1:
            raise InstanceError("instance needs at least one state")
        self.n_states = n
        self.state_names = (tuple(str(s) for s in state_names)
                            if state_names is not None else tuple(str(i) for i in range(n)))
        if len(self.state_names) != n:
            raise InstanceError("state_names has wrong length")

        mw = [1.0] * n if measure_weight is None else [float(w) for w in measure_weight]
        tw = list(mw) if theta_weight is None else [float(w) for w in theta_weight]
        if len(mw) != n or len(tw) != n:
            raise InstanceError("weight vectors must have one entry per state")
        for s, w in enumerate(mw):
            if not w > 0:
                raise _keyed(f"mu-weight of state {s} must be positive", ("weight", s))
        for s, w in enumerate(tw):
            if not w >= 0:
                raise _keyed(f"theta-weight of state {s} must be nonnegative", ("theta", s))
        if not sum(tw) > 0:
            raise _keyed("theta-weights must have positive total", ("theta", None))
        self.measure_weight = tuple(mw)
        self.theta_weight = tuple(tw)

        names, sets = [], []
        for i, (name, members) in enumerate(flaws):
            members = frozenset(int(s) for s in members)
            if not members:
                raise _keyed(f"flaw {name!r} is empty", ("flaw", i))
            bad = [s for s in members if not 0 <= s < n]
            if bad:
                raise _keyed(f"flaw {name!r} has out-of-range state {bad[0]}", ("flaw", i))
            names.append(str(name))
            sets.append(members)
        if len(set(names)) != len(names):
            raise InstanceError("duplicate flaw names")
        self.flaw_names = tuple(names)
        self.flaw_sets = tuple(sets)

        acts = {}
        for (i, s), arcs in actions.items():
            i, s = int(i), int(s)
            if not 0 <= i < len(sets):
                raise _keyed(f"unknown flaw index {i}", ("action", i, s))
            if s not in sets[i]:
                raise _keyed(f"state {s} is not in flaw {names[i]!r}", ("action", i, s))
            merged = {}
            for t, p in arcs:
                t, p = int(t), float(p)
                if not 0 <= t < n:
                    raise _keyed(f"target state {t} out of range", ("action", i, s))
                if not p > 0:
                    raise _keyed(f"probability must be positive, got {p}", ("action", i, s))
                if t in merged:
                    raise _keyed(f"duplicate arc {s}->{t} for flaw {names[i]!r}",
                                 ("action", i, s))
                merged[t] = p
            if not merged:
                raise _keyed(f"empty action set for flaw {names[i]!r} at {s}", ("action", i, s))
            if set(merged) == {s}:
                raise _keyed(f"action set of flaw {names[i]!r} at {s} is only {{{s}}}",
                             ("action", i, s))
            total = sum(merged.values())
            if abs(total - 1.0) > PROB_TOL:
                raise _keyed(f"probabilities of flaw {names[i]!r} at {s} sum to {total!r}",
                             ("action", i, s))
            acts[(i, s)] = tuple(sorted(merged.items()))
        for i, members in enumerate(sets):
            for s in sorted(members):
                if (i, s) not in acts:
                    raise _keyed(f"flaw {names[i]!r} has no actions at state {s}", ("flaw", i))
        self.actions = acts

    # -- derived quantities -------------------------------------------------

    @property
    def n_flaws(self):
        return len(self.flaw_sets)

    @cached_property
    def mu(self):
        w = np.asarray(self.measure_weight, dtype=float)
        return w / w.sum()

    @cached_property
    def theta(self):
        w = np.asarray(self.theta_weight, dtype=float)
        return w / w.sum()

    @cached_property
    def present(self):
        """``present[s]`` is U(s), the frozenset of flaw indices at state s."""
        out = [set() for _ in range(self.n_states)]
        for i, members in enumerate(self.flaw_sets):
            for s in members:
                out[s].add(i)
        return tuple(frozenset(u) for u in out)

    def flaw_measure(self, i):
        return float(sum(self.mu[s] for s in self.flaw_sets[i]))

    def action_set(self, i, s):
        return tuple(t for t, _ in self.actions[(i, s)])

    def arcs(self, i=None):
        """Yield (flaw, source, target, prob) for every arc of the action digraph."""
        for (j, s), targets in sorted(self.actions.items()):
            if i is None or j == i:
                for t, p in targets:
                    yield j, s, t, p

    def flaw_index(self, name):
        try:
            return self.flaw_names.index(name)
        except ValueError:
            raise KeyError(f"unknown flaw {name!r}") from None

    def with_actions(self, actions):
        return ExplicitInstance(self.n_states, zip(self.flaw_names, self.flaw_sets), actions,
                                self.measure_weight, self.theta_weight, self.state_names)

    def with_theta(self, theta_weight):
        return ExplicitInstance(self.n_states, zip(self.flaw_names, self.flaw_sets),
                                self.actions, self.measure_weight, theta_weight,
                                self.state_names)

    def __eq__(self, other):
        if not isinstance(other, ExplicitInstance):
            return NotImplemented
        return (self.n_states == other.n_states
                and self.measure_weight == other.measure_weight
                and self.theta_weight == other.theta_weight
                and self.flaw_names == other.flaw_names
                and self.flaw_sets == other.flaw_sets
                and self.actions == other.actions)

    __hash__ = None

    def __repr__(self):
        return (f"ExplicitInstance(n_states={self.n_states}, "
                f"flaws={list(self.flaw_names)})")


def _keyed(message, key):
    err = InstanceError(message)
    err.key = key
    return err


# -- text format ---------------------------------------------------------------

def _real(token, lineno):
    try:
        if "/" in token:
            return float(Fraction(token))
        return float(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {token!r}", lineno) from None


def _index(token, n, lineno, what="state"):
    try:
        v = int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", lineno) from None
    if n is not None and not 0 <= v < n:
        raise ParseError(f"{what} {v} out of range 0..{n - 1}", lineno)
    return v


def parse_instance(text):
    """Parse the line-oriented instance format. Errors carry line numbers."""
    n = None
    weights, thetas = {}, {}
    flaws = {}          # name -> (order, members, lineno)
    arcs = {}           # (name, src) -> list of (tgt, p)
    arc_line = {}       # (name, src) -> first line
    weight_line, theta_line = {}, {}
    theta_seen = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw = tok[0]
        if kw == "states":
            if len(tok) != 2:
                raise ParseError("expected 'states N'", lineno)
            if n is not None:
                raise ParseError("duplicate 'states' line", lineno)
            n = _index(tok[1], None, lineno)
            if n < 1:
                raise ParseError("need at least one state", lineno)
            continue
        if n is None:
            raise ParseError("'states N' must come first", lineno)
        if kw in ("weight", "theta"):
            if len(tok) != 3:
                raise ParseError(f"expected '{kw} i w'", lineno)
            s = _index(tok[1], n, lineno)
            w = _real(tok[2], lineno)
            (weights if kw == "weight" else thetas)[s] = w
            (weight_line if kw == "weight" else theta_line)[s] = lineno
            if kw == "theta" and theta_seen is None:
                theta_seen = lineno
        elif kw == "flaw":
            if len(tok) < 3:
                raise ParseError("expected 'flaw NAME i1 i2 ...'", lineno)
            name = tok[1]
            if name in flaws:
                raise ParseError(f"duplicate flaw {name!r}", lineno)
            members = {_index(t, n, lineno) for t in tok[2:]}
            flaws[name] = (len(flaws), members, lineno)
        elif kw == "arc":
            if len(tok) != 5:
                raise ParseError("expected 'arc NAME from to p'", lineno)
            name = tok[1]
            if name not in flaws:
                raise ParseError(f"arc refers to undeclared flaw {name!r}", lineno)
            src = _index(tok[2], n, lineno)
            tgt = _index(tok[3], n, lineno)
            p = _real(tok[4], lineno)
            if src not in flaws[name][1]:
                raise ParseError(f"state {src} is not in flaw {name!r}", lineno)
            if not p > 0:
                raise ParseError(f"probability must be positive, got {tok[4]}", lineno)
            group = arcs.setdefault((name, src), [])
            if any(t == tgt for t, _ in group):
                raise ParseError(f"duplicate arc {src}->{tgt} for flaw {name!r}", lineno)
            group.append((tgt, p))
            arc_line.setdefault((name, src), lineno)
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno)
    if n is None:
        raise ParseError("missing 'states N' line", 1)
    if theta_seen is None:
        raise ParseError("at least one 'theta' line is required", len(text.splitlines()) or 1)

    order = sorted(flaws, key=lambda k: flaws[k][0])
    index = {name: i for i, name in enumerate(order)}
    actions = {(index[name], src): group for (name, src), group in arcs.items()}
    line_of = {}
    for (name, src), ln in arc_line.items():
        line_of[("action", index[name], src)] = ln
    for name in order:
        line_of[("flaw", index[name])] = flaws[name][2]
    for s, ln in weight_line.items():
        line_of[("weight", s)] = ln
    for s, ln in theta_line.items():
        line_of[("theta", s)] = ln
    line_of[("theta", None)] = theta_seen
    try:
        return ExplicitInstance(
            n,
            [(name, flaws[name][1]) for name in order],
            actions,
            measure_weight=[weights.get(s, 1.0) for s in range(n)],
            theta_weight=[thetas.get(s, 0.0) for s in range(n)],
        )
    except InstanceError as err:
        key = getattr(err, "key", None)
        raise ParseError(str(err), line_of.get(key)) from None


def load_instance(path):
    with open(path) as fh:
        return parse_instance(fh.read())


def format_instance(inst):
    """Inverse of :func:`parse_instance` (up to comments and float repr)."""
    lines = [f"states {inst.n_states}"]
    for s, w in enumerate(inst.measure_weight):
        if w != 1.0:
            lines.append(f"weight {s} {w!r}")
    for s, w in enumerate(inst.theta_weight):
        if w != 0.0:
            lines.append(f"theta {s} {w!r}")
    for name, members in zip(inst.flaw_names, inst.flaw_sets):
        lines.append(f"flaw {name} " + " ".join(str(s) for s in sorted(members)))
    for i, s, t, p in inst.arcs():
        lines.append(f"arc {inst.flaw_names[i]} {s} {t} {p!r}")
    return "\n".join(lines) + "\n"


# -- builders ------------------------------------------------------------------

def two_coin(theta=None, bias=None):
    """Two fair bits; flaw f1 = "bit 1 is set", f2 = "bit 2 is set".

    States are indexed 0..3 as ``00, 01, 10, 11``.  Addressing a flaw resamples
    its bit, uniformly unless ``bias`` gives the probability of drawing 0.
    ``theta`` is a per-state weight vector (default: theta = mu).
    """
    names = ["00", "01", "10", "11"]
    p0 = 0.5 if bias is None else float(bias)
    flaws = [("f1", [2, 3]), ("f2", [1, 3])]
    actions = {}
    for s in (2, 3):                      # f1: resample the first bit
        second = s & 1
        actions[(0, s)] = [(0 | second, p0), (2 | second, 1 - p0)]
    for s in (1, 3):                      # f2: resample the second bit
        first = s & 2
        actions[(1, s)] = [(first | 0, p0), (first | 1, 1 - p0)]
    return ExplicitInstance(4, flaws, actions, theta_weight=theta, state_names=names)


def variable_setting_instance(domains, events, var_weights=None, theta=None):
    """Moser-Tardos style instance over a product space.

    ``domains[k]`` is the size of variable k's domain and ``var_weights[k]``
    optional per-value weights (the product measure).  Each event is a dict
    ``{variable: bad value}``; addressing it resamples exactly its variables
    from the product measure, so the actions regenerate mu and are atomic.
    """
    domains = [int(d) for d in domains]
    if var_weights is None:
        var_weights = [[1.0] * d for d in domains]
    probs = [np.asarray(w, dtype=float) / float(sum(w)) for w in var_weights]
    assignments = list(itertools.product(*[range(d) for d in domains]))
    index = {a: k for k, a in enumerate(assignments)}
    mu = [float(np.prod([probs[v][a[v]] for v in range(len(domains))])) for a in assignments]
    flaws, actions = [], {}
    for e, event in enumerate(events):
        members = [k for k, a in enumerate(assignments)
                   if all(a[v] == val for v, val in event.items())]
        flaws.append((f"A{e}", members))
        evars = sorted(event)
        for k in members:
            a = list(assignments[k])
            arcs = []
            for vals in itertools.product(*[range(domains[v]) for v in evars]):
                for v, val in zip(evars, vals):
                    a[v] = val
                p = float(np.prod([probs[v][val] for v, val in zip(evars, vals)]))
                arcs.append((index[tuple(a)], p))
            actions[(e, k)] = arcs
    names = ["".join(map(str, a)) for a in assignments]
    return ExplicitInstance(len(assignments), flaws, actions, measure_weight=mu,
                            theta_weight=theta, state_names=names)


def random_instance(rng, n_states, n_flaws, atomic=False, max_actions=3,
                    uniform_mu=False, theta="mu"):
    """A random valid instance; ``rng`` is a numpy Generator.

    With ``atomic=True`` the action sets of distinct sources of each flaw are
    disjoint.  ``theta`` is ``"mu"``, ``"point"`` (a random point mass) or
    ``"random"``.
    """
    n = int(n_states)
    if n < 2:
        raise ValueError("need at least two states")
    mw = [1.0] * n if uniform_mu else list(rng.integers(1, 5, size=n).astype(float))
    flaws, actions = [], {}
    for i in range(n_flaws):
        size = int(rng.integers(1, max(1, n // 2) + 1))
        members = sorted(int(x) for x in rng.choice(n, size=size, replace=False))
        flaws.append((f"f{i}", members))
        free = [int(t) for t in rng.permutation(n)]
        for pos, s in enumerate(members):
            if atomic:
                # keep two fresh targets per remaining source so none is left with only itself
                room = max(1, len(free) - 2 * (len(members) - pos - 1))
                k = int(rng.integers(1, min(max_actions, room) + 1))
                targets = free[:k]
                if targets == [s]:
                    others = [t for t in free if t != s]
                    if not others:
                        raise ValueError("too few states for an atomic instance of this shape")
                    targets = [others[0]]
                free = [t for t in free if t not in targets]
            else:
                k = int(rng.integers(1, min(max_actions, n) + 1))
                targets = sorted(int(t) for t in rng.choice(n, size=k, replace=False))
                if targets == [s]:
                    targets = [(s + 1) % n]
            w = rng.random(len(targets)) + 0.1
            w = w / w.sum()
            w[-1] = 1.0 - w[:-1].sum()
            actions[(i, s)] = list(zip(targets, w.tolist()))
    if theta == "mu":
        tw = None
    elif theta == "point":
        tw = [0.0] * n
        tw[int(rng.integers(n))] = 1.0
    elif theta == "random":
        tw = list(rng.random(n))
    else:
        raise ValueError(f"unknown theta mode {theta!r}")
    return ExplicitInstance(n, flaws, actions, measure_weight=mw, theta_weight=tw)
