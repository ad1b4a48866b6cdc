"""Set families over flaw indices: powersets, independent subsets, weights.

A *family* is a tuple of frozensets of flaw indices.  ``Roots`` and each
``List(i)`` in the condition evaluator and the forest process are families.
"""
from __future__ import annotations

import itertools
import math

from .errors import ParseError


def normalize_family(family):
    """Deduplicate while preserving first-seen order."""
    seen = {}
    for s in family:
        seen.setdefault(frozenset(int(x) for x in s), None)
    return tuple(seen)


def powerset(items):
    items = sorted(items)
    return tuple(frozenset(c) for r in range(len(items) + 1)
                 for c in itertools.combinations(items, r))


def weight(subset, psi):
    """Q(S) = prod of psi over S (1 for the empty set)."""
    return math.prod(psi[j] for j in subset)


def family_weight(family, psi):
    """Sum over S in the family of Q(S)."""
    return math.fsum(weight(s, psi) for s in family)


def mutual_graph(relation):
    """Undirected graph G(R): {i, j} is an edge iff i->j and j->i, i != j.

    ``relation`` maps each index to an iterable of out-neighbours.  Self-loops
    are dropped, so a singleton is always independent.
    """
    out = {int(i): set(map(int, js)) for i, js in _items(relation)}
    adj = {i: set() for i in out}
    for i, js in out.items():
        for j in js:
            if j != i and i in out.get(j, ()):
                adj[i].add(j)
                adj.setdefault(j, set()).add(i)
    return adj


def independent_subsets(relation, subset):
    """Ind(S): every subset of S that is independent in G(R), including the empty set.

    Ordered by size, then lexicographically.
    """
    adj = mutual_graph(relation)
    items = sorted(set(int(x) for x in subset))
    found = []

    def extend(start, chosen, blocked):
        found.append(frozenset(chosen))
        for k in range(start, len(items)):
            x = items[k]
            if x in blocked:
                continue
            chosen.append(x)
            extend(k + 1, chosen, blocked | adj.get(x, set()))
            chosen.pop()

    extend(0, [], frozenset())
    found.sort(key=lambda s: (len(s), sorted(s)))
    return tuple(found)


def _items(relation):
    if hasattr(relation, "items"):
        return relation.items()
    return enumerate(relation)


# -- text specs used by the CLI -----------------------------------------------

def parse_psi(spec, n, names=None):
    """``"2.0"`` (uniform) or ``"file:<path>"``.

    A psi file has one value per line in flaw order, or ``NAME value`` lines.
    """
    if spec.startswith("file:"):
        with open(spec[5:]) as fh:
            text = fh.read()
        return parse_psi_text(text, n, names)
    try:
        v = float(spec)
    except ValueError:
        raise ParseError(f"bad psi spec {spec!r}") from None
    if not v > 0 or math.isinf(v):
        raise ParseError(f"psi must be finite and positive, got {v}")
    return [v] * n


def parse_psi_text(text, n, names=None):
    lookup = _resolver(names, n)
    values = [None] * n
    pos = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split("#", 1)[0].split()
        if not tok:
            continue
        if len(tok) == 1:
            if pos >= n:
                raise ParseError("more psi values than flaws", lineno)
            idx, val = pos, tok[0]
            pos += 1
        elif len(tok) == 2:
            idx, val = lookup(tok[0], lineno), tok[1]
        else:
            raise ParseError("expected 'value' or 'flaw value'", lineno)
        try:
            v = float(val)
        except ValueError:
            raise ParseError(f"not a number: {val!r}", lineno) from None
        if not v > 0 or math.isinf(v):
            raise ParseError(f"psi must be finite and positive, got {v}", lineno)
        values[idx] = v
    missing = [i for i, v in enumerate(values) if v is None]
    if missing:
        raise ParseError(f"no psi value for flaw {missing[0]}")
    return values


def parse_family_text(text, n=None, names=None):
    """Parse Roots/List families.

    Lines are ``roots a b ...`` (one set of Roots per line; a bare ``roots``
    is the empty set), ``list i a b ...`` (one set of List(i)) and an optional
    ``flaws M`` giving the number of flaws.  Tokens are flaw names when
    ``names`` is given, else integer labels.  Flaws with no ``list`` line get
    List(i) = {empty set}.
    """
    roots, lists = [], {}
    declared = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split("#", 1)[0].split()
        if not tok:
            continue
        if tok[0] == "flaws":
            if len(tok) != 2 or not tok[1].isdigit():
                raise ParseError("expected 'flaws M'", lineno)
            declared = int(tok[1])
        elif tok[0] in ("roots", "list"):
            rows.append((lineno, tok))
        else:
            raise ParseError(f"unknown directive {tok[0]!r}", lineno)
    if n is None:
        n = declared
    if n is None:
        labels = [int(t) for _, tok in rows for t in tok[1:] if t.lstrip("-").isdigit()]
        n = max(labels) + 1 if labels else 0
    lookup = _resolver(names, n)
    for lineno, tok in rows:
        if tok[0] == "roots":
            roots.append(frozenset(lookup(t, lineno) for t in tok[1:]))
        else:
            if len(tok) < 2:
                raise ParseError("expected 'list i ...'", lineno)
            owner = lookup(tok[1], lineno)
            lists.setdefault(owner, []).append(frozenset(lookup(t, lineno) for t in tok[2:]))
    if not roots:
        raise ParseError("family file has no 'roots' line")
    list_family = [normalize_family(lists.get(i, [frozenset()])) for i in range(n)]
    return normalize_family(roots), list_family


def _resolver(names, n):
    if names is not None:
        index = {name: i for i, name in enumerate(names)}

        def lookup(token, lineno=None):
            if token in index:
                return index[token]
            if token.isdigit() and int(token) < n:
                return int(token)
            raise ParseError(f"unknown flaw {token!r}", lineno)
        return lookup

    def lookup(token, lineno=None):
        try:
            v = int(token)
        except ValueError:
            raise ParseError(f"not a flaw label: {token!r}", lineno) from None
        if not 0 <= v < n:
            raise ParseError(f"flaw label {v} out of range", lineno)
        return v
    return lookup
