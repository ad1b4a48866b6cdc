"""Command-line interface.

Exit codes: 0 success, 1 semantic failure (condition unsatisfied, verification
failed, statistical check out of band), 2 input error, 3 cap exceeded.
"""
from __future__ import annotations

import argparse
import contextlib
import math
import sys

from . import __version__
from .errors import CapExceeded, FocusedSLSError, InstanceError, ParseError, StepCapExceeded
from .families import parse_family_text, parse_psi
from .framework import analyze, causality_digraph, is_regenerating
from .instance import load_instance
from .walk import STRATEGIES, ExplicitProblem, make_rng, run_walk

OK, FAILED, BAD_INPUT, CAP = 0, 1, 2, 3


def fmt(x):
    return f"{x:.12g}"


def _family_args(inst, spec):
    """(family kind, roots, lists) from a --family value."""
    if spec in ("powerset", "ind"):
        return spec, None, None
    if spec.startswith("file:"):
        with open(spec[5:]) as fh:
            roots, lists = parse_family_text(fh.read(), inst.n_flaws, inst.flaw_names)
        return "custom", roots, lists
    raise ParseError(f"--family must be powerset, ind or file:<path>, got {spec!r}")


def _report(inst, args):
    psi = parse_psi(args.psi, inst.n_flaws, inst.flaw_names)
    kind, roots, lists = _family_args(inst, args.family)
    return analyze(inst, psi, kind, roots_family=roots, list_family=lists)


# -- subcommands ---------------------------------------------------------------

def cmd_check(args, out):
    inst = load_instance(args.instance)
    rep = _report(inst, args)
    names = inst.flaw_names
    print(f"states {inst.n_states}", file=out)
    print(f"flaws {inst.n_flaws}", file=out)
    for i, name in enumerate(names):
        nb = " ".join(names[j] for j in rep.neighborhoods[i]) or "-"
        print(f"flaw {name} d={fmt(rep.distortion[i])} gamma={fmt(rep.charge[i])} "
              f"regeneration_deviation={fmt(rep.regeneration[i])} zeta={fmt(rep.zeta[i])} "
              f"neighbors={nb}", file=out)
    print(f"atomic {'yes' if rep.atomic else 'no'}", file=out)
    print(f"delta {fmt(rep.delta)}", file=out)
    print(f"T0 {fmt(rep.T0)}", file=out)
    print(f"condition {'satisfied' if rep.satisfied else 'not satisfied'}", file=out)
    return OK if rep.satisfied else FAILED


def cmd_aec(args, out):
    from .aec import aec_color, load_graph, params_for, verify_acyclic_coloring

    g = load_graph(args.graph)
    params = params_for(g, args.mode)
    try:
        res = aec_color(g, params, seed=args.seed, max_steps=args.max_steps)
    except StepCapExceeded as exc:
        print(f"error: step cap exceeded after {exc.steps} steps", file=sys.stderr)
        return CAP
    bad = verify_acyclic_coloring(g, res.coloring)
    p = res.params
    print(f"c max_degree {p.max_degree}", file=out)
    print(f"c degeneracy {p.degeneracy}", file=out)
    print(f"c eps {p.eps:.6f}", file=out)
    print(f"c q {p.q}", file=out)
    print(f"c Q {p.Q}", file=out)
    print(f"c mode {p.mode}", file=out)
    print(f"c steps {res.steps}", file=out)
    if bad is not None:
        print(f"error: output failed verification: {bad.describe()}", file=sys.stderr)
        return FAILED
    for line in res.lines():
        print(line, file=out)
    return OK


def parse_coloring(graph, text):
    """Lines ``u v color`` (1-based), one per edge; ``c`` and ``#`` lines are comments."""
    colors = [0] * graph.m
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split("#", 1)[0].split()
        if not tok or tok[0] == "c":
            continue
        if len(tok) != 3:
            raise ParseError("expected 'u v color'", lineno)
        try:
            a, b, c = (int(x) for x in tok)
        except ValueError:
            raise ParseError("expected integers", lineno) from None
        if not graph.has_edge(a - 1, b - 1) or a == b:
            raise ParseError(f"{a} {b} is not an edge of the graph", lineno)
        e = graph.edge(a - 1, b - 1)
        if colors[e]:
            raise ParseError(f"edge {a} {b} colored twice", lineno)
        if c < 1:
            raise ParseError("colors must be positive", lineno)
        colors[e] = c
    missing = [e for e, c in enumerate(colors) if not c]
    if missing:
        a, b = graph.edges[missing[0]]
        raise ParseError(f"no color for edge {a + 1} {b + 1}")
    return colors


def cmd_verify(args, out):
    from .aec import load_graph, verify_acyclic_coloring

    g = load_graph(args.graph)
    with open(args.coloring) as fh:
        colors = parse_coloring(g, fh.read())
    bad = verify_acyclic_coloring(g, colors)
    if bad is None:
        print(f"ok: proper and acyclic, {len(set(colors))} colors", file=out)
        return OK
    print(f"violation: {bad.describe()}", file=out)
    return FAILED


def cmd_simulate(args, out):
    inst = load_instance(args.instance)
    rep = _report(inst, args)
    if not rep.satisfied:
        print(f"condition not satisfied (delta {fmt(rep.delta)})", file=out)
        return FAILED
    t_star = math.ceil((rep.T0 + args.s) / rep.delta)
    problem = ExplicitProblem(inst)
    exceed = 0
    longest = 0
    for k in range(args.trials):
        traj = run_walk(problem, args.strategy, rng=make_rng(args.seed, k),
                        max_steps=t_star, record_states=False)
        exceed += traj.capped
        longest = max(longest, len(traj))
    frac = exceed / args.trials
    p = 2.0 ** -args.s
    sigma = math.sqrt(p * (1 - p) / args.trials)
    ok = frac <= p + 3 * sigma
    print(f"delta {fmt(rep.delta)}", file=out)
    print(f"T0 {fmt(rep.T0)}", file=out)
    print(f"s {fmt(args.s)}", file=out)
    print(f"t_star {t_star}", file=out)
    print(f"trials {args.trials}", file=out)
    print(f"exceeding {exceed}", file=out)
    print(f"longest {longest}", file=out)
    print(f"fraction {fmt(frac)}", file=out)
    print(f"bound {fmt(p)} sigma {fmt(sigma)} band {fmt(p + 3 * sigma)}", file=out)
    print(f"tail {'within' if ok else 'outside'} bound", file=out)
    return OK if ok else FAILED


def cmd_forest(args, out):
    from .forest import ForestSampler, enumerate_forests, enumerate_forests_upto, forest_probability

    with open(args.families) as fh:
        roots, lists = parse_family_text(fh.read())
    n = len(lists)
    psi = parse_psi(args.psi, n)
    if args.samples is None:
        total = 0.0
        for size in range(args.t + 1):
            for phi in enumerate_forests(size, roots, lists, cap=args.cap):
                p = forest_probability(phi, psi, roots, lists, check=False)
                total += p
                print(f"forest {phi} size {size} p {fmt(p)}", file=out)
        print(f"total {fmt(total)}", file=out)
        return OK
    exact = {phi: forest_probability(phi, psi, roots, lists, check=False)
             for phi in enumerate_forests_upto(args.t, roots, lists, cap=args.cap)}
    counts = dict.fromkeys(exact, 0)
    sampler = ForestSampler(psi, roots, lists)
    rng = make_rng(args.seed)
    for _ in range(args.samples):
        # forests that outgrow t are cut short; they are never counted
        phi = sampler.sample(rng, depth_cap=args.t + 1, max_vertices=args.t + 1)
        if not phi.truncated and phi in counts:
            counts[phi] += 1
    larger = args.samples - sum(counts.values())
    worst = 0.0
    ok = True
    for phi, p in exact.items():
        freq = counts[phi] / args.samples
        sigma = math.sqrt(p * (1 - p) / args.samples)
        z = abs(freq - p) / sigma if sigma > 0 else (0.0 if freq == p else math.inf)
        worst = max(worst, z)
        inside = z <= 3
        ok &= inside
        print(f"forest {phi} exact {fmt(p)} empirical {fmt(freq)} z {z:.3f} "
              f"{'ok' if inside else 'outside'}", file=out)
    print(f"samples {args.samples} forests {len(exact)} larger {larger} "
          f"worst_z {worst:.3f}", file=out)
    return OK if ok else FAILED


def cmd_exact(args, out):
    from .exact import atomic_oracle_equations, trajectory_window, verify_witness_bound

    inst = load_instance(args.instance)
    relation = causality_digraph(inst)
    reports = [verify_witness_bound(inst, args.strategy, args.t, args.tol, relation,
                                    cap=args.cap)]
    if is_regenerating(inst, args.tol):
        reports.append(atomic_oracle_equations(inst, args.tol))
        reports.append(trajectory_window(inst, args.strategy, args.t, args.tol, relation,
                                         cap=args.cap))
    for r in reports:
        print(r.format(), file=out)
    return OK if all(r.passed for r in reports) else FAILED


# -- entry point ---------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="focusedsls", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, seed=False):
        p.add_argument("--out", help="write output here instead of standard output")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    def condition(p):
        p.add_argument("--psi", default="1.0", help="uniform value or file:<path>")
        p.add_argument("--family", default="powerset", help="powerset, ind or file:<path>")
        p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("check", help="charges and convergence condition of an instance")
    p.add_argument("instance")
    condition(p)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("aec", help="acyclic edge coloring of a graph")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("degenerate", "general", "auto"), default="auto")
    p.add_argument("--max-steps", type=int, default=None)
    common(p, seed=True)
    p.set_defaults(func=cmd_aec)

    p = sub.add_parser("verify", help="check that an edge coloring is proper and acyclic")
    p.add_argument("graph")
    p.add_argument("coloring")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="empirical tail of the walk length")
    p.add_argument("instance")
    condition(p)
    p.add_argument("--strategy", choices=STRATEGIES, default="simple")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--s", type=float, default=3.0)
    common(p, seed=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("forest", help="enumerate or sample the labeled-forest process")
    p.add_argument("families", help="roots/list family file")
    p.add_argument("--psi", default="1.0")
    p.add_argument("--t", type=int, default=3, help="maximum forest size")
    p.add_argument("--samples", type=int, default=None, help="sample instead of enumerating")
    p.add_argument("--cap", type=int, default=10**6)
    common(p, seed=True)
    p.set_defaults(func=cmd_forest)

    p = sub.add_parser("exact", help="exact witness-sequence reports for a small instance")
    p.add_argument("instance")
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--strategy", choices=STRATEGIES, default="simple")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--cap", type=int, default=10**6)
    common(p)
    p.set_defaults(func=cmd_exact)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return BAD_INPUT
    if getattr(args, "max_steps", None) is not None and args.max_steps < 0:
        print("error: --max-steps must be nonnegative", file=sys.stderr)
        return BAD_INPUT
    for name in ("cap", "trials", "samples"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return BAD_INPUT
    if not 0 <= getattr(args, "seed", 0) < 2 ** 64:
        print("error: --seed must lie in [0, 2^64)", file=sys.stderr)
        return BAD_INPUT
    try:
        with contextlib.ExitStack() as stack:
            out = sys.stdout
            if args.out:
                out = stack.enter_context(open(args.out, "w"))
            return args.func(args, out)
    except (InstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP
    except FocusedSLSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
