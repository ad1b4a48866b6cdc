"""Palette sizes and the numeric conditions behind them.

Palettes are computed with integer arithmetic so that values such as
4.182 * 100 = 418.2 and 2*100 + 4*sqrt(400) = 280 round exactly.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from ..errors import PreconditionError
from .graph import degeneracy_order

KAPPA = 2.182
LAMBDA_GENERAL = 0.569
ALPHA = 2.76
LAMBDA_DEGENERATE = 0.086
GENERAL_FACTOR = Fraction(4182, 1000)   # kappa + 2, colors per (max degree - 1)

MODES = ("degenerate", "general", "auto")


@dataclass(frozen=True)
class AecParams:
    max_degree: int
    degeneracy: int
    q: int
    mode: str

    @property
    def Q(self):
        """Colors guaranteed 4-available for any edge: q - 2(max degree - 1)."""
        return self.q - 2 * (self.max_degree - 1)

    @property
    def eps(self):
        if self.max_degree == 0:
            return 0.0
        return 4 * math.sqrt(self.degeneracy / self.max_degree)

    def describe(self):
        return (f"max_degree={self.max_degree} degeneracy={self.degeneracy} "
                f"eps={self.eps:.6f} q={self.q} Q={self.Q} mode={self.mode}")


def _ceil_sqrt(n):
    return 0 if n <= 0 else math.isqrt(n - 1) + 1


def degenerate_palette(max_degree, degeneracy):
    """ceil((2 + 4 sqrt(d/D)) D) = 2D + ceil(sqrt(16 d D))."""
    return 2 * max_degree + _ceil_sqrt(16 * degeneracy * max_degree)


def general_palette(max_degree):
    """ceil(4.182 (D - 1))."""
    return math.ceil(GENERAL_FACTOR * (max_degree - 1))


def palette_size(graph, mode="auto"):
    """AecParams for ``graph``; ``auto`` takes the smaller of the two palettes."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    D = graph.max_degree
    if D < 2:
        raise PreconditionError("palette formulas need max degree >= 2")
    d, _ = degeneracy_order(graph)
    options = {"degenerate": degenerate_palette(D, d), "general": general_palette(D)}
    if mode == "auto":
        chosen = min(options, key=lambda k: (options[k], k != "degenerate"))
    else:
        chosen = mode
    q = options[chosen]
    if q - 2 * (D - 1) < 1 or q < D + 1:
        warnings.warn(f"palette {q} leaves no 4-available surplus; using {2 * D + 1}")
        q = 2 * D + 1
    return AecParams(D, d, q, chosen)


def params_for(graph, mode="auto"):
    """Like palette_size, but graphs with max degree < 2 get a proper D+1 palette."""
    if graph.max_degree < 2:
        d, _ = degeneracy_order(graph)
        return AecParams(graph.max_degree, d, graph.max_degree + 1, "trivial")
    return palette_size(graph, mode)


# -- conditions ----------------------------------------------------------------

def general_margin(cycle_length, kappa=KAPPA, lam=LAMBDA_GENERAL):
    """(1/(lam kappa))^(|C|-2) * (1 + lam^4/(1 - lam^2))^|C|; below 1 certifies |C|."""
    if cycle_length < 4 or cycle_length % 2:
        raise ValueError("cycle length must be even and at least 4")
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    return ((1 / (lam * kappa)) ** (cycle_length - 2)
            * (1 + lam ** 4 / (1 - lam ** 2)) ** cycle_length)


def degenerate_beta(alpha=ALPHA, lam=LAMBDA_DEGENERATE):
    """alpha * (1/sqrt(1 - 4 lam) - 1 - 2 lam): sum over n >= 2 of alpha C(2n,n) lam^n."""
    if not 0 < lam < 0.25:
        raise PreconditionError("lambda must lie in (0, 1/4) for the binomial series")
    return alpha * (1 / math.sqrt(1 - 4 * lam) - 1 - 2 * lam)


def degenerate_constant(alpha=ALPHA, lam=LAMBDA_DEGENERATE):
    """(1 + beta)/sqrt(lam): Q must exceed this multiple of sqrt(d D)."""
    return (1 + degenerate_beta(alpha, lam)) / math.sqrt(lam)


def degenerate_premise(alpha=ALPHA, lam=LAMBDA_DEGENERATE):
    """(2(1+beta)^2, alpha); the constant suffices for every n when the first is below alpha."""
    beta = degenerate_beta(alpha, lam)
    return 2 * (1 + beta) ** 2, alpha


def condition_margin(cycle_length, mode, params=None, kappa=KAPPA, lam=None, alpha=ALPHA):
    """Ratio that certifies the algorithmic condition for cycles of this length when < 1.

    general: the closed form above (independent of the graph).
    degenerate: Q_required / Q with Q_required = (1+beta)/sqrt(lam) * sqrt(d D);
    without ``params`` it returns (1+beta)/sqrt(lam) / 4, the ratio against
    the palette surplus 4 sqrt(d D) used by the degenerate palette.
    """
    if cycle_length < 6 or cycle_length % 2:
        raise ValueError("cycle length must be even and at least 6")
    if mode == "general":
        return general_margin(cycle_length, kappa, LAMBDA_GENERAL if lam is None else lam)
    if mode == "degenerate":
        c = degenerate_constant(alpha, LAMBDA_DEGENERATE if lam is None else lam)
        if params is None:
            return c / 4
        return c * math.sqrt(params.degeneracy * params.max_degree) / params.Q
    raise ValueError("mode must be 'general' or 'degenerate'")
