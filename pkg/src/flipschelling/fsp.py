"""One-shot simultaneous majority flip dynamics and segregation measures.

Each agent holds one of two types (+1/-1). In a single synchronous step an
agent keeps its type when a strict majority of its neighbors agrees with
it, flips when a strict majority disagrees, and flips on a fair coin when
the neighborhood is split exactly in half. All decisions read the input
assignment only.

For graphs with at most 16 vertices, exact probabilities over the 2^n
random initial assignments (with tie coins resolved by weighted counting)
are available as oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import Graph, neighborhood_partition
from .rng import RngStream

PLUS = 1
MINUS = -1

_EXACT_MAX_VERTICES = 16

__all__ = [
    "PLUS",
    "MINUS",
    "DecisivenessTriple",
    "initial_types",
    "fsp_step",
    "monochrome_fraction",
    "edge_decisiveness",
    "exact_monochrome_probability",
    "exact_decisiveness_probability",
]


@dataclass(frozen=True)
class DecisivenessTriple:
    """Majority margins |#plus - #minus| around an edge {u, v}.

    d_common counts the common neighborhood. Each exclusive margin counts
    the vertices adjacent to exactly one endpoint, which includes the other
    endpoint itself: v is adjacent to u but not to v, so v's type joins u's
    exclusive side (and symmetrically). Dropping the endpoints would break
    the guarantee that a strictly dominant common neighborhood forces both
    endpoints onto its majority type.
    """

    d_common: int
    d_u_exclusive: int
    d_v_exclusive: int


def initial_types(n: int, stream: RngStream) -> np.ndarray:
    """Independent uniform types; consumes exactly n coin draws in vertex order."""
    if n < 1:
        raise ValueError(f"need n >= 1 vertices, got {n}")
    coins = stream.fair_coins(n)
    return np.where(coins == 1, PLUS, MINUS).astype(np.int8)


def fsp_step(g: Graph, types: np.ndarray, stream: RngStream) -> np.ndarray:
    """One synchronous flip step; returns the new assignment.

    Tie coins are drawn for the tied vertices only, in ascending vertex
    order, so outputs do not depend on randomness of untied vertices.
    Isolated vertices keep their type (the majority rule is vacuous there,
    and keeping is the one choice that adds no randomness).
    """
    n = g.n
    if len(types) != n:
        raise ValueError(f"type vector has length {len(types)}, graph has {n} vertices")
    owners = np.repeat(np.arange(n), g.degrees)
    neighbor_sum = np.bincount(owners, weights=types[g.neighbors], minlength=n)
    alignment = types * neighbor_sum  # >0 majority agrees, <0 disagrees, 0 tie

    out = types.copy()
    out[alignment < 0] *= -1
    tied = np.flatnonzero((alignment == 0) & (g.degrees > 0))
    if len(tied):
        flip = tied[stream.fair_coins(len(tied)) == 1]
        out[flip] *= -1
    return out


def monochrome_fraction(g: Graph, types: np.ndarray) -> float:
    """Fraction of edges whose endpoints share a type."""
    if g.edge_count == 0:
        raise ValueError("monochrome fraction is undefined on a graph with no edges")
    if len(types) != g.n:
        raise ValueError(f"type vector has length {len(types)}, graph has {g.n} vertices")
    same = types[g.edge_u] == types[g.edge_v]
    return float(np.count_nonzero(same)) / g.edge_count


def edge_decisiveness(g: Graph, types: np.ndarray, u: int, v: int) -> DecisivenessTriple:
    """Decisiveness margins of the three neighbor classes around edge {u, v}."""
    if not g.has_edge(u, v):
        raise ValueError(f"{{{u}, {v}}} is not an edge")
    part = neighborhood_partition(g, u, v)
    t = types.astype(np.int64)
    return DecisivenessTriple(
        d_common=int(abs(t[part.common].sum())),
        d_u_exclusive=int(abs(t[part.u_exclusive].sum() + t[v])),
        d_v_exclusive=int(abs(t[part.v_exclusive].sum() + t[u])),
    )


# ===================================================================
# EXHAUSTIVE EXACT ORACLES (n <= 16)
# ===================================================================


def exact_monochrome_probability(g: Graph, u: int, v: int) -> Fraction:
    """Exact probability that edge {u, v} is monochrome after one step.

    Enumerates all 2^n initial assignments. Within an assignment only the
    endpoints' own decisions matter one step ahead; a tied endpoint
    contributes an independent fair coin, so each assignment contributes
    1, 1/2, or 0 to the probability.
    """
    t, adj = _enumeration_setup(g, u, v)
    final_u, tied_u = _endpoint_outcome(t, adj, u)
    final_v, tied_v = _endpoint_outcome(t, adj, v)
    determined = ~(tied_u | tied_v)
    equal = determined & (final_u == final_v)
    # per-assignment numerators over denominator 2: determined-equal -> 2,
    # any tie -> 1 (coin agreement is 1/2), determined-unequal -> 0
    numerator = 2 * int(np.count_nonzero(equal)) + int(np.count_nonzero(~determined))
    return Fraction(numerator, 2 ** (g.n + 1))


def exact_decisiveness_probability(g: Graph, u: int, v: int) -> Fraction:
    """Exact probability that the common neighborhood of {u, v} is strictly
    more decisive than both exclusive neighborhoods (endpoints included on
    the exclusive sides, matching edge_decisiveness)."""
    t, _ = _enumeration_setup(g, u, v)
    part = neighborhood_partition(g, u, v)
    t32 = t.astype(np.int32)
    d_common = np.abs(t32[:, part.common].sum(axis=1))
    d_u = np.abs(t32[:, part.u_exclusive].sum(axis=1) + t32[:, v])
    d_v = np.abs(t32[:, part.v_exclusive].sum(axis=1) + t32[:, u])
    hits = np.count_nonzero((d_common > d_u) & (d_common > d_v))
    return Fraction(int(hits), 2 ** g.n)


def _enumeration_setup(g: Graph, u: int, v: int) -> tuple[np.ndarray, np.ndarray]:
    n = g.n
    if n > _EXACT_MAX_VERTICES:
        raise ValueError(f"exact enumeration supports n <= {_EXACT_MAX_VERTICES}, got {n}")
    if not g.has_edge(u, v):
        raise ValueError(f"{{{u}, {v}}} is not an edge")
    codes = np.arange(1 << n, dtype=np.uint32)
    bits = (codes[:, None] >> np.arange(n, dtype=np.uint32)) & 1
    t = (2 * bits.astype(np.int8) - 1)
    adj = np.zeros((n, n), dtype=np.int8)
    for w in range(n):
        adj[w, g.neighbors_of(w)] = 1
    return t, adj


def _endpoint_outcome(t: np.ndarray, adj: np.ndarray, w: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-assignment final type of w (undefined where tied) and tie mask."""
    sums = t.astype(np.int16) @ adj[w].astype(np.int16)
    align = t[:, w].astype(np.int16) * sums
    tied = align == 0
    final = np.where(align >= 0, t[:, w], -t[:, w]).astype(np.int8)
    return final, tied
