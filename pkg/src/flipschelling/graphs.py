"""Random graph construction and neighborhood queries.

Two calibrated models on n vertices with expected average degree d:

* geometric graphs on the unit torus: vertices are i.i.d. uniform points,
  an edge joins two vertices iff their torus distance is at most
  r = sqrt(d / ((n - 1) * pi));
* Erdos-Renyi graphs: each unordered pair is an edge independently with
  probability p = d / (n - 1).

Graphs are stored in compressed adjacency form (offsets + flat sorted
neighbor array) plus the unique edge arrays in lexicographic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .rng import RngStream

__all__ = [
    "Graph",
    "NeighborhoodPartition",
    "torus_distance",
    "radius_for_degree",
    "er_probability_for_degree",
    "generate_rgg",
    "generate_er",
    "neighborhood_partition",
    "naive_edges",
    "grid_edges",
    "edge_distances",
    "write_edge_list",
]


# ===================================================================
# GRAPH CONTAINER
# ===================================================================


class Graph:
    """Undirected simple graph in compressed adjacency form.

    Invariants: adjacency is symmetric, neighbor lists are sorted, there
    are no self-loops or duplicate edges, and edge_count equals the sum
    of degrees divided by two.
    """

    __slots__ = ("offsets", "neighbors", "edge_u", "edge_v")

    def __init__(self, offsets: np.ndarray, neighbors: np.ndarray,
                 edge_u: np.ndarray, edge_v: np.ndarray):
        self.offsets = offsets
        self.neighbors = neighbors
        self.edge_u = edge_u
        self.edge_v = edge_v

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from an iterable of (u, v) pairs.

        Pairs may appear in any order/orientation; duplicates collapse.
        Self-loops and out-of-range endpoints are rejected.
        """
        if n < 0:
            raise ValueError(f"vertex count must be >= 0, got {n}")
        pairs = list(edges)
        if not pairs:
            return cls._from_sorted_pairs(n, np.empty(0, dtype=np.int64),
                                          np.empty(0, dtype=np.int64))
        arr = np.asarray(pairs, dtype=np.int64)
        u, v = arr[:, 0], arr[:, 1]
        if np.any(u == v):
            raise ValueError("self-loops are not allowed")
        if np.any((arr < 0) | (arr >= n)):
            raise ValueError(f"edge endpoint out of range [0, {n})")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        codes = np.unique(lo * n + hi)
        return cls._from_sorted_pairs(n, codes // n, codes % n)

    @classmethod
    def _from_sorted_pairs(cls, n: int, eu: np.ndarray, ev: np.ndarray) -> "Graph":
        # eu < ev, unique, lexicographically sorted
        eu = eu.astype(np.int64, copy=False)
        ev = ev.astype(np.int64, copy=False)
        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        order = np.lexsort((dst, src))
        degrees = np.bincount(src, minlength=n)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=offsets[1:])
        return cls(offsets, dst[order], eu, ev)

    @property
    def n(self) -> int:
        return len(self.offsets) - 1

    @property
    def edge_count(self) -> int:
        return len(self.edge_u)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.offsets[v + 1] - self.offsets[v])

    def neighbors_of(self, v: int) -> np.ndarray:
        """Sorted neighbor indices of v (view into the flat array)."""
        self._check_vertex(v)
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors_of(u)
        self._check_vertex(v)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(n={self.n}, edges={self.edge_count})"


@dataclass(frozen=True)
class NeighborhoodPartition:
    """The three neighbor classes of an ordered vertex pair (u, v).

    All lists exclude u and v themselves; every other vertex adjacent to
    at least one of the pair lands in exactly one class. The remaining
    n - 2 - (the three counts) vertices are adjacent to neither.
    """

    common: np.ndarray
    u_exclusive: np.ndarray
    v_exclusive: np.ndarray

    @property
    def n_common(self) -> int:
        return len(self.common)

    @property
    def n_u_exclusive(self) -> int:
        return len(self.u_exclusive)

    @property
    def n_v_exclusive(self) -> int:
        return len(self.v_exclusive)

    def n_outside(self, n: int) -> int:
        """Vertices adjacent to neither u nor v (u, v themselves excluded)."""
        return n - 2 - self.n_common - self.n_u_exclusive - self.n_v_exclusive


# ===================================================================
# TORUS GEOMETRY AND CALIBRATION
# ===================================================================


def torus_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """Euclidean distance on the unit torus (wraparound per coordinate)."""
    dx = abs(a[0] - b[0])
    dy = abs(a[1] - b[1])
    dx = min(dx, 1.0 - dx)
    dy = min(dy, 1.0 - dy)
    return math.hypot(dx, dy)


def radius_for_degree(n: int, avg_degree: float) -> float:
    """Connection radius giving expected average degree (n-1)*pi*r^2.

    Radii above 1/2 are rejected: past half the torus width the disk wraps
    onto itself and the area calibration silently breaks.
    """
    if n < 2:
        raise ValueError(f"need n >= 2 vertices, got {n}")
    if avg_degree <= 0:
        raise ValueError(f"average degree must be > 0, got {avg_degree}")
    r = math.sqrt(avg_degree / ((n - 1) * math.pi))
    if r > 0.5:
        raise ValueError(
            f"radius {r:.4f} exceeds 1/2; avg_degree={avg_degree} is too large for n={n}"
        )
    return r


def er_probability_for_degree(n: int, avg_degree: float) -> float:
    """Edge probability giving expected average degree (n-1)*p."""
    if n < 2:
        raise ValueError(f"need n >= 2 vertices, got {n}")
    if avg_degree <= 0:
        raise ValueError(f"average degree must be > 0, got {avg_degree}")
    p = avg_degree / (n - 1)
    if p > 1.0:
        raise ValueError(f"edge probability {p:.4f} exceeds 1; lower avg_degree={avg_degree}")
    return p


# ===================================================================
# GEOMETRIC GRAPH GENERATION
# ===================================================================


def generate_rgg(n: int, avg_degree: float, stream: RngStream) -> tuple[Graph, np.ndarray]:
    """Sample a torus geometric graph; returns (graph, points).

    Placement consumes exactly 2n uniform draws in vertex order. Points are
    returned alongside the graph so per-edge normalized distances stay
    recoverable. Edges come from a wraparound cell grid with cell side at
    least r; the edge set is identical to the naive all-pairs rule.
    """
    r = radius_for_degree(n, avg_degree)
    points = stream.uniforms(2 * n).reshape(n, 2)
    eu, ev = grid_edges(points, r)
    return Graph._from_sorted_pairs(n, eu, ev), points


def naive_edges(points: np.ndarray, r: float) -> tuple[np.ndarray, np.ndarray]:
    """All-pairs reference edge rule: {u,v} iff torus distance <= r.

    Quadratic; usable up to a few thousand points. Serves as the oracle the
    cell-grid construction must match edge for edge.
    """
    n = len(points)
    iu, iv = np.triu_indices(n, k=1)
    mask = _within_radius(points, iu, iv, r)
    return iu[mask].astype(np.int64), iv[mask].astype(np.int64)


def grid_edges(points: np.ndarray, r: float) -> tuple[np.ndarray, np.ndarray]:
    """Cell-grid edge construction, O(n * avg_degree) expected.

    The torus is cut into m x m cells with m = floor(1/r) (so the cell side
    1/m is >= r) and only the 3x3 wraparound cell neighborhood of each point
    is scanned. Pair candidates are deduplicated, which also covers the
    aliasing that occurs when m < 4.
    """
    n = len(points)
    if n < 2:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    m = max(1, int(1.0 / r))
    cx = np.minimum((points[:, 0] * m).astype(np.int64), m - 1)
    cy = np.minimum((points[:, 1] * m).astype(np.int64), m - 1)
    cell = cx * m + cy
    order = np.argsort(cell, kind="stable")
    cell_sorted = cell[order]
    bounds = np.searchsorted(cell_sorted, np.arange(m * m + 1))

    vertex_ids = np.arange(n, dtype=np.int64)
    chunks_u, chunks_v = [], []
    for dx in (-1, 0, 1):
        ncx = (cx + dx) % m
        for dy in (-1, 0, 1):
            ncy = (cy + dy) % m
            ncell = ncx * m + ncy
            starts, ends = bounds[ncell], bounds[ncell + 1]
            lens = ends - starts
            owners = np.repeat(vertex_ids, lens)
            cand = order[_concat_ranges(starts, lens)]
            keep = owners < cand
            chunks_u.append(owners[keep])
            chunks_v.append(cand[keep])
    pu = np.concatenate(chunks_u)
    pv = np.concatenate(chunks_v)
    codes = np.unique(pu * n + pv)
    pu, pv = codes // n, codes % n
    mask = _within_radius(points, pu, pv, r)
    return pu[mask], pv[mask]


def _within_radius(points: np.ndarray, iu: np.ndarray, iv: np.ndarray, r: float) -> np.ndarray:
    dx = np.abs(points[iu, 0] - points[iv, 0])
    dy = np.abs(points[iu, 1] - points[iv, 1])
    np.minimum(dx, 1.0 - dx, out=dx)
    np.minimum(dy, 1.0 - dy, out=dy)
    return dx * dx + dy * dy <= r * r


def _concat_ranges(starts: np.ndarray, lens: np.ndarray) -> np.ndarray:
    """Concatenate [starts[i], starts[i]+lens[i]) ranges into one index array."""
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    shifts = np.repeat(starts + lens - np.cumsum(lens), lens)
    return np.arange(total, dtype=np.int64) + shifts


def edge_distances(graph: Graph, points: np.ndarray) -> np.ndarray:
    """Torus distance per edge, in the graph's edge order."""
    iu, iv = graph.edge_u, graph.edge_v
    dx = np.abs(points[iu, 0] - points[iv, 0])
    dy = np.abs(points[iu, 1] - points[iv, 1])
    np.minimum(dx, 1.0 - dx, out=dx)
    np.minimum(dy, 1.0 - dy, out=dy)
    return np.sqrt(dx * dx + dy * dy)


# ===================================================================
# ERDOS-RENYI GENERATION
# ===================================================================


def generate_er(n: int, avg_degree: float, stream: RngStream) -> Graph:
    """Sample an Erdos-Renyi graph via geometric skipping.

    Walks the lexicographic pair sequence with Geometric(p) gaps, which
    matches including each pair independently with probability p while
    drawing only O(edge count) uniforms.
    """
    p = er_probability_for_degree(n, avg_degree)
    total = n * (n - 1) // 2
    if p >= 1.0:
        iu, iv = np.triu_indices(n, k=1)
        return Graph._from_sorted_pairs(n, iu.astype(np.int64), iv.astype(np.int64))

    log_q = math.log1p(-p)
    selected = []
    pos = -1
    while True:
        remaining = total - pos
        batch = max(64, int(remaining * p * 1.2) + 8)
        gaps = np.floor(np.log1p(-stream.uniforms(batch)) / log_q).astype(np.int64)
        hits = pos + np.cumsum(gaps + 1)
        cut = int(np.searchsorted(hits, total, side="left"))
        selected.append(hits[:cut])
        if cut < len(hits):
            break
        pos = int(hits[-1])
    linear = np.concatenate(selected) if selected else np.empty(0, dtype=np.int64)
    eu, ev = _pairs_from_linear(linear, n)
    return Graph._from_sorted_pairs(n, eu, ev)


def _pairs_from_linear(t: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Invert the lexicographic enumeration of unordered pairs.

    Index t counts pairs (0,1), (0,2), ..., (0,n-1), (1,2), ... ; row u
    starts at S(u) = u*(2n-u-1)/2. The float solve is corrected with exact
    integer comparisons.
    """
    if len(t) == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    b = 2 * n - 1
    u = ((b - np.sqrt((b * b - 8 * t).astype(np.float64))) * 0.5).astype(np.int64)
    np.clip(u, 0, n - 2, out=u)

    def row_start(x: np.ndarray) -> np.ndarray:
        return x * (2 * n - x - 1) // 2

    while True:
        too_high = row_start(u) > t
        too_low = row_start(u + 1) <= t
        if not (too_high.any() or too_low.any()):
            break
        u = u - too_high.astype(np.int64) + too_low.astype(np.int64)
    v = t - row_start(u) + u + 1
    return u, v


# ===================================================================
# NEIGHBORHOOD QUERIES AND I/O
# ===================================================================


def neighborhood_partition(g: Graph, u: int, v: int) -> NeighborhoodPartition:
    """Split N_u and N_v into common/exclusive classes by a linear merge.

    u and v themselves are excluded from all three lists.
    """
    if u == v:
        raise ValueError("u and v must be distinct")
    a = g.neighbors_of(u)
    b = g.neighbors_of(v)
    common, only_a, only_b = [], [], []
    i = j = 0
    while i < len(a) and j < len(b):
        x, y = a[i], b[j]
        if x == y:
            if x != u and x != v:
                common.append(x)
            i += 1
            j += 1
        elif x < y:
            if x != u and x != v:
                only_a.append(x)
            i += 1
        else:
            if y != u and y != v:
                only_b.append(y)
            j += 1
    only_a.extend(x for x in a[i:] if x != u and x != v)
    only_b.extend(y for y in b[j:] if y != u and y != v)
    return NeighborhoodPartition(
        np.asarray(common, dtype=np.int64),
        np.asarray(only_a, dtype=np.int64),
        np.asarray(only_b, dtype=np.int64),
    )


def write_edge_list(g: Graph, fp: IO[str]) -> None:
    """Dump the edge set as "u v" lines, 0-indexed, lexicographically sorted."""
    for u, v in zip(g.edge_u, g.edge_v):
        fp.write(f"{u} {v}\n")
