"""Self-contained property sweeps over the analytic and dynamics modules.

Backs the `verify` CLI subcommand: every check returns PASS/FAIL with a
short detail string; any FAIL makes the command exit nonzero. The sweeps
are sized to finish in well under a minute.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import exactmath, fsp, graphs
from .rng import derive_stream


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def run_all(seed: int = 42) -> list[CheckResult]:
    checks: list[tuple[str, Callable[[int], str]]] = [
        ("random-walk paper values", _check_rw_paper_values),
        ("random-walk sweep bounds", _check_rw_sweep),
        ("binomial mode vs argmax", _check_binomial_mode),
        ("binomial dominance grid", _check_binomial_dominance),
        ("binomial collision bound", _check_collision_bound),
        ("binomial >1 bound", _check_gt_one_bound),
        ("region measure invariants", _check_region_invariants),
        ("decision-tree inequality", _check_decision_tree),
        ("flip-step symmetry", _check_flip_symmetry),
        ("grid vs naive edge sets", _check_grid_vs_naive),
        ("partition count identity", _check_partition_identity),
    ]
    results = []
    for name, fn in checks:
        try:
            detail = fn(seed)
            results.append(CheckResult(name, True, detail))
        except AssertionError as exc:
            results.append(CheckResult(name, False, str(exc) or "assertion failed"))
    return results


def _check_rw_paper_values(seed: int) -> str:
    expected = {
        (0, 2): Fraction(1, 2),
        (0, 4): Fraction(5, 8),
        (1, 3): Fraction(1, 4),
        (2, 2): Fraction(1, 4),
        (3, 3): Fraction(3, 16),
        (0, 0): Fraction(0),
        (1, 1): Fraction(0),
    }
    for (a, b), want in expected.items():
        got = exactmath.rw_abs_compare(a, b)[0]
        assert got == want, f"P(|A|<|B|) at ({a},{b}) = {got}, expected {want}"
    return f"{len(expected)} exact case values"


def _check_rw_sweep(seed: int, limit: int = 40) -> str:
    floor = Fraction(3, 16)
    pairs = 0
    for b in range(limit + 1):
        for a in range(b + 1):
            less, _equal, greater = exactmath.rw_abs_compare(a, b)
            assert less >= greater, f"({a},{b}): P(<) {less} < P(>) {greater}"
            assert less >= exactmath.rw_lower_bound(a, b), f"({a},{b}): below closed-form bound"
            if not (a == b and a <= 1):
                assert less >= floor, f"({a},{b}): P(<) {less} below 3/16"
            pairs += 1
    return f"{pairs} (a,b) pairs up to {limit}"


def _check_binomial_mode(seed: int) -> str:
    cases = 0
    for n in range(1, 41):
        for j in range(0, 100, 2):
            p = Fraction(j, 100)
            pmf = [exactmath.binom_pmf(n, p, k) for k in range(n + 1)]
            mode = exactmath.binomial_mode(n, p)
            assert pmf[mode] == max(pmf), f"mode {mode} not maximal for n={n}, p={p}"
            cases += 1
    return f"{cases} (n,p) pairs"


def _check_binomial_dominance(seed: int) -> str:
    grid = [x / 20 for x in range(1, 20)]
    cases = 0
    for n in (1, 2, 3, 5, 10, 25, 40):
        for p in grid:
            for q in grid:
                if q > p:
                    continue
                ge, gt, eq = exactmath.binom_ge_prob(n, p, q)
                assert ge >= 0.5 - 1e-12, f"P(X>=Y)={ge} < 1/2 at n={n}, p={p}, q={q}"
                assert abs(ge - gt - eq) < 1e-12
                cases += 1
    return f"{cases} (n,p,q) triples"


def _check_collision_bound(seed: int) -> str:
    cases = 0
    for n in (20, 50, 100):
        for j in range(5, 100, 5):
            p = j / 100
            d = exactmath.binomial_mode(n, p)
            if not 2 <= d < n:
                continue
            bound = exactmath.binom_collision_upper_bound(n, p)
            pmax = max(exactmath.binom_pmf(n, p, k) for k in range(n + 1))
            assert pmax <= bound + 1e-12, f"max pmf {pmax} > bound {bound} at n={n}, p={p}"
            _, _, eq = exactmath.binom_ge_prob(n, p, p)
            assert eq <= bound + 1e-12, f"P(X=Y) {eq} > bound {bound} at n={n}, p={p}"
            cases += 1
    return f"{cases} (n,p) pairs"


def _check_gt_one_bound(seed: int) -> str:
    cases = 0
    for n in (100, 1000):
        for c10 in range(5, 205, 10):
            c = c10 / 10
            exact, bound = exactmath.prob_gt_one_and_bound(n, c / n)
            assert exact >= bound - 1e-12, f"exact {exact} < bound {bound} at n={n}, c={c}"
            cases += 1
    return f"{cases} (n,c) pairs"


def _check_region_invariants(seed: int) -> str:
    n, d = 10_000, 10.0
    last = math.inf
    steps = 0
    for i in range(0, 2001):
        tau = i / 1000
        rm = exactmath.region_measures(n, d, tau)
        total = rm.mu_common + rm.mu_u_exclusive + rm.mu_v_exclusive + rm.mu_outside
        assert abs(total - 1.0) < 1e-12, f"measures sum to {total} at tau={tau}"
        assert rm.mu_u_exclusive == rm.mu_v_exclusive
        assert min(rm.mu_common, rm.mu_u_exclusive, rm.mu_outside) >= -1e-15
        disk = rm.mu_common + rm.mu_u_exclusive
        assert abs(disk - d / (n - 1)) < 1e-12, f"disk identity broken at tau={tau}"
        assert rm.mu_common < last, f"mu_common not decreasing at tau={tau}"
        last = rm.mu_common
        steps += 1
    return f"tau sweep, {steps} points"


_SMALL_GRAPHS: list[tuple[str, int, list[tuple[int, int]]]] = [
    ("K2", 2, [(0, 1)]),
    ("P3", 3, [(0, 1), (1, 2)]),
    ("K3", 3, [(0, 1), (0, 2), (1, 2)]),
    ("star4", 5, [(0, i) for i in range(1, 5)]),
    ("C5", 5, [(i, (i + 1) % 5) for i in range(5)]),
    ("C6", 6, [(i, (i + 1) % 6) for i in range(6)]),
    ("K4", 4, [(a, b) for a in range(4) for b in range(a + 1, 4)]),
]


def _check_decision_tree(seed: int) -> str:
    edges_checked = 0
    for name, n, edges in _SMALL_GRAPHS:
        g = graphs.Graph.from_edges(n, edges)
        for u, v in zip(g.edge_u, g.edge_v):
            mono = fsp.exact_monochrome_probability(g, int(u), int(v))
            dec = fsp.exact_decisiveness_probability(g, int(u), int(v))
            assert mono >= Fraction(1, 2) + dec / 2, \
                f"{name} edge ({u},{v}): {mono} < 1/2 + {dec}/2"
            edges_checked += 1
    return f"{edges_checked} edges over {len(_SMALL_GRAPHS)} graphs"


def _check_flip_symmetry(seed: int) -> str:
    g = graphs.generate_er(60, 6.0, derive_stream(seed, "verify|flip|graph", 0))
    types = fsp.initial_types(g.n, derive_stream(seed, "verify|flip|types", 0))
    out = fsp.fsp_step(g, types, derive_stream(seed, "verify|flip|coins", 0))
    out_inv = fsp.fsp_step(g, (-types).astype(np.int8),
                           derive_stream(seed, "verify|flip|coins", 0))
    assert np.array_equal(out_inv, -out), "global type inversion not mirrored by outputs"
    if g.edge_count:
        f = fsp.monochrome_fraction(g, types)
        f_inv = fsp.monochrome_fraction(g, (-types).astype(np.int8))
        assert f == f_inv
    return f"inversion mirrored on n={g.n} graph"


def _check_grid_vs_naive(seed: int) -> str:
    stream = derive_stream(seed, "verify|grid", 0)
    n, d = 600, 8.0
    r = graphs.radius_for_degree(n, d)
    points = stream.uniforms(2 * n).reshape(n, 2)
    gu, gv = graphs.grid_edges(points, r)
    nu, nv = graphs.naive_edges(points, r)
    assert np.array_equal(gu, nu) and np.array_equal(gv, nv), \
        f"edge sets differ: grid {len(gu)} vs naive {len(nu)}"
    return f"n={n}: {len(gu)} edges identical"


def _check_partition_identity(seed: int) -> str:
    g = graphs.generate_er(200, 12.0, derive_stream(seed, "verify|partition", 0))
    checked = 0
    for u, v in list(zip(g.edge_u, g.edge_v))[:50]:
        part = graphs.neighborhood_partition(g, int(u), int(v))
        total = part.n_common + part.n_u_exclusive + part.n_v_exclusive
        assert total + part.n_outside(g.n) == g.n - 2, f"partition identity broken at ({u},{v})"
        assert part.n_common + part.n_u_exclusive + 1 == g.degree(int(u))
        checked += 1
    return f"{checked} edges on n={g.n} graph"
