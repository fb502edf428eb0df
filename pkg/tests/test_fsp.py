"""Flip dynamics, segregation measures, and the exhaustive oracles."""

from fractions import Fraction

import numpy as np
import pytest

from flipschelling import (
    MINUS,
    PLUS,
    Graph,
    derive_stream,
    edge_decisiveness,
    exact_decisiveness_probability,
    exact_monochrome_probability,
    fsp_step,
    generate_er,
    generate_rgg,
    initial_types,
    monochrome_fraction,
)

from graph_cases import DECISION_TREE_FAMILY, cycle, k2, k3, k4, star

HALF = Fraction(1, 2)


def types_of(*values: int) -> np.ndarray:
    return np.asarray(values, dtype=np.int8)


# -------------------------------------------------------------------
# initial types
# -------------------------------------------------------------------


def test_initial_types_deterministic():
    a = initial_types(50, derive_stream(1, "t", 0))
    b = initial_types(50, derive_stream(1, "t", 0))
    assert np.array_equal(a, b)
    assert set(np.unique(a)) <= {PLUS, MINUS}


def test_initial_types_single_vertex():
    t = initial_types(1, derive_stream(1, "t1", 0))
    assert t.shape == (1,) and t[0] in (PLUS, MINUS)
    with pytest.raises(ValueError):
        initial_types(0, derive_stream(1, "t1", 0))


def test_initial_types_balance():
    t = initial_types(1_000_000, derive_stream(42, "balance", 0))
    assert abs(float(np.mean(t == PLUS)) - 0.5) < 0.002


def test_initial_types_consume_exactly_n_draws():
    twin = derive_stream(5, "draws", 0)
    coins = twin.fair_coins(9)
    marker = twin.unit_uniform()
    stream = derive_stream(5, "draws", 0)
    t = initial_types(9, stream)
    assert np.array_equal(t == PLUS, coins == 1)  # coin 1 -> PLUS, vertex order
    assert stream.unit_uniform() == marker


# -------------------------------------------------------------------
# one flip step
# -------------------------------------------------------------------


def test_step_unanimous_majority_keeps():
    out = fsp_step(k3(), types_of(PLUS, PLUS, PLUS), derive_stream(0, "s", 0))
    assert out.tolist() == [PLUS, PLUS, PLUS]


def test_step_k2_double_flip():
    out = fsp_step(k2(), types_of(PLUS, MINUS), derive_stream(0, "s", 0))
    assert out.tolist() == [MINUS, PLUS]


def test_step_star3_majority():
    # center disagrees with all three leaves: everyone flips
    out = fsp_step(star(3), types_of(MINUS, PLUS, PLUS, PLUS), derive_stream(0, "s", 0))
    assert out.tolist() == [PLUS, MINUS, MINUS, MINUS]


def test_step_isolated_vertex_keeps_type():
    g = Graph.from_edges(3, [(0, 1)])
    for t2 in (PLUS, MINUS):
        out = fsp_step(g, types_of(PLUS, PLUS, t2), derive_stream(0, "iso", 0))
        assert out[2] == t2


def test_step_tie_coins_ascending_among_tied_only():
    # path 0-1-2 with types (+,+,-): only vertex 1 is tied
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    twin = derive_stream(7, "tie", 0)
    coin = int(twin.fair_coins(1)[0])
    marker = twin.unit_uniform()
    stream = derive_stream(7, "tie", 0)
    out = fsp_step(g, types_of(PLUS, PLUS, MINUS), stream)
    assert out[0] == PLUS  # keeps: its single neighbor agrees
    assert out[2] == PLUS  # flips: its single neighbor disagrees
    assert out[1] == (MINUS if coin == 1 else PLUS)
    assert stream.unit_uniform() == marker  # exactly one coin consumed


def test_step_all_tied_cycle():
    # C4 with types (+,+,-,-): every vertex sees one agreeing neighbor
    g = cycle(4)
    coins = derive_stream(9, "tie4", 0).fair_coins(4)
    out = fsp_step(g, types_of(PLUS, PLUS, MINUS, MINUS), derive_stream(9, "tie4", 0))
    start = types_of(PLUS, PLUS, MINUS, MINUS)
    expected = np.where(coins == 1, -start, start)
    assert np.array_equal(out, expected)


def test_step_rejects_size_mismatch():
    with pytest.raises(ValueError):
        fsp_step(k3(), types_of(PLUS, MINUS), derive_stream(0, "s", 0))


def test_step_reads_input_assignment_only():
    # deterministic given the stream; rerunning cannot depend on output order
    g = generate_er(80, 6.0, derive_stream(3, "sim", 0))
    t = initial_types(80, derive_stream(3, "sim-types", 0))
    a = fsp_step(g, t, derive_stream(3, "sim-coins", 0))
    b = fsp_step(g, t.copy(), derive_stream(3, "sim-coins", 0))
    assert np.array_equal(a, b)


def test_global_inversion_symmetry():
    g = generate_er(120, 5.0, derive_stream(13, "inv", 0))
    t = initial_types(120, derive_stream(13, "inv-types", 0))
    out = fsp_step(g, t, derive_stream(13, "inv-coins", 0))
    out_inv = fsp_step(g, (-t).astype(np.int8), derive_stream(13, "inv-coins", 0))
    assert np.array_equal(out_inv, -out)
    assert monochrome_fraction(g, t) == monochrome_fraction(g, (-t).astype(np.int8))


# -------------------------------------------------------------------
# monochrome fraction
# -------------------------------------------------------------------


def test_monochrome_fraction_values():
    assert monochrome_fraction(k3(), types_of(PLUS, PLUS, PLUS)) == 1.0
    assert monochrome_fraction(k2(), types_of(PLUS, MINUS)) == 0.0
    assert monochrome_fraction(cycle(4), types_of(PLUS, MINUS, PLUS, MINUS)) == 0.0


def test_monochrome_fraction_requires_edges():
    with pytest.raises(ValueError):
        monochrome_fraction(Graph.from_edges(3, []), types_of(PLUS, PLUS, PLUS))


def test_expected_initial_fraction_is_half():
    g, _ = generate_rgg(10_000, 10.0, derive_stream(42, "half", 0))
    fracs = [monochrome_fraction(g, initial_types(g.n, derive_stream(42, "half-types", t)))
             for t in range(30)]
    assert abs(float(np.mean(fracs)) - 0.5) < 0.01


# -------------------------------------------------------------------
# decisiveness
# -------------------------------------------------------------------


def test_decisiveness_counts_opposite_endpoint_on_exclusive_sides():
    d = edge_decisiveness(k3(), types_of(PLUS, MINUS, PLUS), 0, 1)
    assert d.d_common == 1
    # exclusive sets are empty but each carries the opposite endpoint's type
    assert d.d_u_exclusive == 1 and d.d_v_exclusive == 1


def test_decisiveness_empty_common():
    d = edge_decisiveness(k2(), types_of(PLUS, MINUS), 0, 1)
    assert d.d_common == 0


def test_decisiveness_margin_of_five_common_neighbors():
    # two adjacent hubs sharing five leaves, 4 PLUS / 1 MINUS: margin 3
    edges = [(0, 1)] + [(0, k) for k in range(2, 7)] + [(1, k) for k in range(2, 7)]
    g = Graph.from_edges(7, edges)
    t = types_of(PLUS, MINUS, PLUS, PLUS, PLUS, PLUS, MINUS)
    d = edge_decisiveness(g, t, 0, 1)
    assert d.d_common == 3


def test_decisiveness_requires_edge():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        edge_decisiveness(g, types_of(PLUS, PLUS, PLUS), 0, 2)


# -------------------------------------------------------------------
# exhaustive oracles
# -------------------------------------------------------------------


def test_exact_monochrome_frozen_values():
    # K2 by hand: equal types persist, unequal types double-flip
    assert exact_monochrome_probability(k2(), 0, 1) == HALF
    # oracle regression constants, confirmed by hand enumeration
    assert exact_monochrome_probability(k3(), 0, 1) == Fraction(5, 8)
    assert exact_monochrome_probability(k4(), 0, 1) == Fraction(3, 4)


def test_exact_decisiveness_frozen_values():
    assert exact_decisiveness_probability(k2(), 0, 1) == 0
    # common margin is 1, exclusive margins are |t_v| = |t_u| = 1: never strict
    assert exact_decisiveness_probability(k3(), 0, 1) == 0
    assert exact_decisiveness_probability(k4(), 0, 1) == HALF


def test_exact_oracles_validate_input():
    with pytest.raises(ValueError):
        exact_monochrome_probability(Graph.from_edges(3, [(0, 1)]), 0, 2)
    big = cycle(17)
    with pytest.raises(ValueError):
        exact_monochrome_probability(big, 0, 1)
    with pytest.raises(ValueError):
        exact_decisiveness_probability(big, 0, 1)


def _mc_edge_monochrome(g, u, v, trials, stream):
    """Independent vectorized Monte Carlo estimate of P(edge monochrome)."""
    n = g.n
    t = np.where(stream.uniforms(trials * n).reshape(trials, n) < 0.5, 1, -1).astype(np.int16)

    def outcome(w):
        ind = np.zeros(n, dtype=np.int16)
        ind[g.neighbors_of(w)] = 1
        align = t[:, w] * (t @ ind)
        coins = stream.fair_coins(trials)
        flipped = -t[:, w]
        return np.where(align > 0, t[:, w],
                        np.where(align < 0, flipped,
                                 np.where(coins == 1, flipped, t[:, w])))

    return float(np.mean(outcome(u) == outcome(v)))


@pytest.mark.parametrize("make,edge", [(k3, (0, 1)), (lambda: star(4), (0, 1))])
def test_exact_monochrome_matches_monte_carlo(make, edge):
    g = make()
    trials = 1_000_000
    est = _mc_edge_monochrome(g, *edge, trials, derive_stream(77, "mc", 0))
    exact = float(exact_monochrome_probability(g, *edge))
    assert abs(est - exact) < 4.0 * np.sqrt(exact * (1 - exact) / trials)


def test_exact_monochrome_matches_simulator_loop():
    # same quantity through the public simulation API
    g = k4()
    trials = 10_000
    hits = 0
    for trial in range(trials):
        t = initial_types(4, derive_stream(55, "loop", trial))
        out = fsp_step(g, t, derive_stream(55, "loop-coins", trial))
        hits += int(out[0] == out[1])
    exact = float(exact_monochrome_probability(g, 0, 1))
    assert abs(hits / trials - exact) < 4.0 * np.sqrt(exact * (1 - exact) / trials)


def test_decision_tree_inequality_on_family():
    for name, make in DECISION_TREE_FAMILY:
        g = make()
        for u, v in zip(g.edge_u, g.edge_v):
            mono = exact_monochrome_probability(g, int(u), int(v))
            dec = exact_decisiveness_probability(g, int(u), int(v))
            assert mono >= HALF + dec / 2, f"{name} edge ({u},{v})"


def test_decision_tree_inequality_on_random_graphs():
    checked = 0
    for trial in range(30):
        n = 4 + trial % 7  # n in 4..10
        g = generate_er(n, min(n - 1.0, 3.0), derive_stream(99, "dt", trial))
        for u, v in zip(g.edge_u, g.edge_v):
            mono = exact_monochrome_probability(g, int(u), int(v))
            dec = exact_decisiveness_probability(g, int(u), int(v))
            assert mono >= HALF + dec / 2, f"trial {trial} edge ({u},{v})"
            checked += 1
    assert checked > 100
