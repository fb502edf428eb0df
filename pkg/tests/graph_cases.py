"""Named small graphs used across the oracle and acceptance tests."""

from flipschelling import Graph


def k2() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


def p3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2)])


def k3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


def k4() -> Graph:
    return Graph.from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


DECISION_TREE_FAMILY = [
    ("K2", k2),
    ("P3", p3),
    ("K3", k3),
    ("star4", lambda: star(4)),
    ("C5", lambda: cycle(5)),
    ("C6", lambda: cycle(6)),
    ("K4", k4),
]
