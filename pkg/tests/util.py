"""Shared test helpers: random instances and brute-force oracles."""

from __future__ import annotations

import random
from itertools import combinations

from onlineramsey.graph import BichromaticGraph, Color, all_pairs


def random_graph(rng: random.Random, n: int, p_built: float = 0.5, p_red: float = 0.5) -> BichromaticGraph:
    g = BichromaticGraph(n)
    for u, v in all_pairs(n):
        if rng.random() < p_built:
            g.build_edge(u, v, Color.RED if rng.random() < p_red else Color.BLUE)
    return g


def brute_mono_cliques(g: BichromaticGraph, color: Color, k: int) -> list[frozenset[int]]:
    """All k-sets whose internal pairs are all built with the color."""
    out = []
    for sub in combinations(range(g.n), k):
        if all(g.state(u, v) is color for u, v in combinations(sub, 2)):
            out.append(frozenset(sub))
    return out


def is_mono_clique(g: BichromaticGraph, color: Color, vertices) -> bool:
    return all(g.state(u, v) is color for u, v in combinations(sorted(vertices), 2))


class FixedColoringPainter:
    """Paints every proposed pair according to a fixed reference coloring."""

    name = "fixed"

    def __init__(self, coloring: dict[tuple[int, int], Color]):
        self._coloring = coloring

    def choose(self, state, pair) -> Color:
        u, v = pair if pair[0] <= pair[1] else (pair[1], pair[0])
        return self._coloring[(u, v)]
