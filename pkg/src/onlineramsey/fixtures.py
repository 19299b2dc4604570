"""Hand-constructed positions used by tests and the verify suite."""

from __future__ import annotations

from .graph import BichromaticGraph, Color


def family_fixture(s: int, t: int) -> BichromaticGraph:
    """A 6-vertex position holding cross-independent unbuilt-pair families
    of sizes (s, t), for the (3,3;6) game.

    (1, 1): p = (0,1) vs q = (2,3), with one red and one blue cross edge.
    (2, 3): p-family (0,1), (0,2) inside {0,1,2}; q-family all three
    pairs of {3,4,5}; the nine cross edges are colored so every (p, q)
    combination sees both colors.
    """
    g = BichromaticGraph(6)
    if (s, t) == (1, 1):
        g.build_edge(0, 2, Color.RED)
        g.build_edge(0, 3, Color.BLUE)
        return g
    if (s, t) == (2, 3):
        colors = {
            (0, 3): Color.RED,
            (0, 4): Color.BLUE,
            (0, 5): Color.RED,
            (1, 3): Color.BLUE,
            (1, 4): Color.RED,
            (1, 5): Color.BLUE,
            (2, 3): Color.RED,
            (2, 4): Color.BLUE,
            (2, 5): Color.BLUE,
        }
        for (u, v), c in colors.items():
            g.build_edge(u, v, c)
        return g
    raise ValueError(f"no fixture for family sizes ({s},{t})")


def family_fixture_families(s: int, t: int):
    """The (P, Q) unbuilt-pair families the fixture is built around."""
    if (s, t) == (1, 1):
        return ((0, 1),), ((2, 3),)
    if (s, t) == (2, 3):
        return ((0, 1), (0, 2)), ((3, 4), (3, 5), (4, 5))
    raise ValueError(f"no fixture for family sizes ({s},{t})")


def pentagon_coloring() -> dict[tuple[int, int], Color]:
    """The 2-coloring of the complete graph on 5 vertices with no
    monochromatic triangle: red 5-cycle, blue complement."""
    red_cycle = {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}
    coloring = {}
    for u in range(5):
        for v in range(u + 1, 5):
            coloring[(u, v)] = Color.RED if (u, v) in red_cycle else Color.BLUE
    return coloring


def ramsey_3_4_lower_coloring() -> dict[tuple[int, int], Color]:
    """An 8-vertex coloring with no red triangle and no blue 4-clique
    (red edges at circular distances 1 and 4)."""
    coloring = {}
    for u in range(8):
        for v in range(u + 1, 8):
            dist = min(v - u, 8 - (v - u))
            coloring[(u, v)] = Color.RED if dist in (1, 4) else Color.BLUE
    return coloring
