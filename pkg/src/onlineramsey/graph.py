"""Two-colored graph model for builder-painter clique games.

Vertices are the integers 0..n-1. Every unordered pair of distinct
vertices is either unbuilt or built with one of two colors. Pair states
live in a dense triangular array indexed by pair rank, and per-vertex
red/blue neighborhoods are maintained incrementally as int bitsets so
clique searches reduce to integer intersections.

Densities are exact rationals (`fractions.Fraction`); no floating point
is used for threshold comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

UNBUILT = 0
_RED = 1
_BLUE = 2


class Color(Enum):
    RED = "R"
    BLUE = "B"

    @property
    def opposite(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @property
    def state(self) -> int:
        """Internal pair-state digit (red=1, blue=2)."""
        return _RED if self is Color.RED else _BLUE

    @classmethod
    def from_letter(cls, letter: str) -> "Color":
        if letter == "R":
            return cls.RED
        if letter == "B":
            return cls.BLUE
        raise ValueError(f"not a color letter: {letter!r}")

    def __str__(self) -> str:
        return self.value


class GraphError(Exception):
    """Base class for graph contract violations."""


class SelfLoopError(GraphError):
    pass


class OutOfRangeError(GraphError):
    pass


class AlreadyBuiltError(GraphError):
    pass


class NoBuiltEdgesError(GraphError):
    """Density is undefined: no built edges between the two sets."""


class IncompleteCrossEdgesError(GraphError):
    """A reduced graph needs every cross-part pair built."""


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_rank(n: int, u: int, v: int) -> int:
    """Rank of the unordered pair {u, v} in lexicographic order."""
    if u > v:
        u, v = v, u
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def all_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All unordered pairs (u, v), u < v, in lexicographic order."""
    for u in range(n):
        for v in range(u + 1, n):
            yield (u, v)


def normalize_pair(pair: Sequence[int]) -> tuple[int, int]:
    u, v = pair
    return (u, v) if u <= v else (v, u)


class BichromaticGraph:
    """N vertices with a three-state map over unordered pairs.

    Mutated only through :meth:`build_edge`; safe to share read-only.
    """

    __slots__ = ("n", "_states", "_red", "_blue", "_red_count", "_blue_count")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("vertex count must be positive")
        self.n = n
        self._states = bytearray(pair_count(n))
        self._red = [0] * n
        self._blue = [0] * n
        self._red_count = 0
        self._blue_count = 0

    # -- construction ----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, Color]]) -> "BichromaticGraph":
        g = cls(n)
        for u, v, c in edges:
            g.build_edge(u, v, c)
        return g

    def copy(self) -> "BichromaticGraph":
        g = BichromaticGraph.__new__(BichromaticGraph)
        g.n = self.n
        g._states = bytearray(self._states)
        g._red = list(self._red)
        g._blue = list(self._blue)
        g._red_count = self._red_count
        g._blue_count = self._blue_count
        return g

    # -- mutation ---------------------------------------------------------

    def build_edge(self, u: int, v: int, color: Color) -> None:
        """Build the unbuilt pair {u, v} with the given color.

        Rejects the move without mutation on a self-loop, an out-of-range
        vertex, or an already-built pair.
        """
        if u == v:
            raise SelfLoopError(f"({u},{v})")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise OutOfRangeError(f"({u},{v}) outside 0..{self.n - 1}")
        idx = pair_rank(self.n, u, v)
        if self._states[idx] != UNBUILT:
            raise AlreadyBuiltError(f"({u},{v})")
        self._states[idx] = color.state
        if color is Color.RED:
            self._red[u] |= 1 << v
            self._red[v] |= 1 << u
            self._red_count += 1
        else:
            self._blue[u] |= 1 << v
            self._blue[v] |= 1 << u
            self._blue_count += 1

    # -- queries ----------------------------------------------------------

    def state(self, u: int, v: int) -> Optional[Color]:
        """Color of the pair, or None when unbuilt."""
        if u == v:
            raise SelfLoopError(f"({u},{v})")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise OutOfRangeError(f"({u},{v}) outside 0..{self.n - 1}")
        s = self._states[pair_rank(self.n, u, v)]
        if s == UNBUILT:
            return None
        return Color.RED if s == _RED else Color.BLUE

    def is_unbuilt(self, u: int, v: int) -> bool:
        return self.state(u, v) is None

    @property
    def built_count(self) -> int:
        return self._red_count + self._blue_count

    @property
    def red_count(self) -> int:
        return self._red_count

    @property
    def blue_count(self) -> int:
        return self._blue_count

    @property
    def total_pairs(self) -> int:
        return pair_count(self.n)

    @property
    def unbuilt_count(self) -> int:
        return self.total_pairs - self.built_count

    def is_complete(self) -> bool:
        return self.built_count == self.total_pairs

    def unbuilt_pairs(self) -> Iterator[tuple[int, int]]:
        """Unbuilt pairs in lexicographic order."""
        states = self._states
        n = self.n
        idx = 0
        for u in range(n):
            for v in range(u + 1, n):
                if states[idx] == UNBUILT:
                    yield (u, v)
                idx += 1

    def built_edges(self) -> Iterator[tuple[int, int, Color]]:
        """Built edges (u, v, color) in lexicographic pair order."""
        states = self._states
        idx = 0
        for u in range(self.n):
            for v in range(u + 1, self.n):
                s = states[idx]
                if s != UNBUILT:
                    yield (u, v, Color.RED if s == _RED else Color.BLUE)
                idx += 1

    def neighborhood(self, v: int, color: Color) -> int:
        """Bitset of vertices joined to v by edges of the given color."""
        return self._red[v] if color is Color.RED else self._blue[v]

    def _adj(self, color: Color) -> list[int]:
        return self._red if color is Color.RED else self._blue

    def state_vector(self) -> bytes:
        """Pair-state digits (0 unbuilt, 1 red, 2 blue) in rank order."""
        return bytes(self._states)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BichromaticGraph):
            return NotImplemented
        return self.n == other.n and self._states == other._states

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        """Line 1 is N, then one `u v {R|B}` line per built edge."""
        lines = [str(self.n)]
        lines.extend(f"{u} {v} {c}" for u, v, c in self.built_edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BichromaticGraph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty graph text")
        g = cls(int(lines[0]))
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 3:
                raise ValueError(f"bad edge line: {ln!r}")
            g.build_edge(int(parts[0]), int(parts[1]), Color.from_letter(parts[2]))
        return g


# -- densities -------------------------------------------------------------


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def cross_color_counts(g: BichromaticGraph, a: Iterable[int], b: Iterable[int]) -> tuple[int, int]:
    """(red, blue) built edge counts between two disjoint vertex sets."""
    bmask = _mask(b)
    red = blue = 0
    for u in a:
        red += (g._red[u] & bmask).bit_count()
        blue += (g._blue[u] & bmask).bit_count()
    return red, blue


def red_density(g: BichromaticGraph, a: Iterable[int], b: Iterable[int]) -> Fraction:
    """Fraction of built cross edges between a and b that are red."""
    a = set(a)
    b = set(b)
    if not a or not b:
        raise ValueError("density needs nonempty sets")
    if a & b:
        raise ValueError("density needs disjoint sets")
    red, blue = cross_color_counts(g, a, b)
    if red + blue == 0:
        raise NoBuiltEdgesError("no built edges between the sets")
    return Fraction(red, red + blue)


def blue_density(g: BichromaticGraph, a: Iterable[int], b: Iterable[int]) -> Fraction:
    return 1 - red_density(g, a, b)


def is_color_balanced(g: BichromaticGraph, a: Iterable[int], b: Iterable[int], eps: Fraction) -> bool:
    """True iff eps <= red density <= 1 - eps (closed on both ends)."""
    d = red_density(g, a, b)
    return eps <= d <= 1 - eps


# -- clique search ----------------------------------------------------------


def _find_kclique(adj: list[int], cand: int, k: int, order: Sequence[int]) -> Optional[list[int]]:
    """Some k-clique inside the candidate bitset, or None. Exact."""
    if k == 0:
        return []
    if cand.bit_count() < k:
        return None
    for v in order:
        bit = 1 << v
        if not cand & bit:
            continue
        cand &= ~bit
        sub = _find_kclique(adj, cand & adj[v], k - 1, order)
        if sub is not None:
            sub.append(v)
            return sub
        if cand.bit_count() < k:
            return None
    return None


def find_mono_clique(g: BichromaticGraph, color: Color, k: int) -> Optional[frozenset[int]]:
    """Some k-set whose pairs are all built with the color, or None.

    Exact (no false negatives). Vertices are tried in descending
    same-color degree order; branches are cut when fewer candidates
    remain than needed. Order affects only speed.
    """
    if k < 1:
        raise ValueError("clique size must be >= 1")
    if k == 1:
        return frozenset({0})
    if k > g.n:
        return None
    adj = g._adj(color)
    order = sorted(range(g.n), key=lambda v: -adj[v].bit_count())
    full = (1 << g.n) - 1
    found = _find_kclique(adj, full, k, order)
    return frozenset(found) if found is not None else None


def incremental_clique_check(
    g: BichromaticGraph, last_edge: Sequence[int], color: Color, k: int
) -> Optional[frozenset[int]]:
    """A color-k-clique containing last_edge, or None if none exists.

    Equivalent to searching (k-2)-cliques of the color in the common
    color-neighborhood of the endpoints; agrees with find_mono_clique
    restricted to cliques through the edge.
    """
    u, v = normalize_pair(last_edge)
    if g.state(u, v) is not color:
        return None
    if k < 2:
        return None  # a (k<2)-set cannot contain both endpoints
    if k == 2:
        return frozenset((u, v))
    adj = g._adj(color)
    common = adj[u] & adj[v]
    order = sorted(range(g.n), key=lambda w: -adj[w].bit_count())
    sub = _find_kclique(adj, common, k - 2, order)
    if sub is None:
        return None
    return frozenset((u, v, *sub))


# -- multipartite layouts and reduced graphs --------------------------------


@dataclass(frozen=True)
class PartitionLayout:
    """Disjoint equal-size vertex parts of a multipartite construction."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("layout needs at least one part")
        sizes = {len(p) for p in self.parts}
        if len(sizes) != 1 or 0 in sizes:
            raise ValueError("parts must be nonempty and of equal size")
        seen: set[int] = set()
        for p in self.parts:
            for v in p:
                if v in seen:
                    raise ValueError(f"vertex {v} appears in two parts")
                seen.add(v)

    @classmethod
    def even(cls, n_vertices: int, num_parts: int) -> "PartitionLayout":
        """num_parts parts of size n_vertices // num_parts, lowest vertices
        first; remainder vertices are left out of the layout."""
        size = n_vertices // num_parts
        if num_parts < 1 or size < 1:
            raise ValueError("layout does not fit the vertex count")
        parts = tuple(
            tuple(range(i * size, (i + 1) * size)) for i in range(num_parts)
        )
        return cls(parts)

    @property
    def part_count(self) -> int:
        return len(self.parts)

    @property
    def part_size(self) -> int:
        return len(self.parts[0])

    def covered_vertices(self) -> set[int]:
        return {v for p in self.parts for v in p}

    def cross_pairs(self) -> Iterator[tuple[int, int]]:
        """All cross-part pairs in lexicographic order."""
        covered = self.covered_vertices()
        part_of = {v: i for i, p in enumerate(self.parts) for v in p}
        hi = max(covered)
        for u in range(hi + 1):
            if u not in covered:
                continue
            for v in range(u + 1, hi + 1):
                if v in covered and part_of[u] != part_of[v]:
                    yield (u, v)


@dataclass(frozen=True)
class ReducedGraph:
    """Parts of a multipartite layout, joined by density-thresholded edges.

    A part pair is Red when its red cross density exceeds 1 - eps,
    Blue when it is below eps, and None otherwise.
    """

    part_count: int
    edge_colors: dict[tuple[int, int], Optional[Color]]
    epsilon: Fraction

    def color_of(self, i: int, j: int) -> Optional[Color]:
        if i > j:
            i, j = j, i
        return self.edge_colors[(i, j)]

    def is_complete(self) -> bool:
        return all(c is not None for c in self.edge_colors.values())

    def part_pairs(self) -> Iterator[tuple[int, int]]:
        return combinations(range(self.part_count), 2)


def reduced_graph(g: BichromaticGraph, layout: PartitionLayout, eps: Fraction) -> ReducedGraph:
    """Density-thresholded part graph; needs every cross-part pair built."""
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError("epsilon must lie strictly between 0 and 1/2")
    colors: dict[tuple[int, int], Optional[Color]] = {}
    for i, j in combinations(range(layout.part_count), 2):
        red, blue = cross_color_counts(g, layout.parts[i], layout.parts[j])
        expected = layout.part_size * layout.part_size
        if red + blue != expected:
            raise IncompleteCrossEdgesError(
                f"parts {i},{j}: {red + blue} of {expected} cross pairs built"
            )
        d = Fraction(red, expected)
        if d > 1 - eps:
            colors[(i, j)] = Color.RED
        elif d < eps:
            colors[(i, j)] = Color.BLUE
        else:
            colors[(i, j)] = None
    return ReducedGraph(layout.part_count, colors, eps)


# -- vertex-pair incidence graphs -------------------------------------------


class IncidenceSide(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite incidence between one class's vertices and the other
    class's vertex pairs: (u, (v1, v2)) is an edge iff (u, v1) and
    (u, v2) are both built with different colors in the source graph."""

    side: IncidenceSide
    singles: tuple[int, ...]
    pair_vertices: tuple[tuple[int, int], ...]
    edges: frozenset[tuple[int, tuple[int, int]]]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, single: int) -> set[tuple[int, int]]:
        return {p for (u, p) in self.edges if u == single}


def incidence_graph(
    g: BichromaticGraph,
    v1: Iterable[int],
    v2: Iterable[int],
    side: IncidenceSide = IncidenceSide.LEFT,
) -> IncidenceGraph:
    """Vertex-pair incidence graph of the bipartition (v1, v2).

    LEFT takes singles from v1 and pairs from v2; RIGHT swaps the roles.
    """
    v1 = sorted(set(v1))
    v2 = sorted(set(v2))
    if set(v1) & set(v2):
        raise ValueError("incidence classes must be disjoint")
    singles, others = (v1, v2) if side is IncidenceSide.LEFT else (v2, v1)
    pairs = tuple((a, b) for a, b in combinations(others, 2))
    edges = set()
    for u in singles:
        for p in pairs:
            s1 = g.state(u, p[0])
            s2 = g.state(u, p[1])
            if s1 is not None and s2 is not None and s1 is not s2:
                edges.add((u, p))
    return IncidenceGraph(side, tuple(singles), pairs, frozenset(edges))


# -- independent unbuilt pairs ----------------------------------------------


def are_independent(g: BichromaticGraph, p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff p and q are vertex-disjoint unbuilt pairs with at least
    one red and one blue built edge among their four cross pairs."""
    p = normalize_pair(p)
    q = normalize_pair(q)
    if p[0] == p[1] or q[0] == q[1]:
        return False
    if set(p) & set(q):
        return False
    if g.state(*p) is not None or g.state(*q) is not None:
        return False
    saw_red = saw_blue = False
    for u in p:
        for v in q:
            s = g.state(u, v)
            if s is Color.RED:
                saw_red = True
            elif s is Color.BLUE:
                saw_blue = True
    return saw_red and saw_blue
