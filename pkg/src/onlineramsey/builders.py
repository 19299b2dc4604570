"""Builder policies.

Three selectable strategies:

* ``naive``: builds every unbuilt pair in the vertex-sweep order
  (all pairs into vertex i before touching vertex i+1).
* ``paper``: the staged move-saving pipeline: build a complete
  multipartite graph, read off its density-reduced part graph, then
  either (a) the reduced graph is complete, so fill the inside of its
  largest monochromatic part-clique, or (b) some part pair is
  color-balanced, so mine its vertex-pair incidence graph for a
  biclique, assemble two cross-independent families of unbuilt pairs,
  and finish with the pairwise endgame (build everything else, then the
  smaller family; the larger family is touched only as a last resort).
  Every stage falls back to lexicographic filling, so the policy is
  total whenever a win is possible at all.
* ``forced-edge``: the vertex-sweep builder that skips pairs whose red
  coloring would complete a red m-clique, then cashes them in on a
  certified blue clique.

All tie-breaking is lexicographic by vertex index so transcripts are
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .engine import GameConfig, GameState, PhaseEntry
from .graph import (
    BichromaticGraph,
    Color,
    IncidenceGraph,
    IncidenceSide,
    PartitionLayout,
    ReducedGraph,
    _find_kclique,
    are_independent,
    incidence_graph,
    is_color_balanced,
    normalize_pair,
    reduced_graph,
)


class BuilderError(Exception):
    pass


class EmptyFamilyError(BuilderError):
    """Every candidate pair for one family is already built."""


def generalized_family_savings(sizes: Sequence[int]) -> int:
    """Guaranteed savings for mutually cross-independent families:
    the total size minus the largest family."""
    if not sizes:
        raise ValueError("at least one family size required")
    if any(s < 0 for s in sizes):
        raise ValueError("family sizes must be nonnegative")
    return sum(sizes) - max(sizes)


@dataclass(frozen=True)
class PairFamilies:
    """Two families of unbuilt pairs, every p cross-independent from every q."""

    P: tuple[tuple[int, int], ...]
    Q: tuple[tuple[int, int], ...]


@dataclass
class PaperStrategyParams:
    """Tunables for the pipeline builder.

    delta is recomputed from epsilon (eps^5 / (2(1+eps))), never stored.
    Defaults target desk scale: C = max(2, floor(sqrt(N))), eps = 1/10,
    biclique dimensions a = ceil(delta*ln N0), b = ceil(N0*ln N0) capped
    at what the incidence graph can possibly contain.
    """

    C: int
    eps: Fraction
    a_target: Optional[int] = None
    b_target: Optional[int] = None

    def __post_init__(self):
        if self.C < 2:
            raise ValueError("part count must be at least 2")
        self.eps = Fraction(self.eps)
        if not 0 < self.eps < Fraction(1, 2):
            raise ValueError("epsilon must lie strictly between 0 and 1/2")

    @property
    def delta(self) -> Fraction:
        e = self.eps
        return e**5 / (2 * (1 + e))

    @classmethod
    def for_config(cls, config: GameConfig, **overrides) -> "PaperStrategyParams":
        C = overrides.get("C") or max(2, math.isqrt(config.N))
        C = min(C, config.N // 1)
        if config.N // C < 1:
            C = config.N
        eps = Fraction(overrides.get("eps", Fraction(1, 10)))
        params = cls(C=C, eps=eps)
        part = config.N // C
        if part >= 2:
            ln = math.log(part)
            params.a_target = overrides.get("a_target") or max(1, math.ceil(float(params.delta) * ln))
            params.b_target = overrides.get("b_target") or max(1, math.ceil(part * ln))
        else:
            params.a_target = overrides.get("a_target", 1)
            params.b_target = overrides.get("b_target", 1)
        return params


class NaiveBuilder:
    """Builds all unbuilt pairs in the vertex-sweep order (0,1), (0,2),
    (1,2), (0,3), ...: every pair into vertex i before touching i+1."""

    name = "naive"

    def __init__(self, config: GameConfig):
        self.config = config
        self.phase_log: list[PhaseEntry] = []

    def next_pair(self, state: GameState):
        g = state.graph
        for v in range(1, g.n):
            for u in range(v):
                if g.state(u, v) is None:
                    return (u, v)
        return None


# -- pipeline pieces (pure, individually testable) ---------------------------


def balanced_pair_search(
    g: BichromaticGraph, layout: PartitionLayout, eps: Fraction
) -> Optional[tuple[int, int]]:
    """First part pair whose cross density is eps-color-balanced, or None
    exactly when the reduced graph is complete."""
    for i, j in combinations(range(layout.part_count), 2):
        if is_color_balanced(g, layout.parts[i], layout.parts[j], eps):
            return (i, j)
    return None


def biclique_mine(
    h: IncidenceGraph, a: int, b: int, exact_limit: int = 4
) -> Optional[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """A complete a-by-b biclique in the incidence graph, if one exists.

    Exact for a <= exact_limit (enumerate left a-sets, intersect their
    neighborhoods); greedy best-effort beyond. In exact mode a None
    return means the graph truly has no such biclique.
    """
    if a < 1 or b < 1:
        raise ValueError("biclique dimensions must be positive")
    if a > len(h.singles):
        return None
    neigh = {u: frozenset(h.neighbors(u)) for u in h.singles}
    if a <= exact_limit:
        for left in combinations(h.singles, a):
            common = neigh[left[0]]
            for u in left[1:]:
                common = common & neigh[u]
                if len(common) < b:
                    break
            if len(common) >= b:
                right = tuple(sorted(common))[:b]
                return (tuple(left), right)
        return None
    # Greedy: grow the left side by largest remaining intersection.
    ranked = sorted(h.singles, key=lambda u: (-len(neigh[u]), u))
    left_acc: list[int] = []
    common: Optional[frozenset] = None
    for u in ranked:
        cand = neigh[u] if common is None else common & neigh[u]
        if len(cand) >= b:
            left_acc.append(u)
            common = cand
            if len(left_acc) == a:
                return (tuple(sorted(left_acc)), tuple(sorted(common))[:b])
    return None


def assemble_pair_families(
    g: BichromaticGraph,
    left_vertices: Sequence[int],
    right_pairs: Sequence[tuple[int, int]],
    side_vertices: Sequence[int],
) -> PairFamilies:
    """Families from a mined biclique: P pairs each biclique-left vertex
    with every other vertex of its side (unbuilt only, deduplicated);
    Q keeps the unbuilt biclique-right pairs. Every p is independent
    from every q because each left vertex sees both colors into each
    right pair."""
    pset: set[tuple[int, int]] = set()
    for u in left_vertices:
        for w in side_vertices:
            if w == u:
                continue
            p = normalize_pair((u, w))
            if g.state(*p) is None:
                pset.add(p)
    qset = [normalize_pair(q) for q in right_pairs if g.state(*normalize_pair(q)) is None]
    if not pset:
        raise EmptyFamilyError("no unbuilt pairs available for the left family")
    if not qset:
        raise EmptyFamilyError("no unbuilt pairs available for the right family")
    return PairFamilies(tuple(sorted(pset)), tuple(sorted(set(qset))))


def largest_mono_part_clique(reduced: ReducedGraph) -> tuple[Color, tuple[int, ...]]:
    """Largest single-color clique among the parts of a complete reduced
    graph (ties between colors prefer Blue; within a color the
    lexicographically-first clique of maximal size wins)."""
    best: dict[Color, tuple[int, ...]] = {}
    for color in (Color.RED, Color.BLUE):
        adj = [0] * reduced.part_count
        for i, j in reduced.part_pairs():
            if reduced.color_of(i, j) is color:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        found: tuple[int, ...] = ()
        for size in range(reduced.part_count, 0, -1):
            hit = _find_kclique(adj, (1 << reduced.part_count) - 1, size, list(range(reduced.part_count)))
            if hit is not None:
                found = tuple(sorted(hit))
                break
        best[color] = found
    if len(best[Color.BLUE]) >= len(best[Color.RED]):
        return Color.BLUE, best[Color.BLUE]
    return Color.RED, best[Color.RED]


class PipelineBuilder:
    """The staged move-saving strategy (selector name: ``paper``)."""

    name = "paper"

    def __init__(self, config: GameConfig, params: Optional[PaperStrategyParams] = None):
        self.config = config
        self.params = params or PaperStrategyParams.for_config(config)
        self.phase_log: list[PhaseEntry] = []
        self._gen: Optional[Iterator[tuple[int, int]]] = None
        self._state: Optional[GameState] = None

    def next_pair(self, state: GameState):
        if self._gen is None:
            self._state = state
            self._gen = self._plan()
        return next(self._gen, None)

    def _phase(self, name: str, witness: dict) -> PhaseEntry:
        entry = PhaseEntry(name, 0, witness)
        self.phase_log.append(entry)
        return entry

    def _plan(self) -> Iterator[tuple[int, int]]:
        state = self._state
        assert state is not None
        g = state.graph
        params = self.params
        C = min(params.C, self.config.N)
        if self.config.N // C < 1:
            C = self.config.N
        layout = PartitionLayout.even(self.config.N, C)

        cur = self._phase(
            "multipartite",
            {"parts": C, "part_size": layout.part_size, "eps": str(params.eps)},
        )
        for pair in layout.cross_pairs():
            if g.state(*pair) is None:
                cur.moves += 1
                yield pair

        reduced = reduced_graph(g, layout, params.eps)
        balanced = balanced_pair_search(g, layout, params.eps)

        if balanced is None:
            # Reduced graph complete: fill inside its largest mono part-clique.
            color, part_clique = largest_mono_part_clique(reduced)
            cur = self._phase(
                "multipartite_endgame",
                {
                    "reduced_color": str(color),
                    "part_clique": list(part_clique),
                    "t": len(part_clique),
                },
            )
            for pi in part_clique:
                part = layout.parts[pi]
                for u, w in combinations(part, 2):
                    if g.state(u, w) is None:
                        cur.moves += 1
                        yield (u, w)
        else:
            i, j = balanced
            self._phase(
                "balanced_pair",
                {"parts": [i, j], "red_density": str(_part_density(g, layout, i, j))},
            )
            fams = self._mine_families(g, layout, i, j)
            if fams is not None:
                yield from self._pairwise_endgame(g, fams)

        cur = self._phase("fill", {})
        while True:
            nxt = next(g.unbuilt_pairs(), None)
            if nxt is None:
                return
            cur.moves += 1
            yield nxt

    def _mine_families(
        self, g: BichromaticGraph, layout: PartitionLayout, i: int, j: int
    ) -> Optional[PairFamilies]:
        params = self.params
        sides = {
            IncidenceSide.LEFT: incidence_graph(g, layout.parts[i], layout.parts[j], IncidenceSide.LEFT),
            IncidenceSide.RIGHT: incidence_graph(g, layout.parts[i], layout.parts[j], IncidenceSide.RIGHT),
        }
        ordering = sorted(
            sides, key=lambda s: (-sides[s].edge_count, s is IncidenceSide.RIGHT)
        )
        for side in ordering:
            h = sides[side]
            if h.edge_count == 0:
                continue
            a = min(params.a_target or 1, len(h.singles))
            b_cap = max(len(h.neighbors(u)) for u in h.singles)
            b_start = min(params.b_target or 1, b_cap)
            mined = None
            for b in range(b_start, 0, -1):
                mined = biclique_mine(h, a, b)
                if mined is not None:
                    break
            if mined is None and a > 1:
                mined = biclique_mine(h, 1, 1)
            if mined is None:
                continue
            left, right = mined
            side_vertices = layout.parts[i] if side is IncidenceSide.LEFT else layout.parts[j]
            try:
                fams = assemble_pair_families(g, left, right, side_vertices)
            except EmptyFamilyError:
                continue
            self._phase(
                "incidence_mine",
                {
                    "side": side.value,
                    "a": len(left),
                    "b": len(right),
                    "incidence_edges": sides[side].edge_count,
                },
            )
            return fams
        return None

    def _pairwise_endgame(self, g: BichromaticGraph, fams: PairFamilies) -> Iterator[tuple[int, int]]:
        """Everything outside both families, then the smaller family, then
        (only if still unfinished) the larger one."""
        skip = set(fams.P) | set(fams.Q)
        witness = {
            "p_size": len(fams.P),
            "q_size": len(fams.Q),
            "larger_family_built": False,
        }
        cur = self._phase("pairwise_endgame", witness)
        for pair in list(g.unbuilt_pairs()):
            if pair not in skip and g.state(*pair) is None:
                cur.moves += 1
                yield pair
        smaller, larger = (fams.P, fams.Q) if len(fams.P) <= len(fams.Q) else (fams.Q, fams.P)
        for pair in smaller:
            if g.state(*pair) is None:
                cur.moves += 1
                yield pair
        for pair in larger:
            if g.state(*pair) is None:
                witness["larger_family_built"] = True
                cur.moves += 1
                yield pair


class ForcedEdgeBuilder:
    """Vertex sweep that defers forced pairs.

    A pair is forced when coloring it red would complete a red m-clique,
    so a rational painter must answer blue. The sweep skips forced pairs;
    afterwards it looks for an n-set whose inside is entirely built-blue
    or forced and cashes those pairs in (each one either wins red on the
    spot or extends the certain blue clique). Forced pairs never built
    are the savings; without a certified clique the policy falls back to
    filling.
    """

    name = "forced-edge"

    def __init__(self, config: GameConfig):
        self.config = config
        self.phase_log: list[PhaseEntry] = []
        self.forced: set[tuple[int, int]] = set()
        self.skip_log: list[tuple[int, int]] = []
        self._gen: Optional[Iterator[tuple[int, int]]] = None
        self._state: Optional[GameState] = None

    def next_pair(self, state: GameState):
        if self._gen is None:
            self._state = state
            self._gen = self._plan()
        return next(self._gen, None)

    def _is_forced(self, g: BichromaticGraph, u: int, v: int) -> bool:
        adj = g._adj(Color.RED)
        common = adj[u] & adj[v]
        need = self.config.m - 2
        if need == 0:
            return True  # m=2: any red edge is an instant red clique
        order = sorted(range(g.n), key=lambda w: -adj[w].bit_count())
        return _find_kclique(adj, common, need, order) is not None

    def _phase(self, name: str, witness: dict) -> PhaseEntry:
        entry = PhaseEntry(name, 0, witness)
        self.phase_log.append(entry)
        return entry

    def _plan(self) -> Iterator[tuple[int, int]]:
        state = self._state
        assert state is not None
        g = state.graph
        n_target = self.config.n

        cur = self._phase("sweep", {})
        for i in range(1, self.config.N):
            for j in range(0, i):
                if g.state(j, i) is not None:
                    continue
                if self._is_forced(g, j, i):
                    self.forced.add((j, i))
                    self.skip_log.append((j, i))
                    continue
                cur.moves += 1
                yield (j, i)
        cur.witness["skipped"] = len(self.forced)

        certified = self._certified_blue_clique(g, n_target)
        if certified is not None:
            inside = [
                (u, v)
                for u, v in combinations(sorted(certified), 2)
                if g.state(u, v) is None
            ]
            # Promote: these pairs are being cashed in, no longer deferred.
            for pair in inside:
                self.forced.discard(pair)
            cur = self._phase(
                "certified_fill",
                {"clique": sorted(certified), "deferred_remaining": len(self.forced)},
            )
            for pair in inside:
                if g.state(*pair) is None:
                    cur.moves += 1
                    yield pair

        cur = self._phase("fill", {})
        while True:
            nxt = next(g.unbuilt_pairs(), None)
            if nxt is None:
                return
            self.forced.discard(nxt)
            cur.moves += 1
            yield nxt

    def _certified_blue_clique(self, g: BichromaticGraph, k: int) -> Optional[frozenset[int]]:
        """n-set whose internal pairs are all built-blue or forced."""
        adj = [g._adj(Color.BLUE)[v] for v in range(g.n)]
        for u, v in self.forced:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        order = sorted(range(g.n), key=lambda w: -adj[w].bit_count())
        hit = _find_kclique(adj, (1 << g.n) - 1, k, order)
        return frozenset(hit) if hit is not None else None


def make_builder(spec: str, config: GameConfig):
    """Builder from a selector string: naive, paper[:k=v,...], forced-edge.

    Pipeline overrides: C=<int>, eps=<p/q>, a=<int>, b=<int>.
    """
    name, _, arg = spec.partition(":")
    if name == "naive":
        return NaiveBuilder(config)
    if name == "forced-edge":
        return ForcedEdgeBuilder(config)
    if name == "paper":
        overrides: dict = {}
        if arg:
            for item in arg.split(","):
                key, _, val = item.partition("=")
                key = key.strip()
                if key == "C":
                    overrides["C"] = int(val)
                elif key == "eps":
                    overrides["eps"] = Fraction(val)
                elif key == "a":
                    overrides["a_target"] = int(val)
                elif key == "b":
                    overrides["b_target"] = int(val)
                else:
                    raise ValueError(f"unknown pipeline parameter: {key!r}")
        return PipelineBuilder(config, PaperStrategyParams.for_config(config, **overrides))
    raise ValueError(f"unknown builder: {spec!r}")


def _part_density(g: BichromaticGraph, layout: PartitionLayout, i: int, j: int):
    from .graph import red_density

    return red_density(g, layout.parts[i], layout.parts[j])
