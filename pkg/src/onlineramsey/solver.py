"""Exact game values by minimax over the move tree.

The value of a position is the number of moves Builder needs to force a
win under optimal play by both sides:

    value(g) = 0                       if g already holds a target clique
    value(g) = unwinnable              if g is complete without one
    value(g) = 1 + min over unbuilt e
                   of max over colors c of value(g + e:c)

Unwinnable propagates as infinity: Painter picks it whenever available.

Three routes are provided and cross-validated:

* ``ExactSolver``: the production path: minimax with a transposition
  table keyed by canonical codes (relabeling-invariant, colors kept
  distinct). The table stores exact values only; the only cutoffs are
  exactness-preserving (stop scanning moves once the running best hits
  the position's admissible lower bound; skip the second color once the
  first is unwinnable).
* ``brute_value``: the oracle: the same recursion with a raw
  position-vector memo and no canonicalization (N <= 5), or a full
  retrograde sweep over all 3^C(N,2) pair-state vectors (N = 6).
* ``retrograde_values``: the table behind the N = 6 oracle, usable
  directly for seeded positions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Optional

import numpy as np

from .engine import GameConfig
from .graph import BichromaticGraph, Color, all_pairs, pair_count, pair_rank

INFINITE = 255  # table marker for unwinnable positions


class SolverError(Exception):
    pass


class PositionTooLargeError(SolverError):
    pass


class BudgetExceededError(SolverError):
    """Node budget ran out; carries the best admissible bounds found."""

    def __init__(self, nodes_expanded: int, lower: int, upper: int):
        super().__init__(
            f"node budget exceeded after {nodes_expanded} nodes "
            f"(bounds: {lower}..{upper})"
        )
        self.nodes_expanded = nodes_expanded
        self.lower = lower
        self.upper = upper


@dataclass(frozen=True)
class SolverResult:
    """Exact value (None = unwinnable), principal variation, and counters."""

    value: Optional[int]
    principal_variation: tuple[tuple[int, int, Color], ...]
    nodes_expanded: int
    table_hits: int


# -- canonical codes ---------------------------------------------------------


@lru_cache(maxsize=8)
def _perm_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(pair-index permutations for all vertex relabelings, base-3 weights)."""
    if n > 8:
        raise PositionTooLargeError("canonical codes support up to 8 vertices")
    pairs = list(all_pairs(n))
    rows = []
    for sigma in permutations(range(n)):
        rows.append([pair_rank(n, sigma[u], sigma[v]) for (u, v) in pairs])
    pp = np.array(rows, dtype=np.int16)
    pow3 = 3 ** np.arange(len(pairs), dtype=np.int64)
    return pp, pow3


def canonical_int(vec: np.ndarray, n: int) -> int:
    """Minimal base-3 encoding over all vertex relabelings."""
    pp, pow3 = _perm_tables(n)
    return int((vec[pp].astype(np.int64) @ pow3).min())


def canonical_batch(vecs: np.ndarray, n: int) -> np.ndarray:
    """Canonical integer codes for a batch of state vectors (rows)."""
    pp, pow3 = _perm_tables(n)
    return (vecs[:, pp].astype(np.int64) @ pow3).min(axis=1)


def canonical_code(g: BichromaticGraph) -> bytes:
    """Relabeling-invariant, color-distinguishing code of a graph.

    Two graphs have equal codes iff some vertex permutation maps one's
    red set onto the other's red set and blue onto blue.
    """
    vec = np.frombuffer(g.state_vector(), dtype=np.uint8)
    pp, pow3 = _perm_tables(g.n)
    encoded = vec[pp].astype(np.int64) @ pow3
    best = int(np.argmin(encoded))
    return bytes([g.n]) + bytes(vec[pp[best]])


def graph_index(g: BichromaticGraph) -> int:
    """Base-3 rank of the pair-state vector (digit per pair rank)."""
    idx = 0
    for digit in reversed(g.state_vector()):
        idx = idx * 3 + digit
    return idx


# -- clique rank tables ------------------------------------------------------


@lru_cache(maxsize=64)
def _clique_rank_lists(N: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Pair ranks of every k-subset's internal pairs."""
    out = []
    for sub in combinations(range(N), k):
        out.append(tuple(pair_rank(N, u, v) for u, v in combinations(sub, 2)))
    return tuple(out)


def _has_mono(vec, ranks_list, digit) -> bool:
    for ranks in ranks_list:
        if all(vec[r] == digit for r in ranks):
            return True
    return False


def min_completion_cost(vec, config: GameConfig) -> int:
    """Admissible lower bound: cheapest count of unbuilt pairs that could
    still complete a target clique (0 when one is already present)."""
    best = INFINITE
    for digit, k in ((1, config.m), (2, config.n)):
        other = 3 - digit
        for ranks in _clique_rank_lists(config.N, k):
            cost = 0
            for r in ranks:
                s = vec[r]
                if s == other:
                    cost = INFINITE
                    break
                if s == 0:
                    cost += 1
            if cost < best:
                best = cost
                if best == 0:
                    return 0
    return best


# -- memoized minimax --------------------------------------------------------


class ExactSolver:
    """Minimax over the game tree with a canonical-code transposition table.

    One instance holds one table; reuse it across positions of the same
    configuration. The table stores exact values only, so concurrent
    workers may share it: entries are insert-if-absent and duplicated
    work is merely wasted, never wrong. The node/hit counters are
    approximate under concurrency.
    """

    def __init__(self, config: GameConfig, max_vertices: int = 6, node_budget: Optional[int] = None):
        if config.N > max_vertices:
            raise PositionTooLargeError(
                f"N={config.N} exceeds the configured limit {max_vertices}"
            )
        self.config = config
        self.node_budget = node_budget
        self.nodes_expanded = 0
        self.table_hits = 0
        self._table: dict[int, int] = {}
        self._pairs = list(all_pairs(config.N))
        self._red_cliques = _clique_rank_lists(config.N, config.m)
        self._blue_cliques = _clique_rank_lists(config.N, config.n)
        self._pow3 = [3**i for i in range(len(self._pairs))]

    # value() is the workhorse; solve() adds the principal variation.

    def value(self, g: BichromaticGraph) -> Optional[int]:
        if g.n != self.config.N:
            raise ValueError("graph size differs from the solver's config")
        vec = np.frombuffer(g.state_vector(), dtype=np.uint8).copy()
        v = self._value(vec, canonical_batch(vec[None, :], self.config.N)[0])
        return None if v >= INFINITE else v

    def solve(self, g: BichromaticGraph) -> SolverResult:
        value = self.value(g)
        pv = self._principal_variation(g) if value is not None else ()
        return SolverResult(value, pv, self.nodes_expanded, self.table_hits)

    def _won(self, vec) -> bool:
        return _has_mono(vec, self._red_cliques, 1) or _has_mono(vec, self._blue_cliques, 2)

    def _value(self, vec: np.ndarray, code: int) -> int:
        cached = self._table.get(code)
        if cached is not None:
            self.table_hits += 1
            return cached
        if self._won(vec):
            self._table[code] = 0
            return 0
        unbuilt = [i for i, s in enumerate(vec) if s == 0]
        if not unbuilt:
            self._table[code] = INFINITE
            return INFINITE
        self.nodes_expanded += 1
        if self.node_budget is not None and self.nodes_expanded > self.node_budget:
            raise BudgetExceededError(
                self.nodes_expanded, min_completion_cost(vec, self.config), len(unbuilt)
            )

        # Move ordering: pairs inside the cheapest completable clique first.
        lower = min_completion_cost(vec, self.config)
        order = self._order_moves(vec, unbuilt)

        # All children of this node, canonicalized in one batch.
        children = np.repeat(vec[None, :], 2 * len(order), axis=0)
        for i, e in enumerate(order):
            children[2 * i, e] = 1
            children[2 * i + 1, e] = 2
        codes = canonical_batch(children, self.config.N)

        best = INFINITE
        for i in range(len(order)):
            v_red = self._value(children[2 * i], int(codes[2 * i]))
            if v_red >= INFINITE:
                continue  # Painter answers red and escapes forever
            v_blue = self._value(children[2 * i + 1], int(codes[2 * i + 1]))
            if v_blue >= INFINITE:
                continue
            move_value = 1 + max(v_red, v_blue)
            if move_value < best:
                best = move_value
                if best <= max(1, lower):
                    break  # cannot do better than the admissible floor
        self._table[code] = best
        return best

    def _order_moves(self, vec, unbuilt: list[int]) -> list[int]:
        best_ranks: Optional[tuple[int, ...]] = None
        best_cost = INFINITE
        for digit, ranks_list in ((1, self._red_cliques), (2, self._blue_cliques)):
            other = 3 - digit
            for ranks in ranks_list:
                cost = 0
                for r in ranks:
                    s = vec[r]
                    if s == other:
                        cost = INFINITE
                        break
                    if s == 0:
                        cost += 1
                if 0 < cost < best_cost:
                    best_cost = cost
                    best_ranks = ranks
        if best_ranks is None:
            return unbuilt
        preferred = {r for r in best_ranks if vec[r] == 0}
        return sorted(unbuilt, key=lambda e: (e not in preferred, e))

    def _principal_variation(self, g: BichromaticGraph) -> tuple[tuple[int, int, Color], ...]:
        """Walk the table: lexicographically-first optimal move each turn,
        then the Painter color that maximizes the remaining value."""
        vec = np.frombuffer(g.state_vector(), dtype=np.uint8).copy()
        pv: list[tuple[int, int, Color]] = []
        while True:
            code = int(canonical_batch(vec[None, :], self.config.N)[0])
            v = self._value(vec, code)
            if v == 0 or v >= INFINITE:
                return tuple(pv)
            best_move = None
            for e in range(len(vec)):
                if vec[e] != 0:
                    continue
                vals = []
                for digit in (1, 2):
                    child = vec.copy()
                    child[e] = digit
                    ccode = int(canonical_batch(child[None, :], self.config.N)[0])
                    vals.append(self._value(child, ccode))
                mv = INFINITE if max(vals) >= INFINITE else 1 + max(vals)
                if mv == v:
                    reply = Color.RED if vals[0] >= vals[1] else Color.BLUE
                    best_move = (e, reply)
                    break
            assert best_move is not None, "table inconsistent with its own value"
            e, reply = best_move
            u, w = self._pairs[e]
            pv.append((u, w, reply))
            vec[e] = reply.state


def solve_from(
    g: BichromaticGraph,
    config: GameConfig,
    max_vertices: int = 6,
    node_budget: Optional[int] = None,
) -> SolverResult:
    """One-shot exact solve of a position."""
    return ExactSolver(config, max_vertices=max_vertices, node_budget=node_budget).solve(g)


@lru_cache(maxsize=16)
def shared_solver(config: GameConfig, max_vertices: int = 6) -> ExactSolver:
    """Process-wide solver per configuration; its table persists across
    callers (exact-value entries only, so sharing is harmless)."""
    return ExactSolver(config, max_vertices=max_vertices)


def savings_of(g: BichromaticGraph, config: GameConfig) -> Optional[int]:
    """C(N,2) - e(g) - value(g); None when the position is unwinnable."""
    value = shared_solver(config).value(g)
    if value is None:
        return None
    return config.total_pairs - g.built_count - value


# -- oracle: raw-memo recursion (N <= 5) -------------------------------------


class _BruteForce:
    """Same recursion, no canonicalization, memo keyed by the raw vector."""

    def __init__(self, config: GameConfig):
        self.config = config
        self.memo: dict[bytes, int] = {}
        self._red = _clique_rank_lists(config.N, config.m)
        self._blue = _clique_rank_lists(config.N, config.n)

    def value(self, vec: bytes) -> int:
        cached = self.memo.get(vec)
        if cached is not None:
            return cached
        if _has_mono(vec, self._red, 1) or _has_mono(vec, self._blue, 2):
            self.memo[vec] = 0
            return 0
        best = INFINITE
        lst = list(vec)
        for e, s in enumerate(lst):
            if s != 0:
                continue
            lst[e] = 1
            v_red = self.value(bytes(lst))
            if v_red < INFINITE:
                lst[e] = 2
                v_blue = self.value(bytes(lst))
                if v_blue < INFINITE:
                    best = min(best, 1 + max(v_red, v_blue))
            lst[e] = 0
        self.memo[vec] = best
        return best


@lru_cache(maxsize=16)
def _brute_cache(config: GameConfig) -> "_BruteForce":
    return _BruteForce(config)


# -- oracle: retrograde sweep over all states (N <= 6) -----------------------


@lru_cache(maxsize=4)
def retrograde_values(config: GameConfig) -> np.ndarray:
    """Exact values for every base-3 pair-state vector, as uint8
    (INFINITE marks unwinnable states). N = 6 means 3^15 entries.

    Sweeps levels by decreasing built count; each state's value is read
    off its two children per unbuilt pair. Vectorized per level.
    """
    P = config.total_pairs
    if P > 15:
        raise PositionTooLargeError("retrograde table supports up to C(6,2)=15 pairs")
    total = 3**P
    pow3 = np.array([3**i for i in range(P)], dtype=np.int64)

    red = _clique_rank_lists(config.N, config.m)
    blue = _clique_rank_lists(config.N, config.n)

    value = np.full(total, INFINITE, dtype=np.uint8)
    counts = np.zeros(total, dtype=np.uint8)
    won = np.zeros(total, dtype=bool)

    chunk = 1 << 20
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = [(idx // pow3[e]) % 3 for e in range(P)]
        cnt = np.zeros(len(idx), dtype=np.uint8)
        for d in digits:
            cnt += (d != 0).astype(np.uint8)
        counts[idx] = cnt
        w = np.zeros(len(idx), dtype=bool)
        for digit, ranks_list in ((1, red), (2, blue)):
            for ranks in ranks_list:
                m = digits[ranks[0]] == digit
                for r in ranks[1:]:
                    m &= digits[r] == digit
                w |= m
        won[idx] = w
    value[won] = 0

    all_idx = np.arange(total, dtype=np.int64)
    for k in range(P - 1, -1, -1):
        live = all_idx[(counts == k) & ~won]
        if len(live) == 0:
            continue
        acc = np.full(len(live), INFINITE, dtype=np.uint8)
        for e in range(P):
            dig = (live // pow3[e]) % 3
            sel = dig == 0
            sub = live[sel]
            child = np.maximum(value[sub + pow3[e]], value[sub + 2 * pow3[e]])
            acc[sel] = np.minimum(acc[sel], child)
        value[live] = np.where(acc >= INFINITE, INFINITE, acc + 1)
    return value


def brute_value(g: BichromaticGraph, config: GameConfig) -> Optional[int]:
    """Oracle value: raw-memo recursion for N <= 5, retrograde for N = 6."""
    if g.n != config.N:
        raise ValueError("graph size differs from the config")
    if config.N <= 5:
        v = _brute_cache(config).value(g.state_vector())
    elif config.N == 6:
        v = int(retrograde_values(config)[graph_index(g)])
    else:
        raise PositionTooLargeError("oracle supports up to 6 vertices")
    return None if v >= INFINITE else v
