"""Extremal-graph ingredients and their witness checkers.

* ``kst_bound``: the Kővári–Sós–Turán edge bound for K_{s,t}-free
  bipartite graphs, evaluated in exact rational arithmetic with the
  fractional power rounded up (so "edge count < bound" checks stay
  conservative).
* ``es_extract``: exact largest clique-or-independent-set extraction
  from a sparse uncolored graph (branch-and-bound on bitsets).
* ``verify_least_density``: witness computation for the incidence
  density dichotomy on color-balanced complete bipartite graphs:
  either many color-balanced vertices make the left incidence graph
  dense, or the near-monochromatic majorities S_R and S_B make the
  right one dense.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .graph import (
    BichromaticGraph,
    Color,
    GraphError,
    _find_kclique,
    is_color_balanced,
)


class DomainError(Exception):
    pass


class NotBipartiteCompleteError(GraphError):
    pass


class NotBalancedError(GraphError):
    pass


# -- KST / Zarankiewicz bound ------------------------------------------------

_PRECISION_BITS = 64


def _iroot_floor(x: int, s: int) -> int:
    """Floor of the integer s-th root (Newton on ints)."""
    if x < 0:
        raise ValueError("negative radicand")
    if x < 2 or s == 1:
        return x
    r = 1 << ((x.bit_length() + s - 1) // s)
    while True:
        nr = ((s - 1) * r + x // r ** (s - 1)) // s
        if nr >= r:
            return r
        r = nr


def _root_ceil(x: int, s: int) -> Fraction:
    """x^(1/s) rounded up at 2^-64 resolution (exact when x is a perfect
    s-th power)."""
    scaled = x << (s * _PRECISION_BITS)
    f = _iroot_floor(scaled, s)
    if f**s < scaled:
        f += 1
    return Fraction(f, 1 << _PRECISION_BITS)


def kst_bound(m: int, n: int, s: int, t: int) -> Fraction:
    """Edge bound for K_{s,t}-free bipartite graphs with sides m and n:

        (t-1)^(1/s) * (m-s+1) * n^(1-1/s) + (s-1) * n

    evaluated as (m-s+1) * ((t-1) * n^(s-1))^(1/s) + (s-1) * n with the
    root rounded up.
    """
    if not (m >= s >= 1 and n >= t >= 1):
        raise DomainError(f"need m >= s >= 1 and n >= t >= 1, got {(m, n, s, t)}")
    radicand = (t - 1) * n ** (s - 1)
    return (m - s + 1) * _root_ceil(radicand, s) + (s - 1) * n


# -- largest homogeneous set -------------------------------------------------


def max_clique(n: int, adj: Sequence[int]) -> frozenset[int]:
    """Exact maximum clique of a graph given as bitset adjacency."""
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())
    best: tuple[int, ...] = ()
    for size in range(n, 0, -1):
        hit = _find_kclique(list(adj), (1 << n) - 1, size, order)
        if hit is not None:
            best = tuple(hit)
            break
    return frozenset(best)


def es_extract(n: int, edges: Iterable[tuple[int, int]]) -> tuple[frozenset[int], str]:
    """Largest of (max clique, max independent set) of an uncolored graph,
    tagged "clique" or "independent" (ties return the clique). Exact;
    limited to 40 vertices."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if n > 40:
        raise DomainError("exact extraction limited to 40 vertices")
    adj = [0] * n
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"bad edge ({u},{v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    full = (1 << n) - 1
    comp = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    clique = max_clique(n, adj)
    independent = max_clique(n, comp)
    if len(clique) >= len(independent):
        return clique, "clique"
    return independent, "independent"


# -- incidence density dichotomy ---------------------------------------------


@dataclass(frozen=True)
class LeastDensityWitness:
    """Everything the dichotomy check computes on one instance.

    Constants from epsilon: delta = eps^5/(2(1+eps)), mu = eps^2,
    nu = eps/(2(1+eps)). A left vertex is balanced when it has at least
    mu*N0 built neighbors of each color; S_R / S_B hold the vertices
    with at least (1-mu)*N0 red / blue neighbors.
    """

    eps: Fraction
    delta: Fraction
    mu: Fraction
    nu: Fraction
    n0: int
    balanced_vertices: frozenset[int]
    s_r: frozenset[int]
    s_b: frozenset[int]
    e_hl: int
    e_hr: int

    @property
    def meets_density_bound(self) -> bool:
        """max(e_HL, e_HR) >= delta * N0^3, exactly."""
        return max(self.e_hl, self.e_hr) >= self.delta * self.n0**3

    @property
    def few_balanced(self) -> bool:
        """The dichotomy's second branch hypothesis: balanced < nu * N0."""
        return len(self.balanced_vertices) < self.nu * self.n0

    @property
    def intermediate_holds(self) -> bool:
        """e_HR >= |S_R| * |S_B| * (1 - 2*mu) * N0, exactly."""
        return self.e_hr >= len(self.s_r) * len(self.s_b) * (1 - 2 * self.mu) * self.n0


def verify_least_density(
    g: BichromaticGraph,
    v1: Sequence[int],
    v2: Sequence[int],
    eps: Fraction,
) -> LeastDensityWitness:
    """Witness fields and both incidence edge counts for a complete
    bipartite eps-color-balanced instance.

    On complete bipartite inputs the left incidence count collapses to
    sum over u in V1 of reddeg(u) * bluedeg(u), and symmetrically for
    the right; the sides here are |V1| = |V2| = N0.
    """
    eps = Fraction(eps)
    v1 = sorted(set(v1))
    v2 = sorted(set(v2))
    if len(v1) != len(v2) or not v1:
        raise NotBipartiteCompleteError("sides must be nonempty and of equal size")
    if set(v1) & set(v2):
        raise NotBipartiteCompleteError("sides must be disjoint")
    n0 = len(v1)
    for u in v1:
        for w in v2:
            if g.state(u, w) is None:
                raise NotBipartiteCompleteError(f"cross pair ({u},{w}) unbuilt")
    for side in (v1, v2):
        for u, w in combinations(side, 2):
            if g.state(u, w) is not None:
                raise NotBipartiteCompleteError(f"side-internal pair ({u},{w}) built")
    if not is_color_balanced(g, v1, v2, eps):
        raise NotBalancedError("instance is not eps-color-balanced")

    mu = eps**2
    nu = eps / (2 * (1 + eps))
    delta = eps**5 / (2 * (1 + eps))

    other_mask = 0
    for w in v2:
        other_mask |= 1 << w
    red_deg = {u: (g.neighborhood(u, Color.RED) & other_mask).bit_count() for u in v1}
    blue_deg = {u: (g.neighborhood(u, Color.BLUE) & other_mask).bit_count() for u in v1}
    v1_mask = 0
    for u in v1:
        v1_mask |= 1 << u
    red_deg2 = {w: (g.neighborhood(w, Color.RED) & v1_mask).bit_count() for w in v2}
    blue_deg2 = {w: (g.neighborhood(w, Color.BLUE) & v1_mask).bit_count() for w in v2}

    balanced = frozenset(
        u for u in v1 if red_deg[u] >= mu * n0 and blue_deg[u] >= mu * n0
    )
    s_r = frozenset(u for u in v1 if red_deg[u] >= (1 - mu) * n0)
    s_b = frozenset(u for u in v1 if blue_deg[u] >= (1 - mu) * n0)

    e_hl = sum(red_deg[u] * blue_deg[u] for u in v1)
    e_hr = sum(red_deg2[w] * blue_deg2[w] for w in v2)

    return LeastDensityWitness(
        eps=eps,
        delta=delta,
        mu=mu,
        nu=nu,
        n0=n0,
        balanced_vertices=balanced,
        s_r=s_r,
        s_b=s_b,
        e_hl=e_hl,
        e_hr=e_hr,
    )
