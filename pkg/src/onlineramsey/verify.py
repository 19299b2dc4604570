"""Batch property suite behind the `verify` CLI subcommand.

Each check returns (name, passed, detail). The independence-exclusion
fuzz takes a pluggable independence predicate so a deliberately broken
predicate can be shown to trip the fuzz (mutation smoke testing).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Optional

from .builders import NaiveBuilder, PipelineBuilder, make_builder
from .engine import GameConfig, GameStatus, play
from .extremal import kst_bound, verify_least_density
from .graph import (
    BichromaticGraph,
    Color,
    all_pairs,
    are_independent,
    find_mono_clique,
    incidence_graph,
)
from .painters import RandomPainter, painter_pool
from .solver import brute_value, shared_solver


def random_graph(rng: random.Random, n: int, p_built: float = 0.5) -> BichromaticGraph:
    g = BichromaticGraph(n)
    for u, v in all_pairs(n):
        if rng.random() < p_built:
            g.build_edge(u, v, Color.RED if rng.random() < 0.5 else Color.BLUE)
    return g


def independence_exclusion_fuzz(
    n_graphs: int,
    rng: random.Random,
    predicate: Callable[[BichromaticGraph, tuple, tuple], bool] = are_independent,
    completions_per_graph: int = 3,
    max_vertices: int = 12,
) -> int:
    """Count violations: a predicate-independent pair (p, q) whose four
    endpoints fit in one monochromatic clique under some completion.

    Checks every sampled full completion plus the exhaustive completion
    of the 4-set's internal unbuilt pairs (equivalent to exhausting all
    completions for this property, which only reads those six pairs).
    """
    violations = 0
    for _ in range(n_graphs):
        n = rng.randint(4, max_vertices)
        g = random_graph(rng, n, p_built=rng.uniform(0.2, 0.8))
        unbuilt = [pair for pair in all_pairs(n) if g.state(*pair) is None]
        indep = []
        for p, q in combinations(unbuilt, 2):
            if set(p) & set(q):
                continue
            if predicate(g, p, q):
                indep.append((p, q))
        if not indep:
            continue
        # Sampled full completions, shared across the graph's pairs.
        completions = []
        for _ in range(completions_per_graph):
            comp = {}
            for pair in all_pairs(n):
                s = g.state(*pair)
                if s is None:
                    s = Color.RED if rng.random() < 0.5 else Color.BLUE
                comp[pair] = s
            completions.append(comp)
        for p, q in indep:
            four = tuple(sorted((*p, *q)))
            inner = list(combinations(four, 2))
            for comp in completions:
                if _mono_inner(comp, inner):
                    violations += 1
            # Exhaustive over the 4-set's internal unbuilt pairs.
            free = [pair for pair in inner if g.state(*pair) is None]
            built = {pair: g.state(*pair) for pair in inner if g.state(*pair) is not None}
            for assignment in product((Color.RED, Color.BLUE), repeat=len(free)):
                comp = dict(built)
                comp.update(zip(free, assignment))
                if _mono_inner(comp, inner):
                    violations += 1
                    break
    return violations


def _mono_inner(colors: dict, inner: list) -> bool:
    seen = {colors[pair] for pair in inner}
    return len(seen) == 1


def check_small_solver_values() -> tuple[str, bool, str]:
    expected = {(2, 2, 3): 1, (2, 2, 4): 1, (2, 3, 3): 3, (2, 3, 4): 3, (2, 4, 4): 6}
    for (m, n, N), want in expected.items():
        got = shared_solver(GameConfig(m, n, N)).value(BichromaticGraph(N))
        if got != want:
            return ("solver-small-values", False, f"({m},{n};{N}) = {got}, expected {want}")
    return ("solver-small-values", True, "")


def check_oracle_equivalence(quick: bool) -> tuple[str, bool, str]:
    rng = random.Random(20240 if quick else 20241)
    max_n = 4 if quick else 5
    samples = 10 if quick else 25
    for m, n in ((2, 2), (2, 3), (3, 2), (3, 3)):
        for N in range(2, max_n + 1):
            config = GameConfig(m, n, N)
            solver = shared_solver(config)
            g = BichromaticGraph(N)
            if solver.value(g) != brute_value(g, config):
                return ("oracle-equivalence", False, f"empty ({m},{n};{N})")
            for _ in range(samples):
                g = random_graph(rng, N, p_built=rng.uniform(0.1, 0.9))
                if solver.value(g) != brute_value(g, config):
                    return ("oracle-equivalence", False, f"seeded ({m},{n};{N})")
    return ("oracle-equivalence", True, "")


def check_independence_fuzz(quick: bool) -> tuple[str, bool, str]:
    rng = random.Random(7)
    n_graphs = 100 if quick else 1000
    bad = independence_exclusion_fuzz(n_graphs, rng, max_vertices=10 if quick else 12)
    return ("independence-exclusion", bad == 0, f"{bad} violations" if bad else "")


def check_incidence_identity(quick: bool) -> tuple[str, bool, str]:
    rng = random.Random(11)
    for _ in range(10 if quick else 50):
        n0 = rng.randint(3, 8)
        g = BichromaticGraph(2 * n0)
        v1 = list(range(n0))
        v2 = list(range(n0, 2 * n0))
        for u in v1:
            for w in v2:
                g.build_edge(u, w, Color.RED if rng.random() < 0.5 else Color.BLUE)
        h = incidence_graph(g, v1, v2)
        by_degrees = sum(
            (g.neighborhood(u, Color.RED)).bit_count() * (g.neighborhood(u, Color.BLUE)).bit_count()
            for u in v1
        )
        if h.edge_count != by_degrees:
            return ("incidence-identity", False, f"{h.edge_count} != {by_degrees}")
    return ("incidence-identity", True, "")


def check_family_savings_fixture(quick: bool) -> tuple[str, bool, str]:
    if quick:
        return ("family-savings-fixture", True, "skipped in quick mode")
    from .solver import savings_of
    from .fixtures import family_fixture

    for s, t in ((1, 1), (2, 3)):
        g = family_fixture(s, t)
        config = GameConfig(3, 3, 6)
        got = brute_value(g, config)
        savings = config.total_pairs - g.built_count - got
        if savings < min(s, t):
            return ("family-savings-fixture", False, f"(s,t)=({s},{t}) savings {savings}")
    return ("family-savings-fixture", True, "")


def check_pipeline_totality(quick: bool) -> tuple[str, bool, str]:
    n_values = (6, 8, 10) if quick else tuple(range(6, 16))
    seeds = 5 if quick else 25
    for N in n_values:
        config = GameConfig(3, 3, N)
        painters = painter_pool(config, include_minimax=False)
        painters += [RandomPainter(s) for s in range(seeds)]
        for painter in painters:
            transcript, report = play(config, make_builder("paper", config), painter)
            if transcript.status is not GameStatus.BUILDER_WON:
                return ("pipeline-totality", False, f"N={N} painter={painter.name}")
            if transcript.moves_made + transcript.savings != config.total_pairs:
                return ("pipeline-totality", False, f"accounting at N={N}")
    return ("pipeline-totality", True, "")


def check_kst_spot(quick: bool) -> tuple[str, bool, str]:
    if kst_bound(4, 4, 2, 2) != 10:
        return ("kst-spot", False, f"kst_bound(4,4,2,2) = {kst_bound(4, 4, 2, 2)}")
    return ("kst-spot", True, "")


def check_least_density(quick: bool) -> tuple[str, bool, str]:
    rng = random.Random(13)
    for _ in range(5 if quick else 25):
        n0 = rng.randint(10, 24)
        g = BichromaticGraph(2 * n0)
        v1 = list(range(n0))
        v2 = list(range(n0, 2 * n0))
        for u in v1:
            for w in v2:
                g.build_edge(u, w, Color.RED if rng.random() < 0.5 else Color.BLUE)
        try:
            witness = verify_least_density(g, v1, v2, Fraction(1, 10))
        except Exception:
            continue  # unbalanced draw; resample next round
        if witness.few_balanced and not witness.intermediate_holds:
            return ("least-density", False, f"intermediate inequality failed at N0={n0}")
    return ("least-density", True, "")


def verify_all(quick: bool = False) -> list[tuple[str, bool, str]]:
    checks = [
        check_small_solver_values(),
        check_oracle_equivalence(quick),
        check_independence_fuzz(quick),
        check_incidence_identity(quick),
        check_family_savings_fixture(quick),
        check_pipeline_totality(quick),
        check_kst_spot(quick),
        check_least_density(quick),
    ]
    return checks
