"""The adversary pool.

Every painter observes the full public game state (perfect information)
and must answer Red or Blue for each legal query. Tie-break chains are
fixed per painter so transcripts are reproducible.
"""

from __future__ import annotations

import random
from typing import Optional

from .engine import GameConfig, GameState, Transcript
from .graph import BichromaticGraph, Color, _find_kclique, normalize_pair


class PainterError(Exception):
    pass


class ReplayDivergenceError(PainterError):
    """Builder asked about a pair that is not next in the transcript."""


class NoPendingChoiceError(PainterError):
    """A remote painter was queried before its human fed a color."""


class RandomPainter:
    """I.i.d. fair color choices from a seeded generator."""

    def __init__(self, seed: int):
        self.name = f"random:{seed}"
        self._rng = random.Random(seed)

    def choose(self, state: GameState, pair) -> Color:
        return Color.RED if self._rng.random() < 0.5 else Color.BLUE


class ConstantPainter:
    """Always the same color."""

    def __init__(self, color: Color):
        self.color = color
        self.name = "red" if color is Color.RED else "blue"

    def choose(self, state: GameState, pair) -> Color:
        return self.color


def _clique_size_through(g: BichromaticGraph, u: int, v: int, color: Color) -> int:
    """Largest monochromatic clique through {u, v} if it were built with
    the color: 2 plus the largest clique in the common neighborhood."""
    adj = g._adj(color)
    common = adj[u] & adj[v]
    order = sorted(range(g.n), key=lambda w: -adj[w].bit_count())
    size = 0
    while _find_kclique(adj, common, size + 1, order) is not None:
        size += 1
    return 2 + size


class GreedyMincliquePainter:
    """Picks the color minimizing the largest monochromatic clique the
    new edge would sit in (tie: the globally rarer color, then Red)."""

    name = "greedy"

    def choose(self, state: GameState, pair) -> Color:
        u, v = normalize_pair(pair)
        g = state.graph
        red_clique = _clique_size_through(g, u, v, Color.RED)
        blue_clique = _clique_size_through(g, u, v, Color.BLUE)
        if red_clique != blue_clique:
            return Color.RED if red_clique < blue_clique else Color.BLUE
        if g.red_count != g.blue_count:
            return Color.RED if g.red_count < g.blue_count else Color.BLUE
        return Color.RED


class BalancedPainter:
    """Moves the global red density toward 1/2 (tie: Red).

    Keeps |#red - #blue| <= 1 at all times.
    """

    name = "balanced"

    def choose(self, state: GameState, pair) -> Color:
        g = state.graph
        if g.red_count > g.blue_count:
            return Color.BLUE
        if g.blue_count > g.red_count:
            return Color.RED
        return Color.RED


class ReplayPainter:
    """Replays a transcript's colors; errors if the builder diverges."""

    def __init__(self, transcript: Transcript):
        self.name = "replay"
        self._moves = transcript.moves
        self._pos = 0

    def choose(self, state: GameState, pair) -> Color:
        if self._pos >= len(self._moves):
            raise ReplayDivergenceError("transcript exhausted")
        u, v, color = self._moves[self._pos]
        if normalize_pair(pair) != (u, v):
            raise ReplayDivergenceError(
                f"expected pair ({u},{v}), builder proposed {tuple(pair)}"
            )
        self._pos += 1
        return color


class MinimaxPainter:
    """Optimal resistance: picks the color maximizing the exact solver's
    remaining-moves value (unwinnable counts as infinite; tie: Red)."""

    def __init__(self, config: GameConfig, max_vertices: int = 6):
        from .solver import shared_solver  # deferred: solver pulls numpy

        self.name = "minimax"
        self._solver = shared_solver(config, max_vertices)

    def choose(self, state: GameState, pair) -> Color:
        u, v = normalize_pair(pair)
        values = {}
        for color in (Color.RED, Color.BLUE):
            child = state.graph.copy()
            child.build_edge(u, v, color)
            values[color] = self._solver.value(child)
        red, blue = values[Color.RED], values[Color.BLUE]
        if red is None:
            return Color.RED
        if blue is None:
            return Color.BLUE
        return Color.RED if red >= blue else Color.BLUE


class RemotePainter:
    """Painter driven externally (the session service feeds each color)."""

    name = "remote"

    def __init__(self):
        self._pending: Optional[Color] = None

    def feed(self, color: Color) -> None:
        self._pending = color

    def choose(self, state: GameState, pair) -> Color:
        if self._pending is None:
            raise NoPendingChoiceError("no color has been fed")
        color, self._pending = self._pending, None
        return color


def make_painter(spec: str, config: GameConfig):
    """Painter from a selector string: random:<seed>, red, blue, greedy,
    balanced, minimax, replay:<file>, remote:<session>."""
    name, _, arg = spec.partition(":")
    if name == "random":
        if not arg:
            raise ValueError("random painter needs a seed: random:<seed>")
        return RandomPainter(int(arg))
    if name == "red":
        return ConstantPainter(Color.RED)
    if name == "blue":
        return ConstantPainter(Color.BLUE)
    if name == "greedy":
        return GreedyMincliquePainter()
    if name == "balanced":
        return BalancedPainter()
    if name == "minimax":
        return MinimaxPainter(config)
    if name == "replay":
        if not arg:
            raise ValueError("replay painter needs a file: replay:<file>")
        with open(arg, "r", encoding="utf-8") as fh:
            return ReplayPainter(Transcript.from_text(fh.read()))
    if name == "remote":
        raise ValueError("remote painters exist only inside a session service")
    raise ValueError(f"unknown painter: {spec!r}")


def painter_pool(config: GameConfig, include_minimax: bool = True) -> list:
    """The deterministic adversaries (minimax joins when N is small
    enough for the exact solver)."""
    pool = [
        ConstantPainter(Color.RED),
        ConstantPainter(Color.BLUE),
        BalancedPainter(),
        GreedyMincliquePainter(),
    ]
    if include_minimax and config.N <= 6:
        pool.append(MinimaxPainter(config))
    return pool
