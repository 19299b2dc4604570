"""The (m,n;N) game state machine.

Builder proposes an unbuilt pair each turn, Painter answers with a
color, and the game ends the moment a red m-clique or blue n-clique
appears (detected incrementally through the edge just built) or when
every pair is built without one (stalemate, only possible on vertex
counts below the Ramsey number).

Savings are counted against the full C(N,2) budget: the pairs still
unbuilt when the game ends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol, Sequence

from .graph import (
    BichromaticGraph,
    Color,
    find_mono_clique,
    incremental_clique_check,
    normalize_pair,
    pair_count,
)


class EngineError(Exception):
    pass


class IllegalBuilderMoveError(EngineError):
    """Builder policy returned a built pair, self-loop, or bad vertex."""


class PolicyExhaustedError(EngineError):
    """Builder policy yielded nothing while unbuilt pairs remain."""


class TranscriptError(EngineError):
    """Transcript text or replay is inconsistent."""


@dataclass(frozen=True)
class GameConfig:
    """Targets and board size: red K_m vs blue K_n on N vertices."""

    m: int
    n: int
    N: int

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError("clique targets must be at least 2")
        if self.N < 2:
            raise ValueError("vertex count must be at least 2")

    def target(self, color: Color) -> int:
        return self.m if color is Color.RED else self.n

    @property
    def total_pairs(self) -> int:
        return pair_count(self.N)


class GameStatus(Enum):
    IN_PROGRESS = "in_progress"
    BUILDER_WON = "builder_won"
    STALEMATE = "stalemate"


@dataclass
class GameState:
    """The evolving position of an (m,n;N)-game."""

    config: GameConfig
    graph: BichromaticGraph
    moves_made: int = 0
    status: GameStatus = GameStatus.IN_PROGRESS
    witness_color: Optional[Color] = None
    witness_clique: Optional[frozenset[int]] = None
    seed_built: int = 0


class BuilderPolicy(Protocol):
    name: str

    def next_pair(self, state: GameState) -> Optional[tuple[int, int]]:
        """The next pair to build, or None when the policy is done."""
        ...


class PainterPolicy(Protocol):
    name: str

    def choose(self, state: GameState, pair: tuple[int, int]) -> Color:
        """Color for the pair the builder just proposed."""
        ...


@dataclass
class PhaseEntry:
    name: str
    moves: int
    witness: dict


@dataclass
class StrategyReport:
    """Move accounting for one finished game."""

    moves_used: int
    savings: int
    phase_log: list[PhaseEntry] = field(default_factory=list)


@dataclass(frozen=True)
class Transcript:
    """Replayable record of one game: seed, ordered moves, outcome."""

    config: GameConfig
    seed_text: Optional[str]
    moves: tuple[tuple[int, int, Color], ...]
    status: GameStatus
    witness_color: Optional[Color]
    moves_made: int
    savings: int

    def __post_init__(self):
        pairs = [normalize_pair((u, v)) for u, v, _ in self.moves]
        if len(set(pairs)) != len(pairs):
            raise TranscriptError("transcript repeats a pair")

    @property
    def result_token(self) -> str:
        if self.status is GameStatus.STALEMATE:
            return "STALEMATE"
        if self.status is not GameStatus.BUILDER_WON:
            raise TranscriptError("transcripts exist only for finished games")
        return "RED_WIN" if self.witness_color is Color.RED else "BLUE_WIN"

    def to_text(self) -> str:
        cfg = self.config
        lines = [f"{cfg.m} {cfg.n} {cfg.N}"]
        if self.seed_text:
            seed_lines = [ln for ln in self.seed_text.splitlines() if ln.strip()]
            edge_lines = seed_lines[1:]  # drop the vertex-count line
            lines.append(f"SEED {len(edge_lines)}")
            lines.extend(edge_lines)
        lines.extend(f"{u} {v} {c}" for u, v, c in self.moves)
        lines.append(
            f"RESULT {self.result_token} moves={self.moves_made} savings={self.savings}"
        )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Transcript":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) < 2:
            raise TranscriptError("transcript too short")
        try:
            m, n, N = (int(x) for x in lines[0].split())
        except ValueError as exc:
            raise TranscriptError(f"bad header: {lines[0]!r}") from exc
        config = GameConfig(m, n, N)
        pos = 1
        seed_text = None
        if lines[pos].startswith("SEED "):
            count = int(lines[pos].split()[1])
            seed_lines = lines[pos + 1 : pos + 1 + count]
            if len(seed_lines) != count:
                raise TranscriptError("seed block truncated")
            seed_text = "\n".join([str(N), *seed_lines]) + "\n"
            pos += 1 + count
        moves: list[tuple[int, int, Color]] = []
        result_line = None
        for ln in lines[pos:]:
            if ln.startswith("RESULT "):
                result_line = ln
                break
            parts = ln.split()
            if len(parts) != 3:
                raise TranscriptError(f"bad move line: {ln!r}")
            moves.append((int(parts[0]), int(parts[1]), Color.from_letter(parts[2])))
        if result_line is None:
            raise TranscriptError("missing RESULT line")
        tokens = result_line.split()
        outcome = tokens[1]
        fields = dict(tok.split("=") for tok in tokens[2:])
        if outcome == "STALEMATE":
            status, wcolor = GameStatus.STALEMATE, None
        elif outcome == "RED_WIN":
            status, wcolor = GameStatus.BUILDER_WON, Color.RED
        elif outcome == "BLUE_WIN":
            status, wcolor = GameStatus.BUILDER_WON, Color.BLUE
        else:
            raise TranscriptError(f"bad result token: {outcome!r}")
        return cls(
            config,
            seed_text,
            tuple(moves),
            status,
            wcolor,
            int(fields["moves"]),
            int(fields["savings"]),
        )


def initial_state(config: GameConfig, seed_graph: Optional[BichromaticGraph] = None) -> GameState:
    """Fresh game state, scanning any seed graph for an existing win."""
    if seed_graph is None:
        graph = BichromaticGraph(config.N)
    else:
        if seed_graph.n != config.N:
            raise ValueError("seed graph vertex count differs from config")
        graph = seed_graph.copy()
    state = GameState(config, graph, seed_built=graph.built_count)
    for color in (Color.RED, Color.BLUE):
        clique = find_mono_clique(graph, color, config.target(color))
        if clique is not None:
            state.status = GameStatus.BUILDER_WON
            state.witness_color = color
            state.witness_clique = clique
            return state
    if graph.is_complete():
        state.status = GameStatus.STALEMATE
    return state


def apply_move(state: GameState, u: int, v: int, color: Color) -> GameState:
    """Build one edge and update status via the incremental clique check."""
    if state.status is not GameStatus.IN_PROGRESS:
        raise EngineError("game already over")
    state.graph.build_edge(u, v, color)
    state.moves_made += 1
    clique = incremental_clique_check(state.graph, (u, v), color, state.config.target(color))
    if clique is not None:
        state.status = GameStatus.BUILDER_WON
        state.witness_color = color
        state.witness_clique = clique
    elif state.graph.is_complete():
        state.status = GameStatus.STALEMATE
    return state


def savings_of_state(state: GameState) -> int:
    return state.config.total_pairs - state.graph.built_count


def play(
    config: GameConfig,
    builder: BuilderPolicy,
    painter: PainterPolicy,
    seed_graph: Optional[BichromaticGraph] = None,
) -> tuple[Transcript, StrategyReport]:
    """Run one game to termination.

    Raises IllegalBuilderMoveError on a built pair/self-loop from the
    builder and PolicyExhaustedError if the builder stops early.
    """
    state = initial_state(config, seed_graph)
    seed_text = seed_graph.to_text() if seed_graph is not None and seed_graph.built_count else None
    moves: list[tuple[int, int, Color]] = []
    while state.status is GameStatus.IN_PROGRESS:
        pair = builder.next_pair(state)
        if pair is None:
            raise PolicyExhaustedError(
                f"builder {builder.name!r} stopped with "
                f"{state.graph.unbuilt_count} unbuilt pairs left"
            )
        u, v = pair
        if u == v or not (0 <= u < config.N and 0 <= v < config.N):
            raise IllegalBuilderMoveError(f"builder {builder.name!r} proposed ({u},{v})")
        u, v = normalize_pair((u, v))
        if not state.graph.is_unbuilt(u, v):
            raise IllegalBuilderMoveError(
                f"builder {builder.name!r} proposed already-built pair ({u},{v})"
            )
        color = painter.choose(state, (u, v))
        apply_move(state, u, v, color)
        moves.append((u, v, color))
    savings = savings_of_state(state)
    transcript = Transcript(
        config,
        seed_text,
        tuple(moves),
        state.status,
        state.witness_color,
        state.moves_made,
        savings,
    )
    report = StrategyReport(
        moves_used=state.moves_made,
        savings=savings,
        phase_log=list(getattr(builder, "phase_log", [])),
    )
    return transcript, report


def replay(transcript: Transcript) -> GameState:
    """Re-run a transcript's moves and check they reproduce its outcome."""
    seed = (
        BichromaticGraph.from_text(transcript.seed_text)
        if transcript.seed_text
        else None
    )
    state = initial_state(transcript.config, seed)
    for u, v, color in transcript.moves:
        if state.status is not GameStatus.IN_PROGRESS:
            raise TranscriptError("moves continue past the terminal state")
        apply_move(state, u, v, color)
    if state.status is not transcript.status:
        raise TranscriptError(
            f"replay ended {state.status.value}, transcript says {transcript.status.value}"
        )
    if state.moves_made != transcript.moves_made or savings_of_state(state) != transcript.savings:
        raise TranscriptError("replay move/savings accounting differs")
    if state.witness_color is not transcript.witness_color:
        raise TranscriptError("replay witness color differs")
    return state


def savings_lower_bound_check(report: StrategyReport, s: int, t: int) -> bool:
    """True iff the report's savings meet the two-family floor min(s, t)."""
    return report.savings >= min(s, t)
