"""Start-to-exit path enumeration and whole-level metrics.

Path success probability is the product of its edge probabilities; path
difficulty is the sum of its edge difficulties (jumps are treated as
independent, and difficulty is agnostic to where in the path a jump sits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import Level, PlatformRole
from .navgraph import Edge, NavGraph

#: Enumeration stops after this many paths and sets the truncated flag.
MAX_PATHS = 10 ** 6


class PathMetric(str, Enum):
    DIFFICULTY = "difficulty"
    PROBABILITY = "probability"


@dataclass(frozen=True)
class Path:
    edges: tuple[Edge, ...]

    @property
    def platform_ids(self) -> tuple[str, ...]:
        if not self.edges:
            return ()
        return (self.edges[0].from_id,) + tuple(e.to_id for e in self.edges)


@dataclass(frozen=True)
class PathSummary:
    path: Path
    probability: float
    difficulty: float
    spike_damage: int


@dataclass(frozen=True)
class PathReport:
    paths: tuple[PathSummary, ...]
    best_index: int | None
    level_success_probability: float
    metric: PathMetric
    truncated: bool = False

    @property
    def completable(self) -> bool:
        return bool(self.paths)


def path_probability(path: Path) -> float:
    """Product of edge success probabilities (empty product is 1)."""
    return math.prod(e.probability for e in path.edges)


def path_difficulty(path: Path) -> float:
    """Sum of edge difficulties (empty sum is 0)."""
    return sum(e.difficulty for e in path.edges)


def enumerate_paths(graph: NavGraph, level: Level,
                    max_paths: int = MAX_PATHS) -> tuple[list[Path], bool]:
    """All acyclic start->exit paths survivable on spike damage alone.

    A path ends at the first exit platform it reaches and never revisits a
    platform; it is kept when its cumulative spike damage stays below the
    character's health. Paths come out in lexicographic platform-id order.
    Returns (paths, truncated).
    """
    start = level.start
    if start is None:
        return [], False
    by_id = {p.id: p for p in level.platforms}
    adjacency: dict[str, list[Edge]] = {}
    for edge in graph.edges:
        adjacency.setdefault(edge.from_id, []).append(edge)
    for edges in adjacency.values():
        edges.sort(key=lambda e: e.to_id)

    health = level.character.health
    spike_damage = level.character.spike_damage
    paths: list[Path] = []
    truncated = False
    stack: list[Edge] = []
    visited = {start.id}

    def walk(node: str, damage: int) -> bool:
        nonlocal truncated
        for edge in adjacency.get(node, ()):  # sorted: lexicographic output
            nxt = edge.to_id
            if nxt in visited:
                continue
            arrival = by_id[nxt]
            new_damage = damage + (spike_damage if arrival.spikes else 0)
            if new_damage >= health:
                continue
            stack.append(edge)
            if arrival.role is PlatformRole.EXIT:
                paths.append(Path(tuple(stack)))
                if len(paths) >= max_paths:
                    truncated = True
                    stack.pop()
                    return False
            else:
                visited.add(nxt)
                more = walk(nxt, new_damage)
                visited.discard(nxt)
                if not more:
                    stack.pop()
                    return False
            stack.pop()
        return True

    walk(start.id, 0)
    return paths, truncated


def _rank(summary: PathSummary, metric: PathMetric) -> tuple:
    key = summary.difficulty if metric is PathMetric.DIFFICULTY \
        else -summary.probability
    return (key, len(summary.path.edges), summary.path.platform_ids)


def min_difficulty_path(report: "PathReport") -> PathSummary | None:
    """The best path under the report's metric, or None when not completable."""
    if report.best_index is None:
        return None
    return report.paths[report.best_index]


def build_path_report(graph: NavGraph, level: Level,
                      metric: PathMetric = PathMetric.DIFFICULTY,
                      max_paths: int = MAX_PATHS) -> PathReport:
    """Enumerate paths and attach per-path and whole-level metrics.

    The best path minimizes difficulty (or maximizes probability when that
    metric is selected); ties break on fewer edges, then platform-id order.
    Level success probability is the best probability over all paths.
    """
    spike = level.character.spike_damage
    by_id = {p.id: p for p in level.platforms}
    raw_paths, truncated = enumerate_paths(graph, level, max_paths)
    summaries = []
    for path in raw_paths:
        damage = sum(spike for e in path.edges if by_id[e.to_id].spikes)
        summaries.append(PathSummary(path, path_probability(path),
                                     path_difficulty(path), damage))
    best = None
    if summaries:
        best = min(range(len(summaries)),
                   key=lambda i: _rank(summaries[i], metric))
    level_p = max((s.probability for s in summaries), default=0.0)
    return PathReport(tuple(summaries), best, level_p, metric, truncated)
