"""Directed level-navigation graph: platforms as nodes, feasible jumps as edges."""

from __future__ import annotations

from dataclasses import dataclass

from .model import Level, MotionAxis, Platform, PlatformKind
from .probability import (
    DifficultyConfig,
    EdgeMetrics,
    NoiseModel,
    SamplingConfig,
    estimate_edge,
)
from .trajectory import JumpType


@dataclass(frozen=True)
class Edge:
    from_id: str
    to_id: str
    jump_type: JumpType
    difficulty: float
    probability: float
    metrics: EdgeMetrics

    @property
    def witness_trajectories(self):
        return self.metrics.witnesses


@dataclass(frozen=True)
class NavGraph:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]

    def edges_from(self, node: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.from_id == node)

    def edge(self, from_id: str, to_id: str) -> Edge | None:
        for e in self.edges:
            if e.from_id == from_id and e.to_id == to_id:
                return e
        return None

    def to_dict(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "edges": [{
                "from": e.from_id,
                "to": e.to_id,
                "jump_type": e.jump_type.value,
                "difficulty": e.difficulty,
                "probability": e.probability,
            } for e in self.edges],
        }


def discretize_dynamic(platform: Platform, height_step: float | None = None) -> list[float]:
    """Offsets spanning a dynamic platform's sweep, both extremes included.

    The step is the platform length (horizontal motion) or height_step
    (vertical motion, defaulting to the platform length as these surfaces
    have no height of their own).
    """
    motion = platform.motion
    if motion is None:
        raise ValueError(f"platform {platform.id!r} is not dynamic")
    if motion.amplitude <= 0:
        return [0.0]
    step = platform.length
    if motion.axis is MotionAxis.VERTICAL and height_step is not None:
        step = height_step
    offsets = []
    pos = 0.0
    while pos < motion.amplitude - 1e-9:
        offsets.append(pos)
        pos += step
    offsets.append(motion.amplitude)
    return offsets


def build_graph(level: Level, noise: NoiseModel, sampling: SamplingConfig,
                difficulty: DifficultyConfig | None = None) -> NavGraph:
    """Evaluate every ordered platform pair and keep the feasible jumps.

    Deterministic for a fixed sampling seed: every pair gets its own
    substream, and edges are emitted sorted by (from, to). For a dynamic
    start platform the metrics come from its lowest-difficulty discretized
    position (dynamic targets are averaged inside estimate_edge).
    """
    difficulty = difficulty or DifficultyConfig()
    edges: list[Edge] = []
    for start in level.platforms:
        for target in level.platforms:
            if start.id == target.id:
                continue
            if start.kind is PlatformKind.DYNAMIC and start.motion is not None:
                candidates = [
                    estimate_edge(start.at_offset(off), target, None, noise,
                                  sampling, difficulty, level.movement)
                    for off in discretize_dynamic(start)
                ]
                best = min(range(len(candidates)),
                           key=lambda i: (candidates[i].difficulty, i))
                metrics = candidates[best]
            else:
                metrics = estimate_edge(start, target, None, noise, sampling,
                                        difficulty, level.movement)
            if metrics.feasible:
                edges.append(Edge(start.id, target.id, metrics.jump_type,
                                  metrics.difficulty, metrics.probability,
                                  metrics))
    edges.sort(key=lambda e: (e.from_id, e.to_id))
    return NavGraph(tuple(p.id for p in level.platforms), tuple(edges))
