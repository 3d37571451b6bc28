"""Assembly of the self-contained analysis report.

The report embeds the level and every parameter that influenced it, so
re-running the engine on the embedded inputs reproduces it byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__
from .model import Diagnostic, Level, level_to_dict, validate_level
from .navgraph import NavGraph, build_graph
from .paths import PathMetric, PathReport, build_path_report
from .probability import DifficultyConfig, NoiseModel, SamplingConfig
from .trajectory import sample_polyline

DEFAULT_TRAJECTORY_POINTS = 50


@dataclass(frozen=True)
class AnalysisReport:
    level: Level
    noise: NoiseModel
    sampling: SamplingConfig
    difficulty: DifficultyConfig
    metric: PathMetric
    trajectory_points: int
    diagnostics: tuple[Diagnostic, ...]
    graph: NavGraph | None
    paths: PathReport | None

    @property
    def valid(self) -> bool:
        return not self.diagnostics

    def to_dict(self) -> dict:
        out = {
            "engine": {"name": "platlab", "version": __version__},
            "level": level_to_dict(self.level),
            "parameters": {
                "noise": {
                    "kind": self.noise.kind.value,
                    "reaction_time": self.noise.reaction_time,
                    "player_skill": self.noise.player_skill,
                },
                "sampling": {
                    "samples_per_trajectory": self.sampling.samples_per_trajectory,
                    "seed": self.sampling.seed,
                    "resample_cap": self.sampling.resample_cap,
                },
                "difficulty": {
                    "weight_moving": self.difficulty.weight_moving,
                    "weight_fading": self.difficulty.weight_fading,
                    "weight_spikes": self.difficulty.weight_spikes,
                },
                "metric": self.metric.value,
                "trajectory_points": self.trajectory_points,
            },
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }
        if self.graph is None or self.paths is None:
            return out
        out["graph"] = self.graph.to_dict()
        out["trajectories"] = [{
            "from": edge.from_id,
            "to": edge.to_id,
            "color": traj.approach.color_class,
            "approach": {
                "horizontal_takeoff_speed": traj.approach.horizontal_takeoff_speed,
                "running": traj.approach.running,
                "double_jump": (traj.approach.double_jump.value
                                if traj.approach.double_jump else None),
            },
            "points": [[x, y] for x, y in
                       sample_polyline(traj, self.trajectory_points)],
        } for edge in self.graph.edges for traj in edge.witness_trajectories]
        best = self.paths.best_index
        out["paths"] = {
            "completable": self.paths.completable,
            "truncated": self.paths.truncated,
            "level_success_probability": self.paths.level_success_probability,
            "metric": self.paths.metric.value,
            "best_index": best,
            "paths": [{
                "platforms": list(s.path.platform_ids),
                "probability": s.probability,
                "difficulty": s.difficulty,
                "spike_damage": s.spike_damage,
                "best": i == best,
            } for i, s in enumerate(self.paths.paths)],
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def analyze_level(level: Level,
                  noise: NoiseModel | None = None,
                  sampling: SamplingConfig | None = None,
                  difficulty: DifficultyConfig | None = None,
                  metric: PathMetric = PathMetric.DIFFICULTY,
                  trajectory_points: int = DEFAULT_TRAJECTORY_POINTS) -> AnalysisReport:
    """Run the full pipeline: validate, build the graph, enumerate paths.

    A level with validation diagnostics gets a report carrying only the
    diagnostics (graph and paths are None).
    """
    noise = noise or NoiseModel()
    sampling = sampling or SamplingConfig()
    difficulty = difficulty or DifficultyConfig()
    diagnostics = tuple(validate_level(level))
    if diagnostics:
        return AnalysisReport(level, noise, sampling, difficulty, metric,
                              trajectory_points, diagnostics, None, None)
    graph = build_graph(level, noise, sampling, difficulty)
    paths = build_path_report(graph, level, metric)
    return AnalysisReport(level, noise, sampling, difficulty, metric,
                          trajectory_points, diagnostics, graph, paths)
