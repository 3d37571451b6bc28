"""Engine defaults, optionally overridden by a PLATLAB_DEFAULTS config file."""

from __future__ import annotations

import json
import os
from typing import Any

from .paths import PathMetric
from .probability import DifficultyConfig, NoiseKind, NoiseModel, SamplingConfig
from .report import DEFAULT_TRAJECTORY_POINTS

ENV_VAR = "PLATLAB_DEFAULTS"

BUILTIN_DEFAULTS: dict[str, Any] = {
    "noise": {"kind": "gauss-r", "reaction_time": 0.1, "player_skill": 1.0},
    "sampling": {"samples_per_trajectory": 1000, "seed": 42, "resample_cap": 100},
    "difficulty": {"weight_moving": 0.5, "weight_fading": 0.5,
                   "weight_spikes": 0.25},
    "metric": "difficulty",
    "trajectory_points": DEFAULT_TRAJECTORY_POINTS,
}


def load_defaults() -> dict[str, Any]:
    """Built-in defaults, deep-merged with the PLATLAB_DEFAULTS file if set."""
    merged = json.loads(json.dumps(BUILTIN_DEFAULTS))
    path = os.environ.get(ENV_VAR)
    if not path:
        return merged
    with open(path, "r", encoding="utf-8") as fh:
        overrides = json.load(fh)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key].update(value)
        else:
            merged[key] = value
    return merged


def noise_from(cfg: dict[str, Any]) -> NoiseModel:
    return NoiseModel(NoiseKind(cfg["kind"]), float(cfg["reaction_time"]),
                      float(cfg["player_skill"]))


def sampling_from(cfg: dict[str, Any]) -> SamplingConfig:
    return SamplingConfig(int(cfg["samples_per_trajectory"]), int(cfg["seed"]),
                          int(cfg["resample_cap"]))


def difficulty_from(cfg: dict[str, Any]) -> DifficultyConfig:
    return DifficultyConfig(float(cfg["weight_moving"]),
                            float(cfg["weight_fading"]),
                            float(cfg["weight_spikes"]))


def metric_from(cfg: dict[str, Any]) -> PathMetric:
    return PathMetric(cfg["metric"])
