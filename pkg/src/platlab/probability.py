"""Noise models, the jump difficulty coefficient, and per-edge estimates.

Success probability of an edge is estimated by Monte Carlo: each canonical
trajectory gets a set of noisy variants whose takeoff position (and second
jump position, for double jumps) is perturbed around the optimal point.
Draws that leave the starting platform count as failures, except under the
resampling Gaussian which redraws them.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .model import MovementConfig, Platform, PlatformKind, JumpModel
from .trajectory import (
    JumpTrajectory,
    JumpType,
    classify_jump,
    double_jump_air_speed,
    generate_trajectories,
    is_reachable,
    sampled_outcome,
    shifted_reaches,
)

#: Keeps standing-still jumps noisy; with zero approach speed the takeoff
#: position would otherwise be exact and trivial jumps could never fail.
SPEED_FLOOR = 1.0

#: Marker for a takeoff draw that fell off the starting platform.
OFF_PLATFORM = math.nan


class NoiseKind(str, Enum):
    UNIFORM = "uniform"
    GAUSSIAN_NO_RESAMPLE = "gauss-nr"
    GAUSSIAN_RESAMPLE = "gauss-r"


@dataclass(frozen=True)
class NoiseModel:
    """Player imprecision model: reaction time Rt and skill Ps."""

    kind: NoiseKind = NoiseKind.GAUSSIAN_RESAMPLE
    reaction_time: float = 0.1
    player_skill: float = 1.0

    def __post_init__(self):
        if not 0.01 <= self.reaction_time <= 1.0:
            raise ValueError("reaction_time must lie in [0.01, 1]")
        if not 1.0 <= self.player_skill <= 50.0:
            raise ValueError("player_skill must lie in [1, 50]")


@dataclass(frozen=True)
class SamplingConfig:
    samples_per_trajectory: int = 1000
    seed: int = 42
    resample_cap: int = 100

    def __post_init__(self):
        if self.samples_per_trajectory < 1:
            raise ValueError("samples_per_trajectory must be >= 1")
        if self.resample_cap < 1:
            raise ValueError("resample_cap must be >= 1")


@dataclass(frozen=True)
class DifficultyConfig:
    """Weights of the platform-hazard coefficient c >= 1."""

    weight_moving: float = 0.5
    weight_fading: float = 0.5
    weight_spikes: float = 0.25


@dataclass(frozen=True)
class ApproachStats:
    """Per-trajectory outcome within an edge estimate."""

    horizontal_takeoff_speed: float
    running: bool
    double_jump: str | None
    color_class: str
    optimal_reached: bool
    success_fraction: float


@dataclass(frozen=True)
class EdgeMetrics:
    probability: float
    difficulty: float
    raw_success_fraction: float
    coefficient: float
    per_approach: tuple[ApproachStats, ...]
    jump_type: JumpType
    witnesses: tuple[JumpTrajectory, ...] = ()
    feasible: bool = True


def noise_sigma(noise: NoiseModel, approach_speed: float) -> float:
    """Positional noise accumulated over one reaction interval.

    Grows with reaction time and approach speed, shrinks with skill.
    """
    return noise.reaction_time * (approach_speed + SPEED_FLOOR) / noise.player_skill


def _draw_positions(kind: NoiseKind, center: float, lo: float, hi: float,
                    sigma: float, n: int, rng: np.random.Generator,
                    resample_cap: int) -> np.ndarray:
    """n draws around center; values outside [lo, hi] become NaN markers.

    The uniform interval width is variance-matched to the Gaussian
    (delta = 2*sqrt(3)*sigma) so Rt and Ps mean the same across kinds.
    """
    if kind is NoiseKind.UNIFORM:
        half = math.sqrt(3.0) * sigma
        draws = rng.uniform(center - half, center + half, n)
    else:
        draws = rng.normal(center, sigma, n)
    if kind is NoiseKind.GAUSSIAN_RESAMPLE:
        off = (draws < lo) | (draws > hi)
        tries = 0
        while off.any() and tries < resample_cap:
            draws[off] = rng.normal(center, sigma, int(off.sum()))
            off = (draws < lo) | (draws > hi)
            tries += 1
        draws[off] = OFF_PLATFORM
        return draws
    draws[(draws < lo) | (draws > hi)] = OFF_PLATFORM
    return draws


def sample_takeoffs(noise: NoiseModel, optimal_x: float, platform: Platform,
                    sigma: float, n: int, rng: np.random.Generator,
                    resample_cap: int = 100) -> np.ndarray:
    """Noisy takeoff positions on the platform; NaN marks off-platform draws."""
    return _draw_positions(noise.kind, optimal_x, platform.surface_left,
                           platform.surface_right, sigma, n, rng, resample_cap)


def difficulty_coefficient(start: Platform, target: Platform,
                           config: DifficultyConfig,
                           movement: MovementConfig) -> float:
    """Hazard multiplier: 1 plus motion, fading, and spike contributions."""
    c = 1.0
    for p in (start, target):
        if p.kind is PlatformKind.DYNAMIC and p.motion is not None:
            c += config.weight_moving * (p.motion.speed / movement.run_speed)
    if start.kind is PlatformKind.FADING:
        c += config.weight_fading
    if target.spikes:
        c += config.weight_spikes
    return c


def edge_rng(seed: int, from_id: str, to_id: str) -> np.random.Generator:
    """Deterministic per-edge stream derived from the seed and platform ids."""
    def h(s: str) -> int:
        return int.from_bytes(hashlib.blake2b(s.encode(), digest_size=8).digest(),
                              "big")
    return np.random.default_rng(
        np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, h(from_id), h(to_id)]))


def _sample_trajectory_successes(
        traj: JumpTrajectory, start: Platform, target: Platform,
        noise: NoiseModel, sampling: SamplingConfig,
        movement: MovementConfig, rng: np.random.Generator) -> int:
    """Count successful noisy variants of one reachable canonical trajectory."""
    n = sampling.samples_per_trajectory
    sigma1 = noise_sigma(noise, traj.approach.horizontal_takeoff_speed)
    x_opt = traj.plan.takeoff_x
    draws = sample_takeoffs(noise, x_opt, start, sigma1, n, rng,
                            sampling.resample_cap)
    dynamic_release = movement.jump_model is JumpModel.DYNAMIC
    has_dj = traj.plan.double_jump is not None
    if not has_dj and not dynamic_release:
        return sum(1 for d in draws
                   if not math.isnan(d) and shifted_reaches(traj, target, d - x_opt))

    release_scale = noise.reaction_time / noise.player_skill
    sigma2 = noise_sigma(noise, double_jump_air_speed(traj)) if has_dj else 0.0
    successes = 0
    for d in draws:
        if math.isnan(d):
            continue
        eps1 = d - x_opt
        rel1 = rng.normal(0.0, release_scale) if dynamic_release else None
        rel2 = (rng.normal(0.0, release_scale)
                if dynamic_release and has_dj else None)
        if not has_dj:
            if sampled_outcome(traj, movement, target, eps1,
                               release1=rel1):
                successes += 1
            continue
        eps2 = rng.normal(0.0, sigma2)
        outcome = sampled_outcome(traj, movement, target, eps1, eps2, rel1, rel2)
        if noise.kind is NoiseKind.GAUSSIAN_RESAMPLE:
            tries = 0
            while outcome is None and tries < sampling.resample_cap:
                eps2 = rng.normal(0.0, sigma2)
                outcome = sampled_outcome(traj, movement, target, eps1, eps2,
                                          rel1, rel2)
                tries += 1
        if outcome:
            successes += 1
    return successes


def _estimate_at_positions(start: Platform, target: Platform,
                           trajectories: list[JumpTrajectory],
                           noise: NoiseModel, sampling: SamplingConfig,
                           config: DifficultyConfig, movement: MovementConfig,
                           rng: np.random.Generator) -> EdgeMetrics:
    """Estimate for one fixed placement of both platforms."""
    c = difficulty_coefficient(start, target, config, movement)
    if not trajectories:
        return EdgeMetrics(0.0, c, 0.0, c, (), classify_jump(start, target),
                           (), feasible=False)
    n = sampling.samples_per_trajectory
    total = 0
    optimal = 0
    stats: list[ApproachStats] = []
    witnesses: list[JumpTrajectory] = []
    for traj in trajectories:
        reached = is_reachable(traj, target)
        succ = 0
        if reached:
            optimal += 1
            witnesses.append(traj)
            succ = _sample_trajectory_successes(traj, start, target, noise,
                                                sampling, movement, rng)
        # an unsuccessful optimal trajectory counts its whole sample set
        # as failures without generating it
        a = traj.approach
        stats.append(ApproachStats(a.horizontal_takeoff_speed, a.running,
                                   a.double_jump.value if a.double_jump else None,
                                   a.color_class, reached, succ / n))
        total += succ
    raw = total / (n * len(trajectories))
    osf = optimal / len(trajectories)
    return EdgeMetrics(min(1.0, raw / c), c * (1.0 - osf), raw, c,
                       tuple(stats), classify_jump(start, target),
                       tuple(witnesses), feasible=optimal > 0)


def estimate_edge(start: Platform, target: Platform,
                  trajectories: list[JumpTrajectory] | None,
                  noise: NoiseModel, sampling: SamplingConfig,
                  config: DifficultyConfig,
                  movement: MovementConfig) -> EdgeMetrics:
    """Success probability and difficulty of the start->target jump.

    For a dynamic target the probability is the mean of the estimates at
    the optimal (lowest difficulty) discretized target position and its
    adjacent positions; all other fields come from the optimal position.
    """
    rng = edge_rng(sampling.seed, start.id, target.id)
    if target.kind is PlatformKind.DYNAMIC and target.motion is not None:
        from .navgraph import discretize_dynamic

        evals: list[EdgeMetrics] = []
        for offset in discretize_dynamic(target):
            placed = target.at_offset(offset)
            trajs = generate_trajectories(start, placed, movement)
            evals.append(_estimate_at_positions(start, placed, trajs, noise,
                                                sampling, config, movement, rng))
        best_i = min(range(len(evals)), key=lambda i: (evals[i].difficulty, i))
        adjacent = evals[max(0, best_i - 1):best_i + 2]
        best = evals[best_i]
        p = sum(e.probability for e in adjacent) / len(adjacent)
        return EdgeMetrics(p, best.difficulty, best.raw_success_fraction,
                           best.coefficient, best.per_approach, best.jump_type,
                           best.witnesses, best.feasible)
    if trajectories is None:
        trajectories = generate_trajectories(start, target, movement)
    return _estimate_at_positions(start, target, trajectories, noise, sampling,
                                  config, movement, rng)
