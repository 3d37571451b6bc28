"""Human jump-trial ingestion and model-versus-data comparison.

Screens are two-platform levels (one start, one exit). Empirical success
rates per screen are compared against engine estimates with the mean
absolute error, swept over noise kinds and (reaction time, skill) grids.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
from dataclasses import dataclass

import numpy as np

from .model import Level, Platform, PlatformKind, PlatformRole
from .navgraph import discretize_dynamic
from .probability import (
    DifficultyConfig,
    NoiseModel,
    NoiseKind,
    SamplingConfig,
    edge_rng,
    estimate_edge,
    noise_sigma,
    sample_takeoffs,
)
from .trajectory import (
    JumpType,
    classify_jump,
    double_jump_air_speed,
    generate_trajectories,
    is_reachable,
    sampled_landing,
    sampled_outcome,
)

logger = logging.getLogger(__name__)

CSV_HEADER = ["screen_id", "takeoff_x", "takeoff_y", "landing_x", "landing_y",
              "takeoff_vx", "success"]


class TrialFormatError(ValueError):
    """Raised when a trial log is malformed; carries offending row numbers."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


@dataclass(frozen=True)
class TrialRecord:
    screen_id: str
    takeoff: tuple[float, float]
    landing: tuple[float, float] | None
    takeoff_vx: float
    success: bool
    trajectory: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.landing is not None and not self.success:
            raise ValueError("landing coordinates present on a failed trial")


@dataclass(frozen=True)
class ScreenSummary:
    screen_id: str
    trajectory_type: JumpType
    jumps: int
    successes: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.jumps


@dataclass(frozen=True)
class GridCell:
    noise_kind: NoiseKind
    reaction_time: float
    player_skill: float
    mae: float
    stderr: float


@dataclass(frozen=True)
class MaeGridResult:
    cells: tuple[GridCell, ...]

    @property
    def best(self) -> GridCell:
        return min(self.cells, key=lambda c: c.mae)

    def cell(self, kind: NoiseKind, rt: float, ps: float) -> GridCell:
        for c in self.cells:
            if c.noise_kind is kind and c.reaction_time == rt and c.player_skill == ps:
                return c
        raise KeyError((kind, rt, ps))

    def to_dict(self) -> dict:
        return {
            "cells": [{
                "noise": c.noise_kind.value,
                "rt": c.reaction_time,
                "ps": c.player_skill,
                "mae": c.mae,
                "stderr": c.stderr,
            } for c in self.cells],
            "best": {
                "noise": self.best.noise_kind.value,
                "rt": self.best.reaction_time,
                "ps": self.best.player_skill,
                "mae": self.best.mae,
                "stderr": self.best.stderr,
            },
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out)
        w.writerow(["noise", "rt", "ps", "mae", "stderr"])
        for c in self.cells:
            w.writerow([c.noise_kind.value, c.reaction_time, c.player_skill,
                        f"{c.mae:.6f}", f"{c.stderr:.6f}"])
        return out.getvalue()


# --- trial log ingestion -----------------------------------------------------

def _parse_bool(raw: str, row: int, problems: list[str]) -> bool:
    if raw == "true":
        return True
    if raw == "false":
        return False
    problems.append(f"row {row}: success must be 'true' or 'false', got {raw!r}")
    return False


def parse_trials_csv(text: str) -> list[TrialRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]
    if not rows:
        logger.warning("trial log is empty")
        return []
    if rows[0] != CSV_HEADER:
        raise TrialFormatError(
            [f"row 1: expected header {','.join(CSV_HEADER)}"])
    problems: list[str] = []
    trials: list[TrialRecord] = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(CSV_HEADER):
            problems.append(f"row {i}: expected {len(CSV_HEADER)} fields, got {len(row)}")
            continue
        sid, tx, ty, lx, ly, vx, succ_raw = row
        try:
            takeoff = (float(tx), float(ty))
            takeoff_vx = float(vx)
        except ValueError:
            problems.append(f"row {i}: non-numeric takeoff fields")
            continue
        success = _parse_bool(succ_raw.strip(), i, problems)
        landing = None
        if lx.strip() or ly.strip():
            try:
                landing = (float(lx), float(ly))
            except ValueError:
                problems.append(f"row {i}: non-numeric landing fields")
                continue
            if not success:
                problems.append(f"row {i}: landing present but success=false")
                continue
        trials.append(TrialRecord(sid, takeoff, landing, takeoff_vx, success))
    if problems:
        raise TrialFormatError(problems)
    return trials


def parse_trials_json(text: str) -> list[TrialRecord]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise TrialFormatError(["top level must be a JSON array of trials"])
    if not data:
        logger.warning("trial log is empty")
        return []
    problems: list[str] = []
    trials: list[TrialRecord] = []
    for i, item in enumerate(data):
        try:
            landing = item.get("landing")
            trajectory = item.get("trajectory")
            trials.append(TrialRecord(
                screen_id=str(item["screen_id"]),
                takeoff=(float(item["takeoff"][0]), float(item["takeoff"][1])),
                landing=None if landing is None else (float(landing[0]),
                                                      float(landing[1])),
                takeoff_vx=float(item["takeoff_vx"]),
                success=bool(item["success"]),
                trajectory=None if trajectory is None else tuple(
                    (float(p[0]), float(p[1])) for p in trajectory),
            ))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            problems.append(f"trial {i}: {exc}")
    if problems:
        raise TrialFormatError(problems)
    return trials


def load_trials(source, screens: dict[str, Level] | None = None) -> list[TrialRecord]:
    """Read a trial log from a path or file-like object (CSV or JSON).

    When ``screens`` is given, trials naming unknown screens raise an error
    listing the offenders.
    """
    if hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
        source = str(source)
    stripped = text.lstrip()
    if (isinstance(source, str) and source.endswith(".json")) or \
            stripped.startswith("["):
        trials = parse_trials_json(text)
    else:
        trials = parse_trials_csv(text)
    if screens is not None:
        unknown = sorted({t.screen_id for t in trials} - set(screens))
        if unknown:
            raise TrialFormatError(
                [f"unknown screen ids: {', '.join(unknown)}"])
    return trials


def dump_trials_csv(trials: list[TrialRecord]) -> str:
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(CSV_HEADER)
    for t in trials:
        lx, ly = ("", "") if t.landing is None else (repr(t.landing[0]),
                                                     repr(t.landing[1]))
        w.writerow([t.screen_id, repr(t.takeoff[0]), repr(t.takeoff[1]),
                    lx, ly, repr(t.takeoff_vx),
                    "true" if t.success else "false"])
    return out.getvalue()


# --- summaries and error metrics ---------------------------------------------

def _screen_pair(level: Level) -> tuple[Platform, Platform]:
    start = level.start
    exits = level.exits
    if start is None or not exits:
        raise ValueError(f"screen {level.name!r} needs a start and an exit")
    return start, exits[0]


def summarize(trials: list[TrialRecord],
              screens: dict[str, Level]) -> list[ScreenSummary]:
    """Per-screen jump counts and success rates, sorted by screen id."""
    if not trials:
        raise ValueError("no trials to summarize")
    counts: dict[str, list[int]] = {}
    for t in trials:
        c = counts.setdefault(t.screen_id, [0, 0])
        c[0] += 1
        c[1] += int(t.success)
    out = []
    for sid in sorted(counts, key=_screen_sort_key):
        start, exit_ = _screen_pair(screens[sid])
        jumps, successes = counts[sid]
        out.append(ScreenSummary(sid, classify_jump(start, exit_), jumps,
                                 successes))
    return out


def _screen_sort_key(sid: str):
    return (0, int(sid)) if sid.isdigit() else (1, sid)


def mae(estimates: dict[str, float],
        empirical: dict[str, float]) -> tuple[float, float]:
    """Mean absolute error and its standard error across screens."""
    if set(estimates) != set(empirical):
        raise ValueError("estimate and empirical screen sets differ")
    if not estimates:
        raise ValueError("need at least one screen")
    errs = np.array([abs(estimates[k] - empirical[k]) for k in sorted(estimates)])
    stderr = float(errs.std(ddof=1) / math.sqrt(len(errs))) if len(errs) > 1 else 0.0
    return float(errs.mean()), stderr


def _best_start_offset(start: Platform, target: Platform, level: Level) -> float:
    """Discretized position of a dynamic start minimizing edge difficulty.

    Difficulty depends only on which optimal trajectories reach, so no
    sampling is needed here.
    """
    best_off, best_fail = 0.0, math.inf
    for off in discretize_dynamic(start):
        placed = start.at_offset(off)
        trajs = generate_trajectories(placed, target, level.movement)
        if not trajs:
            continue
        fails = sum(1 for t in trajs if not is_reachable(t, target)) / len(trajs)
        if fails < best_fail - 1e-12:
            best_off, best_fail = off, fails
    return best_off


def estimate_screen(level: Level, noise: NoiseModel, sampling: SamplingConfig,
                    difficulty: DifficultyConfig | None = None) -> float:
    """Engine estimate of the start->exit success probability of a screen."""
    difficulty = difficulty or DifficultyConfig()
    start, target = _screen_pair(level)
    if start.kind is PlatformKind.DYNAMIC and start.motion is not None:
        start = start.at_offset(_best_start_offset(start, target, level))
    return estimate_edge(start, target, None, noise, sampling, difficulty,
                         level.movement).probability


def mae_grid(screens: dict[str, Level], trials: list[TrialRecord],
             noise_kinds: list[NoiseKind], rt_values: list[float],
             ps_values: list[float], sampling: SamplingConfig,
             difficulty: DifficultyConfig | None = None) -> MaeGridResult:
    """MAE of engine estimates versus empirical rates over a parameter grid."""
    empirical = {s.screen_id: s.success_rate
                 for s in summarize(trials, screens)}
    missing = sorted(set(screens) - set(empirical))
    usable = {sid: screens[sid] for sid in screens if sid in empirical}
    if missing:
        logger.warning("screens with no trials are skipped: %s", ", ".join(missing))
    cells = []
    for kind in noise_kinds:
        for rt in rt_values:
            for ps in ps_values:
                noise = NoiseModel(kind, rt, ps)
                estimates = {sid: estimate_screen(lvl, noise, sampling, difficulty)
                             for sid, lvl in usable.items()}
                value, stderr = mae(estimates, empirical)
                cells.append(GridCell(kind, rt, ps, value, stderr))
    return MaeGridResult(tuple(cells))


# --- synthetic trials ---------------------------------------------------------

def synthesize_trials(screens: dict[str, Level], noise: NoiseModel,
                      trials_per_screen: int, seed: int,
                      resample_cap: int = 100) -> list[TrialRecord]:
    """Simulated jump logs drawn from the engine's own noise process.

    Attempts cycle through the canonical trajectories of each screen; the
    empirical rates converge on the engine's raw success fraction at the
    generating noise parameters.
    """
    from .model import JumpModel

    trials: list[TrialRecord] = []
    for sid in sorted(screens, key=_screen_sort_key):
        level = screens[sid]
        start, target = _screen_pair(level)
        movement = level.movement
        if start.kind is PlatformKind.DYNAMIC and start.motion is not None:
            start = start.at_offset(_best_start_offset(start, target, level))
        rng = edge_rng(seed, f"trials:{sid}", target.id)
        trajs = generate_trajectories(start, target, movement)
        if not trajs:
            continue
        dynamic_release = movement.jump_model is JumpModel.DYNAMIC
        release_scale = noise.reaction_time / noise.player_skill
        for k in range(trials_per_screen):
            traj = trajs[k % len(trajs)]
            sigma1 = noise_sigma(noise, traj.approach.horizontal_takeoff_speed)
            draw = float(sample_takeoffs(noise, traj.plan.takeoff_x, start,
                                         sigma1, 1, rng, resample_cap)[0])
            vx0 = traj.plan.vx0
            if math.isnan(draw):
                trials.append(TrialRecord(sid, (traj.plan.takeoff_x,
                                                start.surface_top),
                                          None, vx0, False))
                continue
            takeoff = (draw, start.surface_top)
            if not is_reachable(traj, target):
                trials.append(TrialRecord(sid, takeoff, None, vx0, False))
                continue
            eps1 = draw - traj.plan.takeoff_x
            rel1 = rng.normal(0.0, release_scale) if dynamic_release else None
            rel2 = None
            eps2 = 0.0
            if traj.plan.double_jump is not None:
                sigma2 = noise_sigma(noise, double_jump_air_speed(traj))
                eps2 = rng.normal(0.0, sigma2)
                if dynamic_release:
                    rel2 = rng.normal(0.0, release_scale)
                if noise.kind is NoiseKind.GAUSSIAN_RESAMPLE:
                    tries = 0
                    while tries < resample_cap and sampled_outcome(
                            traj, movement, target, eps1, eps2, rel1, rel2) is None:
                        eps2 = rng.normal(0.0, sigma2)
                        tries += 1
            outcome = sampled_outcome(traj, movement, target, eps1, eps2,
                                      rel1, rel2)
            if outcome:
                landing = sampled_landing(traj, movement, target, eps1, eps2,
                                          rel1, rel2)
                trials.append(TrialRecord(sid, takeoff, landing, vx0, True))
            else:
                trials.append(TrialRecord(sid, takeoff, None, vx0, False))
    return trials
