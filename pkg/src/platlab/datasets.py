"""Bundled fixtures: the reconstructed 16-screen suite and its trial log.

The original study's screen geometries and raw logs are unpublished; this
suite is a reconstruction matching the published per-screen jump types and
difficulty ordering, and the bundled log reproduces the published
per-screen jump and success counts exactly.
"""

from __future__ import annotations

from .model import (
    CharacterConfig,
    Level,
    MotionAxis,
    MotionSpec,
    MovementConfig,
    Platform,
    PlatformKind,
    PlatformRole,
)
from .trajectory import generate_trajectories, is_reachable, landing_point
from .validation import TrialRecord

#: Published per-screen results: (screen id, jump type, jumps, successes).
TABLE1_COUNTS: tuple[tuple[str, str, int, int], ...] = (
    ("0", "simple", 156, 136),
    ("1", "simple", 131, 80),
    ("2", "simple", 158, 114),
    ("3", "simple", 159, 104),
    ("4", "simple", 153, 33),
    ("5", "reentrant", 150, 53),
    ("6", "reentrant", 139, 76),
    ("7", "reentrant", 134, 43),
    ("8", "reentrant", 148, 32),
    ("9", "trivial", 157, 139),
    ("10", "falling", 151, 142),
    ("11", "falling", 156, 143),
    ("12", "trivial", 157, 156),
    ("13", "falling", 140, 128),
    ("14", "falling", 141, 93),
    ("15", "simple", 131, 64),
)


def _screen(sid: str, start: Platform, target: Platform) -> Level:
    return Level(platforms=(start, target), movement=MovementConfig(),
                 character=CharacterConfig(), name=f"screen-{sid}")


def _pair(sid: str, sx: float, sy: float, slen: float,
          tx: float, ty: float, tlen: float,
          motion: MotionSpec | None = None) -> Level:
    kind = PlatformKind.DYNAMIC if motion else PlatformKind.STATIC
    return _screen(
        sid,
        Platform(f"s{sid}", sx, sy, slen, kind=kind, motion=motion,
                 role=PlatformRole.START),
        Platform(f"t{sid}", tx, ty, tlen, role=PlatformRole.EXIT),
    )


def reconstructed_screens() -> dict[str, Level]:
    """Sixteen two-platform screens mirroring the published jump types."""
    screens = {
        # simple jumps over gaps of increasing width
        "0": _pair("0", 0, 0, 6, 9.5, 0, 6),
        "1": _pair("1", 0, 0, 6, 11.5, 0, 6),
        "2": _pair("2", 0, 0, 6, 10.5, 0, 6),
        "3": _pair("3", 0, 0, 6, 11.0, -1, 6),
        "4": _pair("4", 0, 0, 6, 18.5, 0, 6),
        "15": _pair("15", 0, 0, 6, 13.5, 0, 6),
        # reentrant jumps: the target overhangs the start
        "5": _pair("5", 2.0, 0, 4, 0.5, 3.0, 8),
        "6": _pair("6", 1.5, 0, 4, 0.5, 2.5, 6),
        "7": _pair("7", 2.0, 0, 4, 0.0, 3.3, 9),
        "8": _pair("8", 2.0, 0, 4, 0.0, 3.2, 9,
                   motion=MotionSpec(MotionAxis.HORIZONTAL, 1.0, 3.0)),
        # trivial jumps across overlapping platforms
        "9": _pair("9", 0, 0, 6, 3, 1.6, 6),
        "12": _pair("12", 0, 0, 6, 3, 1.2, 6),
        # falling jumps onto a covered lower platform; screen 14's target sits
        # so deep under the middle of a wide ledge that the plain falls miss
        # and only the double-jump variants connect
        "10": _pair("10", 0, 0, 10, 2.5, -4, 4),
        "11": _pair("11", 0, 0, 10, 3.0, -5, 4),
        "13": _pair("13", 0, 0, 10, 2.5, -6, 4),
        "14": _pair("14", 0, 0, 20, 9.0, -9, 2),
    }
    return {sid: screens[sid] for sid, _, _, _ in TABLE1_COUNTS}


def table1_trial_log() -> list[TrialRecord]:
    """Synthetic log with exactly the published per-screen counts.

    Successful rows land at the canonical landing point of the first
    reachable trajectory of the screen; rows are otherwise schematic.
    """
    screens = reconstructed_screens()
    trials: list[TrialRecord] = []
    for sid, _, jumps, successes in TABLE1_COUNTS:
        level = screens[sid]
        start, target = level.start, level.exits[0]
        landing = None
        takeoff_vx = 0.0
        takeoff = (start.surface_left + start.length / 2, start.surface_top)
        for traj in generate_trajectories(start, target, level.movement):
            if is_reachable(traj, target):
                takeoff = traj.takeoff_point
                takeoff_vx = traj.plan.vx0
                landing = landing_point(traj, target)
                break
        if landing is None:
            landing = (target.center, target.surface_top)
        for k in range(jumps):
            ok = k < successes
            trials.append(TrialRecord(sid, takeoff, landing if ok else None,
                                      takeoff_vx, ok))
    return trials


def demo_level() -> Level:
    """A small multi-route level for reports, docs, and CLI examples."""
    platforms = (
        Platform("start", 0.0, 0.0, 5.0, role=PlatformRole.START),
        Platform("mid-low", 9.0, -1.0, 5.0),
        Platform("mid-high", 8.5, 2.0, 4.0),
        Platform("spiky", 17.0, -0.5, 4.0, spikes=True),
        Platform("ferry", 16.0, 2.5, 3.0, kind=PlatformKind.DYNAMIC,
                 motion=MotionSpec(MotionAxis.HORIZONTAL, 3.0, 2.0)),
        Platform("landing", 25.0, 0.5, 5.0),
        Platform("goal", 33.0, 1.0, 5.0, role=PlatformRole.EXIT),
    )
    return Level(platforms=platforms, name="demo")
