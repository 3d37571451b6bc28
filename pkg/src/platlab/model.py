"""Level document model: platforms, movement physics, and validation.

Coordinates are world units with x increasing rightward and y increasing
upward. A platform is a walkable horizontal segment anchored at the left
end of its top surface; the character is a point mass at its feet.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

SCHEMA_VERSION = 1

#: Absolute tolerance for geometric comparisons throughout the engine.
GEOM_EPS = 1e-9


class PlatformKind(str, Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"
    FADING = "fading"


class PlatformRole(str, Enum):
    NONE = "none"
    START = "start"
    EXIT = "exit"
    CHECKPOINT = "checkpoint"


class MotionAxis(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class JumpModel(str, Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"


@dataclass(frozen=True)
class MotionSpec:
    """Back-and-forth sweep of a dynamic platform along one axis.

    The platform sweeps the segment from its anchor to anchor+amplitude;
    one full period is 2*amplitude/speed.
    """

    axis: MotionAxis
    amplitude: float
    speed: float

    @property
    def period(self) -> float:
        return 2.0 * self.amplitude / self.speed


@dataclass(frozen=True)
class Platform:
    id: str
    surface_left: float
    surface_top: float
    length: float
    kind: PlatformKind = PlatformKind.STATIC
    motion: MotionSpec | None = None
    spikes: bool = False
    role: PlatformRole = PlatformRole.NONE
    fade_speed: float | None = None

    @property
    def surface_right(self) -> float:
        return self.surface_left + self.length

    @property
    def center(self) -> float:
        return self.surface_left + 0.5 * self.length

    def at_offset(self, offset: float) -> "Platform":
        """Copy of this platform displaced along its motion axis."""
        if offset == 0.0:
            return self
        if self.motion is not None and self.motion.axis is MotionAxis.VERTICAL:
            return Platform(
                self.id, self.surface_left, self.surface_top + offset, self.length,
                self.kind, self.motion, self.spikes, self.role, self.fade_speed,
            )
        return Platform(
            self.id, self.surface_left + offset, self.surface_top, self.length,
            self.kind, self.motion, self.spikes, self.role, self.fade_speed,
        )

    def spans_overlap(self, other: "Platform") -> bool:
        return (self.surface_left <= other.surface_right + GEOM_EPS
                and other.surface_left <= self.surface_right + GEOM_EPS)

    def covers(self, other: "Platform") -> bool:
        """True when other's span lies within this platform's span."""
        return (self.surface_left <= other.surface_left + GEOM_EPS
                and other.surface_right <= self.surface_right + GEOM_EPS)


@dataclass(frozen=True)
class MovementConfig:
    """Character movement and jump physics parameters.

    Accelerations may be ``math.inf``, meaning the target speed is reached
    instantly.
    """

    walk_speed: float = 6.0
    run_speed: float = 10.0
    air_speed: float = 8.0
    ground_accel: float = math.inf
    turn_accel: float = math.inf
    stop_accel: float = math.inf
    air_accel: float = math.inf
    gravity: float = 30.0
    takeoff_speed: float = 12.0
    max_fall_speed: float = 20.0
    jump_model: JumpModel = JumpModel.STATIC
    jump_enabled: bool = True
    double_jump_enabled: bool = True


@dataclass(frozen=True)
class CharacterConfig:
    health: int = 3
    spike_damage: int = 1


@dataclass(frozen=True)
class Level:
    platforms: tuple[Platform, ...]
    movement: MovementConfig = field(default_factory=MovementConfig)
    character: CharacterConfig = field(default_factory=CharacterConfig)
    name: str = "untitled"

    def platform(self, platform_id: str) -> Platform:
        for p in self.platforms:
            if p.id == platform_id:
                return p
        raise KeyError(platform_id)

    @property
    def start(self) -> Platform | None:
        for p in self.platforms:
            if p.role is PlatformRole.START:
                return p
        return None

    @property
    def exits(self) -> tuple[Platform, ...]:
        return tuple(p for p in self.platforms if p.role is PlatformRole.EXIT)


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding; ``platform_id`` is None for level-wide rules."""

    code: str
    message: str
    platform_id: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "platform_id": self.platform_id}


class LevelFormatError(ValueError):
    """Raised by parse_level for malformed or schema-violating documents.

    ``path`` locates the offending field (e.g. "platforms[2].kind").
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def validate_level(level: Level) -> list[Diagnostic]:
    """Check all level and platform invariants; empty list means valid."""
    out: list[Diagnostic] = []
    seen: set[str] = set()
    for p in level.platforms:
        if p.id in seen:
            out.append(Diagnostic("duplicate-id", f"platform id {p.id!r} repeats", p.id))
        seen.add(p.id)
        if not p.length > 0:
            out.append(Diagnostic("nonpositive-length",
                                  f"platform {p.id!r} has length {p.length}", p.id))
        if p.kind is PlatformKind.DYNAMIC and p.motion is None:
            out.append(Diagnostic("motion-missing",
                                  f"dynamic platform {p.id!r} has no motion spec", p.id))
        if p.kind is not PlatformKind.DYNAMIC and p.motion is not None:
            out.append(Diagnostic("motion-unexpected",
                                  f"platform {p.id!r} is {p.kind.value} but has a motion spec",
                                  p.id))
        if p.kind is not PlatformKind.FADING and p.fade_speed is not None:
            out.append(Diagnostic("fade-speed-unexpected",
                                  f"platform {p.id!r} is {p.kind.value} but has fade_speed",
                                  p.id))
        if p.motion is not None:
            if p.motion.amplitude < 0:
                out.append(Diagnostic("negative-amplitude",
                                      f"platform {p.id!r} motion amplitude < 0", p.id))
            if not p.motion.speed > 0:
                out.append(Diagnostic("nonpositive-motion-speed",
                                      f"platform {p.id!r} motion speed must be > 0", p.id))
        if p.fade_speed is not None and not p.fade_speed > 0:
            out.append(Diagnostic("nonpositive-fade-speed",
                                  f"platform {p.id!r} fade_speed must be > 0", p.id))

    starts = [p for p in level.platforms if p.role is PlatformRole.START]
    if not starts:
        out.append(Diagnostic("missing-start", "level has no start platform"))
    elif len(starts) > 1:
        out.append(Diagnostic("multiple-start",
                              "level has {} start platforms".format(len(starts)),
                              starts[1].id))
    if not any(p.role is PlatformRole.EXIT for p in level.platforms):
        out.append(Diagnostic("missing-exit", "level has no exit platform"))

    statics = [p for p in level.platforms if p.kind is not PlatformKind.DYNAMIC]
    for i, a in enumerate(statics):
        for b in statics[i + 1:]:
            if abs(a.surface_top - b.surface_top) <= GEOM_EPS and a.spans_overlap(b):
                out.append(Diagnostic(
                    "overlapping-surfaces",
                    f"platforms {a.id!r} and {b.id!r} overlap at the same height",
                    b.id))

    m = level.movement
    if not 0 < m.walk_speed <= m.run_speed:
        out.append(Diagnostic("invalid-speeds",
                              "walk_speed must satisfy 0 < walk_speed <= run_speed"))
    for name in ("run_speed", "air_speed", "gravity", "takeoff_speed", "max_fall_speed",
                 "ground_accel", "turn_accel", "stop_accel", "air_accel"):
        if not getattr(m, name) > 0:
            out.append(Diagnostic("nonpositive-parameter", f"movement.{name} must be > 0"))
    if level.character.health < 1:
        out.append(Diagnostic("nonpositive-health", "character health must be >= 1"))
    return out


# --- JSON (de)serialization, schema version 1 ------------------------------

def _expect(obj: Any, kind: type, path: str) -> Any:
    if kind is float:
        if isinstance(obj, bool) or not isinstance(obj, (int, float)):
            raise LevelFormatError(f"expected a number, got {type(obj).__name__}", path)
        return float(obj)
    if kind is int:
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise LevelFormatError(f"expected an integer, got {type(obj).__name__}", path)
        return obj
    if not isinstance(obj, kind):
        raise LevelFormatError(f"expected {kind.__name__}, got {type(obj).__name__}", path)
    return obj


def _take(mapping: dict, key: str, kind: type, path: str, *, optional: bool = False) -> Any:
    if key not in mapping:
        if optional:
            return None
        raise LevelFormatError("required field is missing", f"{path}.{key}" if path else key)
    return _expect(mapping.pop(key), kind, f"{path}.{key}" if path else key)


def _reject_unknown(mapping: dict, path: str) -> None:
    if mapping:
        key = sorted(mapping)[0]
        raise LevelFormatError("unknown field", f"{path}.{key}" if path else key)


def _enum(value: str, enum_cls: type[Enum], path: str) -> Any:
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_cls)  # type: ignore[attr-defined]
        raise LevelFormatError(f"must be one of: {allowed}", path) from None


def _accel(obj: Any, path: str) -> float:
    if obj == "inf":
        return math.inf
    return _expect(obj, float, path)


def parse_level(document: bytes | str) -> Level:
    """Parse a level JSON document (schema version 1).

    Raises LevelFormatError on malformed syntax (with line/position) or on
    any schema violation (with field path). Unknown fields are rejected.
    """
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise LevelFormatError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return level_from_dict(data)


def level_from_dict(data: Any) -> Level:
    data = dict(_expect(data, dict, ""))
    schema = _take(data, "schema", int, "")
    if schema != SCHEMA_VERSION:
        raise LevelFormatError(f"unsupported schema version {schema}", "schema")
    name = _take(data, "name", str, "")

    mdata = dict(_take(data, "movement", dict, ""))
    movement = MovementConfig(
        walk_speed=_take(mdata, "walk_speed", float, "movement"),
        run_speed=_take(mdata, "run_speed", float, "movement"),
        air_speed=_take(mdata, "air_speed", float, "movement"),
        ground_accel=_accel(_take(mdata, "ground_accel", object, "movement"),
                            "movement.ground_accel"),
        turn_accel=_accel(_take(mdata, "turn_accel", object, "movement"),
                          "movement.turn_accel"),
        stop_accel=_accel(_take(mdata, "stop_accel", object, "movement"),
                          "movement.stop_accel"),
        air_accel=_accel(_take(mdata, "air_accel", object, "movement"),
                         "movement.air_accel"),
        gravity=_take(mdata, "gravity", float, "movement"),
        takeoff_speed=_take(mdata, "takeoff_speed", float, "movement"),
        max_fall_speed=_take(mdata, "max_fall_speed", float, "movement"),
        jump_model=_enum(_take(mdata, "jump_model", str, "movement"), JumpModel,
                         "movement.jump_model"),
        jump_enabled=_take(mdata, "jump_enabled", bool, "movement"),
        double_jump_enabled=_take(mdata, "double_jump_enabled", bool, "movement"),
    )
    _reject_unknown(mdata, "movement")

    cdata = dict(_take(data, "character", dict, ""))
    character = CharacterConfig(
        health=_take(cdata, "health", int, "character"),
        spike_damage=_take(cdata, "spike_damage", int, "character"),
    )
    _reject_unknown(cdata, "character")

    platforms: list[Platform] = []
    seen_ids: set[str] = set()
    plist = _take(data, "platforms", list, "")
    for i, pdata in enumerate(plist):
        path = f"platforms[{i}]"
        pdata = dict(_expect(pdata, dict, path))
        pid = _take(pdata, "id", str, path)
        if pid in seen_ids:
            raise LevelFormatError(f"duplicate-id: platform id {pid!r} repeats",
                                   f"{path}.id")
        seen_ids.add(pid)
        kind = _enum(_take(pdata, "kind", str, path), PlatformKind, f"{path}.kind")
        role = _enum(_take(pdata, "role", str, path), PlatformRole, f"{path}.role")
        motion = None
        if "motion" in pdata:
            mpath = f"{path}.motion"
            mspec = dict(_expect(pdata.pop("motion"), dict, mpath))
            motion = MotionSpec(
                axis=_enum(_take(mspec, "axis", str, mpath), MotionAxis, f"{mpath}.axis"),
                amplitude=_take(mspec, "amplitude", float, mpath),
                speed=_take(mspec, "speed", float, mpath),
            )
            _reject_unknown(mspec, mpath)
        fade_speed = _take(pdata, "fade_speed", float, path, optional=True)
        platforms.append(Platform(
            id=pid,
            surface_left=_take(pdata, "x", float, path),
            surface_top=_take(pdata, "y", float, path),
            length=_take(pdata, "length", float, path),
            kind=kind,
            motion=motion,
            spikes=_take(pdata, "spikes", bool, path),
            role=role,
            fade_speed=fade_speed,
        ))
        _reject_unknown(pdata, path)
    _reject_unknown(data, "")
    return Level(platforms=tuple(platforms), movement=movement, character=character,
                 name=name)


def _accel_to_json(value: float) -> Any:
    return "inf" if math.isinf(value) else value


def level_to_dict(level: Level) -> dict[str, Any]:
    m = level.movement
    platforms = []
    for p in level.platforms:
        pdata: dict[str, Any] = {
            "id": p.id,
            "x": p.surface_left,
            "y": p.surface_top,
            "length": p.length,
            "kind": p.kind.value,
            "spikes": p.spikes,
            "role": p.role.value,
        }
        if p.motion is not None:
            pdata["motion"] = {
                "axis": p.motion.axis.value,
                "amplitude": p.motion.amplitude,
                "speed": p.motion.speed,
            }
        if p.fade_speed is not None:
            pdata["fade_speed"] = p.fade_speed
        platforms.append(pdata)
    return {
        "schema": SCHEMA_VERSION,
        "name": level.name,
        "movement": {
            "walk_speed": m.walk_speed,
            "run_speed": m.run_speed,
            "air_speed": m.air_speed,
            "ground_accel": _accel_to_json(m.ground_accel),
            "turn_accel": _accel_to_json(m.turn_accel),
            "stop_accel": _accel_to_json(m.stop_accel),
            "air_accel": _accel_to_json(m.air_accel),
            "gravity": m.gravity,
            "takeoff_speed": m.takeoff_speed,
            "max_fall_speed": m.max_fall_speed,
            "jump_model": m.jump_model.value,
            "jump_enabled": m.jump_enabled,
            "double_jump_enabled": m.double_jump_enabled,
        },
        "character": {
            "health": level.character.health,
            "spike_damage": level.character.spike_damage,
        },
        "platforms": platforms,
    }


def serialize_level(level: Level) -> str:
    """Canonical JSON form; parse_level(serialize_level(x)) == x."""
    return json.dumps(level_to_dict(level), indent=2, sort_keys=False)
