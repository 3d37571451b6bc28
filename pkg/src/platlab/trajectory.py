"""Closed-form jump trajectories, reachability tests, and landing points.

A trajectory is a time-contiguous list of uniformly accelerated segments.
Segment boundaries occur exactly where the motion regime changes: the air
speed cap, the fall speed cap, a horizontal turn, a jump-button release, or
a mid-air double jump. All queries (height over a span, landing, apex) are
solved in closed form on the segments; nothing is numerically integrated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import GEOM_EPS, MovementConfig, Platform

#: Hard cap on simulated flight time, a safety net for degenerate configs.
_T_MAX = 120.0

#: Trajectories are cut one unit below the lower of the two platforms; past
#: that point a descending character can never rise back above the target.
_FLOOR_MARGIN = 1.0

#: Horizontal clearance added beyond the target overhang before the
#: double jump back in a reentrant maneuver.
_REENTRANT_STEP = 0.1


class JumpType(str, Enum):
    TRIVIAL = "trivial"
    SIMPLE = "simple"
    FALLING = "falling"
    REENTRANT = "reentrant"


class Direction(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def sign(self) -> float:
        return -1.0 if self is Direction.LEFT else 1.0


class DoubleJumpTiming(str, Enum):
    """When the second jump of a double jump is triggered.

    APEX and TAKEOFF_HEIGHT are the two canonical timings; HALF_GAP is used
    for falling jumps (fires after half the vertical drop).
    """

    APEX = "apex"
    TAKEOFF_HEIGHT = "takeoff_height"
    HALF_GAP = "half_gap"


@dataclass(frozen=True)
class ApproachMode:
    """How the character arrives at the takeoff point."""

    horizontal_takeoff_speed: float
    running: bool
    double_jump: DoubleJumpTiming | None = None

    @property
    def still(self) -> bool:
        return self.horizontal_takeoff_speed == 0.0

    @property
    def color_class(self) -> str:
        if self.still:
            return "orange" if self.running else "green"
        return "red" if self.running else "yellow"


@dataclass(frozen=True)
class MotionSegment:
    """One uniformly accelerated piece: p(t) = p0 + v0*tau + a*tau^2/2."""

    t_start: float
    t_end: float
    x0: float
    y0: float
    vx0: float
    vy0: float
    ax: float
    ay: float

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    def position(self, tau: float) -> tuple[float, float]:
        return (self.x0 + self.vx0 * tau + 0.5 * self.ax * tau * tau,
                self.y0 + self.vy0 * tau + 0.5 * self.ay * tau * tau)

    def velocity(self, tau: float) -> tuple[float, float]:
        return (self.vx0 + self.ax * tau, self.vy0 + self.ay * tau)

    @property
    def x_end(self) -> float:
        return self.x0 + self.vx0 * self.duration + 0.5 * self.ax * self.duration ** 2


@dataclass(frozen=True)
class DoubleJumpSpec:
    """Resolved double-jump plan: optimal trigger time plus return steering."""

    timing: DoubleJumpTiming
    t_optimal: float
    steer_sign: float
    steer_cap: float
    trigger_y: float | None = None
    clearance_x: float | None = None


@dataclass(frozen=True)
class JumpPlan:
    """Generation recipe for a trajectory; enough to rebuild noisy variants."""

    takeoff_x: float
    takeoff_y: float
    vx0: float
    vy0: float
    steer_sign: float
    steer_cap: float
    floor_y: float
    double_jump: DoubleJumpSpec | None = None
    first_flight: tuple[MotionSegment, ...] | None = None


@dataclass(frozen=True)
class JumpTrajectory:
    segments: tuple[MotionSegment, ...]
    direction: Direction
    approach: ApproachMode
    takeoff_point: tuple[float, float]
    plan: JumpPlan

    @property
    def end_time(self) -> float:
        return self.segments[-1].t_end


class OutOfRangeError(ValueError):
    """Queried x is not covered by the trajectory."""


# --- exact flight integration ----------------------------------------------

def _fly(movement: MovementConfig, t0: float, x: float, y: float, vx: float,
         vy: float, steer_sign: float, steer_cap: float,
         events: list[tuple], floor_y: float) -> list[MotionSegment]:
    """Build segments from an initial state under steering and gravity.

    ``events`` is a time-sorted list of ("release", t) or
    ("impulse", t, vy_new, steer_sign, steer_cap) tuples. The flight ends when
    it descends through floor_y with no events pending, or at the time cap.
    """
    g = movement.gravity
    a_h = movement.air_accel
    v_floor = -movement.max_fall_speed
    segs: list[MotionSegment] = []
    t = t0
    ei = 0
    while t < t0 + _T_MAX:
        target_vx = steer_sign * steer_cap
        accelerating = steer_sign != 0.0 and steer_sign * (target_vx - vx) > 1e-12
        if accelerating and math.isinf(a_h):
            vx = target_vx
            accelerating = False
        ax = steer_sign * a_h if accelerating else 0.0
        if vy <= v_floor + 1e-12:
            vy = v_floor
            ay = 0.0
        else:
            ay = -g

        candidates: list[tuple[float, str]] = []
        if ax != 0.0:
            if vx * ax < 0.0:
                candidates.append((t + (-vx) / ax, "turn"))
            candidates.append((t + (target_vx - vx) / ax, "cap"))
        if ay != 0.0:
            candidates.append((t + (vy - v_floor) / g, "fall"))
        if ei < len(events):
            candidates.append((max(events[ei][1], t), "event"))
        else:
            tau_floor = _descend_to(y, vy, ay, floor_y)
            if tau_floor is not None:
                candidates.append((t + tau_floor, "floor"))
        candidates.append((t0 + _T_MAX, "timeout"))
        t_cut = min(tc for tc, _ in candidates)
        hits = {tag for tc, tag in candidates if tc <= t_cut + 1e-12}

        tau = t_cut - t
        if tau > 1e-12:
            segs.append(MotionSegment(t, t_cut, x, y, vx, vy, ax, ay))
            x += vx * tau + 0.5 * ax * tau * tau
            y += vy * tau + 0.5 * ay * tau * tau
            vx += ax * tau
            vy += ay * tau
        if "cap" in hits:
            vx = target_vx
        if "turn" in hits and "cap" not in hits:
            vx = 0.0
        if "fall" in hits:
            vy = v_floor
        t = t_cut
        if "event" in hits and ei < len(events):
            ev = events[ei]
            ei += 1
            if ev[0] == "release":
                if vy > 0.0:
                    vy = 0.0
            else:
                _, _, vy_new, steer_sign, steer_cap = ev
                vy = vy_new
            continue
        if "floor" in hits or "timeout" in hits:
            break
    if not segs:
        segs.append(MotionSegment(t0, t0, x, y, vx, vy, 0.0, 0.0))
    return segs


def _descend_to(y: float, vy: float, ay: float, y_star: float) -> float | None:
    """Smallest tau > 0 at which y(tau) == y_star while moving downward."""
    for tau in _quadratic_roots(0.5 * ay, vy, y - y_star):
        if tau > 1e-12 and vy + ay * tau <= 1e-12:
            return tau
    return None


def _quadratic_roots(a: float, b: float, c: float) -> tuple[float, ...]:
    """Ascending real roots of a*t^2 + b*t + c = 0 (linear when a ~ 0)."""
    if abs(a) < 1e-15:
        if abs(b) < 1e-15:
            return ()
        return (-c / b,)
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return ()
    s = math.sqrt(disc)
    r1 = (-b - s) / (2.0 * a)
    r2 = (-b + s) / (2.0 * a)
    return (r1, r2) if r1 <= r2 else (r2, r1)


# --- queries over built segments -------------------------------------------

def _first_apex(segments: tuple[MotionSegment, ...] | list[MotionSegment]) -> float:
    """First time vertical speed is no longer positive."""
    for seg in segments:
        if seg.vy0 <= 1e-12:
            return seg.t_start
        if seg.ay < 0.0:
            tau = seg.vy0 / -seg.ay
            if tau <= seg.duration + 1e-12:
                return seg.t_start + tau
    return segments[-1].t_end


def _first_descent_through(segments, y_star: float) -> float | None:
    """First time the flight crosses y_star moving downward."""
    for seg in segments:
        tau = _descend_to(seg.y0, seg.vy0, seg.ay, y_star)
        if tau is None and abs(seg.y0 - y_star) <= 1e-12 and seg.vy0 <= 1e-12 \
                and (seg.vy0 < -1e-12 or seg.ay < 0.0):
            tau = 0.0
        if tau is not None and tau <= seg.duration + 1e-12:
            return seg.t_start + min(tau, seg.duration)
    return None


def _first_time_at_x(segments, x_star: float) -> float | None:
    """First time the flight is at horizontal position x_star."""
    for seg in segments:
        if seg.vx0 == 0.0 and seg.ax == 0.0:
            if abs(seg.x0 - x_star) <= GEOM_EPS:
                return seg.t_start
            continue
        for tau in _quadratic_roots(0.5 * seg.ax, seg.vx0, seg.x0 - x_star):
            if -1e-9 <= tau <= seg.duration + 1e-9:
                return seg.t_start + min(max(tau, 0.0), seg.duration)
    return None


def _state_at(segments, t: float) -> tuple[float, float, float, float]:
    for seg in segments:
        if t <= seg.t_end + 1e-12:
            tau = max(t - seg.t_start, 0.0)
            x, y = seg.position(tau)
            vx, vy = seg.velocity(tau)
            return x, y, vx, vy
    seg = segments[-1]
    x, y = seg.position(seg.duration)
    vx, vy = seg.velocity(seg.duration)
    return x, y, vx, vy


def _aligned_window(seg: MotionSegment, lo: float, hi: float,
                    shift: float) -> tuple[float, float] | None:
    """Tau window within seg during which lo <= x(tau)+shift <= hi.

    Segments are x-monotone by construction (the builder splits at turns),
    so the window is a single interval.
    """
    x0 = seg.x0 + shift
    dur = seg.duration
    if seg.vx0 == 0.0 and seg.ax == 0.0:
        return (0.0, dur) if lo - GEOM_EPS <= x0 <= hi + GEOM_EPS else None
    x_end = x0 + seg.vx0 * dur + 0.5 * seg.ax * dur * dur
    if x_end >= x0:
        if x_end < lo - GEOM_EPS or x0 > hi + GEOM_EPS:
            return None
        tau_in = 0.0 if x0 >= lo - GEOM_EPS else _tau_at_x(seg, lo - shift)
        tau_out = dur if x_end <= hi + GEOM_EPS else _tau_at_x(seg, hi - shift)
    else:
        if x_end > hi + GEOM_EPS or x0 < lo - GEOM_EPS:
            return None
        tau_in = 0.0 if x0 <= hi + GEOM_EPS else _tau_at_x(seg, hi - shift)
        tau_out = dur if x_end >= lo - GEOM_EPS else _tau_at_x(seg, lo - shift)
    if tau_in is None or tau_out is None:
        return None
    a, b = max(min(tau_in, tau_out), 0.0), min(max(tau_in, tau_out), dur)
    return (a, b) if a <= b + 1e-12 else None


def _tau_at_x(seg: MotionSegment, x_star: float) -> float | None:
    for tau in _quadratic_roots(0.5 * seg.ax, seg.vx0, seg.x0 - x_star):
        if -1e-9 <= tau <= seg.duration + 1e-9:
            return min(max(tau, 0.0), seg.duration)
    return None


def _max_y_over_span(segments, lo: float, hi: float, shift: float = 0.0,
                     t_hi: float | None = None) -> float:
    """Highest y attained while horizontally aligned with [lo, hi]."""
    best = -math.inf
    for seg in segments:
        if t_hi is not None and seg.t_start >= t_hi - 1e-12:
            break
        window = _aligned_window(seg, lo, hi, shift)
        if window is None:
            continue
        a, b = window
        if t_hi is not None:
            b = min(b, t_hi - seg.t_start)
            if b < a:
                continue
        ya = seg.y0 + seg.vy0 * a + 0.5 * seg.ay * a * a
        yb = seg.y0 + seg.vy0 * b + 0.5 * seg.ay * b * b
        best = max(best, ya, yb)
        if seg.ay < 0.0:
            tv = seg.vy0 / -seg.ay
            if a < tv < b:
                best = max(best, seg.y0 + seg.vy0 * tv + 0.5 * seg.ay * tv * tv)
    return best


def _landing_on_span(segments, lo: float, hi: float, surface_y: float,
                     shift: float = 0.0,
                     t_hi: float | None = None) -> tuple[float, float] | None:
    """First downward crossing of surface_y while aligned with [lo, hi]."""
    for seg in segments:
        if t_hi is not None and seg.t_start >= t_hi - 1e-12:
            break
        dur = seg.duration if t_hi is None else min(seg.duration, t_hi - seg.t_start)
        for tau in _quadratic_roots(0.5 * seg.ay, seg.vy0, seg.y0 - surface_y):
            if not -1e-9 <= tau <= dur + 1e-9:
                continue
            tau = min(max(tau, 0.0), dur)
            if seg.vy0 + seg.ay * tau >= -1e-12:
                continue
            x = seg.x0 + seg.vx0 * tau + 0.5 * seg.ax * tau * tau + shift
            if lo - GEOM_EPS <= x <= hi + GEOM_EPS:
                return (x, surface_y)
    return None


# --- public operations ------------------------------------------------------

def classify_jump(start: Platform, target: Platform) -> JumpType:
    """Classify the jump between two distinct platforms by their geometry."""
    if target.surface_top < start.surface_top - GEOM_EPS and start.covers(target):
        return JumpType.FALLING
    if target.surface_top > start.surface_top + GEOM_EPS and target.covers(start):
        return JumpType.REENTRANT
    if start.spans_overlap(target):
        return JumpType.TRIVIAL
    return JumpType.SIMPLE


def _air_cap(movement: MovementConfig, running: bool) -> float:
    """Maximum horizontal speed reachable by steering while airborne."""
    ground = movement.run_speed if running else movement.walk_speed
    return min(movement.air_speed, ground)


def _ground_takeoff_speed(movement: MovementConfig, run_up: float,
                          running: bool) -> float:
    """Speed reached from a standing start at the far edge of the platform."""
    cap = movement.run_speed if running else movement.walk_speed
    if math.isinf(movement.ground_accel):
        return cap
    return min(cap, math.sqrt(2.0 * movement.ground_accel * max(run_up, 0.0)))


def _build_single(plan: JumpPlan, movement: MovementConfig,
                  events: list[tuple] | None = None) -> list[MotionSegment]:
    return _fly(movement, 0.0, plan.takeoff_x, plan.takeoff_y, plan.vx0,
                plan.vy0, plan.steer_sign, plan.steer_cap, events or [],
                plan.floor_y)


def _truncate(segments, t_cut: float) -> list[MotionSegment]:
    out: list[MotionSegment] = []
    for seg in segments:
        if seg.t_end <= t_cut + 1e-12:
            out.append(seg)
            if seg.t_end >= t_cut - 1e-12:
                break
        else:
            if t_cut > seg.t_start + 1e-12:
                out.append(MotionSegment(seg.t_start, t_cut, seg.x0, seg.y0,
                                         seg.vx0, seg.vy0, seg.ax, seg.ay))
            break
    return out


def _resolve_double_jump_time(plan: JumpPlan, first_flight,
                              clearance_shift: float = 0.0) -> float:
    """Optimal second-jump time for the plan's timing on the given flight."""
    dj = plan.double_jump
    if dj.timing is DoubleJumpTiming.APEX:
        t = _first_apex(first_flight)
    elif dj.timing is DoubleJumpTiming.TAKEOFF_HEIGHT:
        t = _first_descent_through(first_flight, plan.takeoff_y)
        t = t if t is not None else first_flight[-1].t_end
    else:
        t = _first_descent_through(first_flight, dj.trigger_y)
        t = t if t is not None else first_flight[-1].t_end
    if dj.clearance_x is not None:
        tc = _first_time_at_x(first_flight, dj.clearance_x - clearance_shift)
        tc = tc if tc is not None else first_flight[-1].t_end
        t = max(t, tc)
    return t


def _assemble(plan: JumpPlan, movement: MovementConfig,
              direction: Direction, approach: ApproachMode) -> JumpTrajectory:
    """Build the optimal trajectory for a plan (full button hold)."""
    if plan.double_jump is None:
        segs = _build_single(plan, movement)
        return JumpTrajectory(tuple(segs), direction, approach,
                              (plan.takeoff_x, plan.takeoff_y), plan)
    # Plan the first flight without the second jump, resolve the trigger
    # time on it, then rebuild with the impulse in place.
    deep_floor = plan.floor_y - _dj_fall_budget(movement)
    bare_plan = JumpPlan(plan.takeoff_x, plan.takeoff_y, plan.vx0, plan.vy0,
                         plan.steer_sign, plan.steer_cap, deep_floor)
    bare = tuple(_build_single(bare_plan, movement))
    t_dj = _resolve_double_jump_time(plan, bare)
    dj = plan.double_jump
    resolved = DoubleJumpSpec(dj.timing, t_dj, dj.steer_sign, dj.steer_cap,
                              dj.trigger_y, dj.clearance_x)
    full_plan = JumpPlan(plan.takeoff_x, plan.takeoff_y, plan.vx0, plan.vy0,
                         plan.steer_sign, plan.steer_cap, plan.floor_y,
                         resolved, bare)
    phase1 = _truncate(bare, t_dj)
    x, y, vx, _vy = _state_at(bare, t_dj)
    phase2 = _fly(movement, t_dj, x, y, vx, movement.takeoff_speed,
                  dj.steer_sign, dj.steer_cap, [], plan.floor_y)
    return JumpTrajectory(tuple(phase1 + phase2), direction, approach,
                          (plan.takeoff_x, plan.takeoff_y), full_plan)


def _dj_fall_budget(movement: MovementConfig) -> float:
    """Depth below which a double jump can no longer recover the character."""
    return movement.takeoff_speed ** 2 / (2.0 * movement.gravity) + 1.0


def generate_trajectories(start: Platform, target: Platform,
                          movement: MovementConfig) -> list[JumpTrajectory]:
    """Canonical (optimal takeoff) trajectories for a platform pair.

    Counts per jump type: trivial 1; simple 4, or 12 with double jump;
    falling 2, or 4 with double jump; reentrant 4, double jump only.
    """
    jump_type = classify_jump(start, target)
    floor_y = min(start.surface_top, target.surface_top) - _FLOOR_MARGIN
    v0 = movement.takeoff_speed
    can_jump = movement.jump_enabled
    can_double = movement.jump_enabled and movement.double_jump_enabled

    if jump_type is JumpType.TRIVIAL:
        if not can_jump:
            return []
        overlap_lo = max(start.surface_left, target.surface_left)
        overlap_hi = min(start.surface_right, target.surface_right)
        takeoff_x = 0.5 * (overlap_lo + overlap_hi)
        sign = 1.0 if target.center >= takeoff_x else -1.0
        direction = Direction.RIGHT if sign > 0 else Direction.LEFT
        above = target.surface_top >= start.surface_top - GEOM_EPS
        plan = JumpPlan(takeoff_x, start.surface_top, 0.0,
                        v0 if above else 0.0,
                        sign if above else 0.0,
                        _air_cap(movement, running=False) if above else 0.0,
                        floor_y)
        approach = ApproachMode(0.0, running=False)
        return [_assemble(plan, movement, direction, approach)]

    if jump_type is JumpType.SIMPLE:
        if not can_jump:
            return []
        to_right = target.surface_left > start.surface_right
        sign = 1.0 if to_right else -1.0
        direction = Direction.RIGHT if to_right else Direction.LEFT
        takeoff_x = start.surface_right if to_right else start.surface_left
        out: list[JumpTrajectory] = []
        bases = []
        for running in (False, True):
            cap = _air_cap(movement, running)
            v_move = _ground_takeoff_speed(movement, start.length, running)
            for speed in (0.0, v_move):
                bases.append((speed, running, cap))
        for speed, running, cap in bases:
            plan = JumpPlan(takeoff_x, start.surface_top, sign * speed, v0,
                            sign, cap, floor_y)
            out.append(_assemble(plan, movement,
                                 direction, ApproachMode(speed, running)))
        if can_double:
            for speed, running, cap in bases:
                for timing in (DoubleJumpTiming.APEX,
                               DoubleJumpTiming.TAKEOFF_HEIGHT):
                    dj = DoubleJumpSpec(timing, 0.0, sign, cap)
                    plan = JumpPlan(takeoff_x, start.surface_top, sign * speed,
                                    v0, sign, cap, floor_y, dj)
                    out.append(_assemble(plan, movement, direction,
                                         ApproachMode(speed, running, timing)))
        return out

    if jump_type is JumpType.FALLING:
        clear_left = target.surface_left - start.surface_left
        clear_right = start.surface_right - target.surface_right
        from_left = clear_left < clear_right - GEOM_EPS
        takeoff_x = start.surface_left if from_left else start.surface_right
        sign = 1.0 if from_left else -1.0
        direction = Direction.RIGHT if from_left else Direction.LEFT
        out = []
        for running in (False, True):
            plan = JumpPlan(takeoff_x, start.surface_top, 0.0, 0.0, sign,
                            _air_cap(movement, running), floor_y)
            out.append(_assemble(plan, movement, direction,
                                 ApproachMode(0.0, running)))
        if can_double:
            half_gap_y = 0.5 * (start.surface_top + target.surface_top)
            for running in (False, True):
                cap = _air_cap(movement, running)
                dj = DoubleJumpSpec(DoubleJumpTiming.HALF_GAP, 0.0, sign, cap,
                                    trigger_y=half_gap_y)
                plan = JumpPlan(takeoff_x, start.surface_top, 0.0, 0.0, sign,
                                cap, floor_y, dj)
                out.append(_assemble(
                    plan, movement, direction,
                    ApproachMode(0.0, running, DoubleJumpTiming.HALF_GAP)))
        return out

    # Reentrant: jump out past the target overhang, then double jump back.
    if not can_double:
        return []
    clear_left = start.surface_left - target.surface_left
    clear_right = target.surface_right - start.surface_right
    escape_left = clear_left < clear_right - GEOM_EPS
    takeoff_x = start.surface_left if escape_left else start.surface_right
    out_sign = -1.0 if escape_left else 1.0
    escape_x = (target.surface_left - _REENTRANT_STEP if escape_left
                else target.surface_right + _REENTRANT_STEP)
    direction = Direction.RIGHT if escape_left else Direction.LEFT
    out = []
    for running in (False, True):
        cap = _air_cap(movement, running)
        speed = _ground_takeoff_speed(movement, start.length, running) if running else 0.0
        for timing in (DoubleJumpTiming.APEX, DoubleJumpTiming.TAKEOFF_HEIGHT):
            dj = DoubleJumpSpec(timing, 0.0, -out_sign, cap,
                                clearance_x=escape_x)
            plan = JumpPlan(takeoff_x, start.surface_top, out_sign * speed,
                            v0, out_sign, cap, floor_y, dj)
            out.append(_assemble(plan, movement, direction,
                                 ApproachMode(speed, running, timing)))
    return out


def evaluate_at(trajectory: JumpTrajectory, x: float) -> float:
    """Height of the trajectory at horizontal position x.

    When the flight covers x more than once (a reentrant out-and-back), the
    earliest pass is returned. Vertical-only segments report their entry
    height. Raises OutOfRangeError when no segment covers x.
    """
    for seg in trajectory.segments:
        if seg.vx0 == 0.0 and seg.ax == 0.0:
            if abs(seg.x0 - x) <= GEOM_EPS:
                return seg.y0
            continue
        tau = _tau_at_x(seg, x)
        if tau is not None:
            return seg.y0 + seg.vy0 * tau + 0.5 * seg.ay * tau * tau
    raise OutOfRangeError(f"x={x} is outside the trajectory's horizontal range")


def is_reachable(trajectory: JumpTrajectory, target: Platform) -> bool:
    """True when the flight passes strictly above the target surface while
    horizontally within its span."""
    top = _max_y_over_span(trajectory.segments, target.surface_left,
                           target.surface_right)
    return top > target.surface_top


def landing_point(trajectory: JumpTrajectory,
                  target: Platform) -> tuple[float, float] | None:
    """First descending crossing of the target surface within its span.

    None when the flight stays airborne above the span (overshoot).
    """
    return _landing_on_span(trajectory.segments, target.surface_left,
                            target.surface_right, target.surface_top)


def sample_polyline(trajectory: JumpTrajectory,
                    points: int = 50) -> list[tuple[float, float]]:
    """Evenly time-sampled (x, y) pairs along the flight."""
    t0 = trajectory.segments[0].t_start
    t1 = trajectory.end_time
    out = []
    n = max(points, 2)
    for i in range(n):
        t = t0 + (t1 - t0) * i / (n - 1)
        x, y, _, _ = _state_at(trajectory.segments, t)
        out.append((x, y))
    return out


# --- noisy variants ---------------------------------------------------------

def shifted_reaches(trajectory: JumpTrajectory, target: Platform,
                    x_shift: float) -> bool:
    """Reachability of the trajectory displaced horizontally by x_shift.

    Exact for plans whose triggers do not reference absolute x positions
    (everything except reentrant clearance; use sampled_reaches there).
    """
    top = _max_y_over_span(trajectory.segments, target.surface_left,
                           target.surface_right, shift=x_shift)
    return top > target.surface_top


def _sampled_parts(trajectory: JumpTrajectory, movement: MovementConfig,
                   eps1: float, eps2: float,
                   release1: float | None, release2: float | None):
    """Segments of a noisy variant of the trajectory.

    Returns (phase1, t_cut, phase2, shift) where phase1 is evaluated up to
    t_cut (None = whole flight) and both parts are displaced by shift; or
    None when the perturbed second jump leaves the first flight's range.

    eps1 perturbs the takeoff x; eps2 the second-jump x along the first
    flight; release1/release2 are button release delays relative to the
    respective apexes (dynamic jump model).
    """
    plan = trajectory.plan
    v0 = movement.takeoff_speed

    def release_event(t_jump: float, vy_at_jump: float, delta: float | None):
        if delta is None or vy_at_jump <= 0.0:
            return None
        t_apex = t_jump + vy_at_jump / movement.gravity
        return ("release", min(t_apex, max(t_jump, t_apex + delta)))

    if plan.double_jump is None:
        ev = release_event(0.0, plan.vy0, release1)
        if ev is None:
            return trajectory.segments, None, (), eps1
        segs = _build_single(plan, movement, [ev])
        return tuple(segs), None, (), eps1

    ev = release_event(0.0, plan.vy0, release1)
    if ev is None and plan.first_flight is not None:
        bare = plan.first_flight
    else:
        deep_floor = plan.floor_y - _dj_fall_budget(movement)
        bare_plan = JumpPlan(plan.takeoff_x, plan.takeoff_y, plan.vx0,
                             plan.vy0, plan.steer_sign, plan.steer_cap,
                             deep_floor)
        bare = tuple(_build_single(bare_plan, movement, [ev] if ev else []))
    t_opt = _resolve_double_jump_time(plan, bare, clearance_shift=eps1)
    x_opt, _, _, _ = _state_at(bare, t_opt)
    t2 = _first_time_at_x(bare, x_opt + eps2) if eps2 != 0.0 else t_opt
    if t2 is None:
        return None
    x2, y2, vx2, _ = _state_at(bare, t2)
    dj = plan.double_jump
    ev2 = release_event(t2, v0, release2)
    phase2 = _fly(movement, t2, x2, y2, vx2, v0, dj.steer_sign, dj.steer_cap,
                  [ev2] if ev2 else [], plan.floor_y)
    return bare, t2, tuple(phase2), eps1


def sampled_outcome(trajectory: JumpTrajectory, movement: MovementConfig,
                    target: Platform, eps1: float, eps2: float = 0.0,
                    release1: float | None = None,
                    release2: float | None = None) -> bool | None:
    """Reachability of a noisy variant (see _sampled_parts for the knobs).

    None means the perturbed second-jump point fell outside the first
    flight's horizontal range, so no variant exists for this draw.
    """
    parts = _sampled_parts(trajectory, movement, eps1, eps2, release1, release2)
    if parts is None:
        return None
    phase1, t_cut, phase2, shift = parts
    lo, hi, top = target.surface_left, target.surface_right, target.surface_top
    if _max_y_over_span(phase1, lo, hi, shift=shift, t_hi=t_cut) > top:
        return True
    return bool(phase2) and _max_y_over_span(phase2, lo, hi, shift=shift) > top


def sampled_reaches(trajectory: JumpTrajectory, movement: MovementConfig,
                    target: Platform, eps1: float, eps2: float = 0.0,
                    release1: float | None = None,
                    release2: float | None = None) -> bool:
    """Like sampled_outcome but treating an off-curve second jump as a miss."""
    return bool(sampled_outcome(trajectory, movement, target, eps1, eps2,
                                release1, release2))


def double_jump_air_speed(trajectory: JumpTrajectory) -> float:
    """Horizontal speed at the optimal second-jump point (0 for single jumps)."""
    plan = trajectory.plan
    if plan.double_jump is None or plan.first_flight is None:
        return 0.0
    _, _, vx, _ = _state_at(plan.first_flight, plan.double_jump.t_optimal)
    return abs(vx)


def sampled_landing(trajectory: JumpTrajectory, movement: MovementConfig,
                    target: Platform, eps1: float, eps2: float = 0.0,
                    release1: float | None = None,
                    release2: float | None = None) -> tuple[float, float] | None:
    """Landing point of a noisy variant, or None when it misses."""
    parts = _sampled_parts(trajectory, movement, eps1, eps2, release1, release2)
    if parts is None:
        return None
    phase1, t_cut, phase2, shift = parts
    lo, hi, top = target.surface_left, target.surface_right, target.surface_top
    hit = _landing_on_span(phase1, lo, hi, top, shift=shift, t_hi=t_cut)
    if hit is None and phase2:
        hit = _landing_on_span(phase2, lo, hi, top, shift=shift)
    return hit
