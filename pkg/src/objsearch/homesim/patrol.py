"""Daily patrol routine producing the observation stream.

The robot walks a fixed room-by-room landmark cycle every day. Each tick
yields the robot pose and the ground-truth visible entity list at that pose;
the stream is what memory construction consumes.
"""

from __future__ import annotations

from ..core import Pose, SymbolicObservation, Timestep, render_caption
from .world import Schedule, WorldState

MIN_PATROL_DAYS = 3
MAX_PATROL_DAYS = 6


def patrol_route(world: WorldState) -> list[str]:
    """Landmark visiting order for one day: rooms in declaration order, then
    landmarks in declaration order within each room."""
    ordered: list[str] = []
    for room_id in world.rooms:
        ordered.extend(
            lm.landmark_id for lm in world.landmarks.values() if lm.room_id == room_id
        )
    return ordered


def patrol(
    world: WorldState,
    schedule: Schedule,
    days: int,
    ticks_per_day: int | None = None,
) -> list[tuple[Timestep, Pose, SymbolicObservation]]:
    """Run the patrol and return the observation stream.

    The stream has exactly days * ticks_per_day elements and every landmark is
    visited at least once per day (ticks_per_day must be no smaller than the
    route length). The world is mutated: its clock ends at task time T.
    """
    if not (MIN_PATROL_DAYS <= days <= MAX_PATROL_DAYS):
        raise ValueError(f"days must lie in [{MIN_PATROL_DAYS}, {MAX_PATROL_DAYS}], got {days}")
    tpd = world.ticks_per_day if ticks_per_day is None else ticks_per_day
    if tpd != world.ticks_per_day:
        raise ValueError("ticks_per_day must match the world configuration")
    route = patrol_route(world)
    if tpd < len(route):
        raise ValueError(f"ticks_per_day={tpd} cannot cover the {len(route)}-landmark route")
    stream: list[tuple[Timestep, Pose, SymbolicObservation]] = []
    for day in range(days):
        for tick in range(tpd):
            world.sync(schedule)
            landmark_id = route[tick * len(route) // tpd]
            world.robot_pose = world.approach_pose(landmark_id)
            world.robot_focus = landmark_id
            entities = tuple(world.visible_entities())
            obs = SymbolicObservation(
                visible_entities=entities,
                caption=render_caption(entities, mode="oracle"),
            )
            stream.append((Timestep.at(world.clock, tpd), world.robot_pose, obs))
            world.clock += 1
    world.sync(schedule)
    return stream


def room_segment(world: WorldState, room_id: str, ticks_per_day: int | None = None) -> tuple[int, int]:
    """Tick range [start, end] within a day during which the patrol is in the
    given room."""
    tpd = world.ticks_per_day if ticks_per_day is None else ticks_per_day
    route = patrol_route(world)
    n = len(route)
    ticks = []
    for i, landmark_id in enumerate(route):
        if world.landmarks[landmark_id].room_id != room_id:
            continue
        start = -(-i * tpd // n)  # ceil
        end = -(-(i + 1) * tpd // n) - 1
        if end >= start:
            ticks.append((start, end))
    if not ticks:
        raise ValueError(f"room {room_id} has no landmarks on the route")
    return min(t[0] for t in ticks), max(t[1] for t in ticks)


def fast_forward(world: WorldState, schedule: Schedule, days: int) -> None:
    """Advance a fresh world to task time T without producing observations.

    Ends in the same state as patrol() for the same arguments (same clock,
    same applied moves, same final pose).
    """
    route = patrol_route(world)
    world.clock = days * world.ticks_per_day
    world.sync(schedule)
    world.robot_pose = world.approach_pose(route[-1])
    world.robot_focus = route[-1]


def write_stream(
    path: str,
    stream: list[tuple[Timestep, Pose, SymbolicObservation]],
    meta: dict | None = None,
) -> None:
    """Write an observation stream file: header, one tick per line, checksum.

    Captions are not stored; they are a function of the entity lists and the
    caption mode chosen at memory-build time.
    """
    import hashlib

    from ..core import canonical_dumps

    header = {"format": "patrol-stream", "version": 1, "count": len(stream)}
    header.update(meta or {})
    lines = [canonical_dumps(header)]
    for t, pose, obs in stream:
        lines.append(
            canonical_dumps(
                {
                    "t": t.to_dict(),
                    "pose": pose.to_dict(),
                    "entities": [e.to_dict() for e in obs.visible_entities],
                }
            )
        )
    body = "\n".join(lines) + "\n"
    checksum = hashlib.sha256(body.encode("utf-8")).hexdigest()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(body)
        fh.write(canonical_dumps({"sha256": checksum}) + "\n")


def read_stream(path: str) -> tuple[dict, list[tuple[Timestep, Pose, SymbolicObservation]]]:
    """Read a stream file back, verifying its checksum. Observations carry
    oracle captions so the stream is directly usable."""
    import hashlib

    from ..core import canonical_loads, render_caption
    from ..core import VisibleEntity

    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    lines = text.splitlines()
    if len(lines) < 2:
        raise ValueError("stream file too short: missing header or checksum")
    try:
        stored = canonical_loads(lines[-1])["sha256"]
    except Exception as exc:
        raise ValueError(f"stream file missing checksum line: {exc}") from exc
    body = "\n".join(lines[:-1]) + "\n"
    if hashlib.sha256(body.encode("utf-8")).hexdigest() != stored:
        raise ValueError("stream file checksum mismatch: corrupt or truncated")
    header = canonical_loads(lines[0])
    stream = []
    for i, line in enumerate(lines[1:-1]):
        try:
            d = canonical_loads(line)
            entities = tuple(VisibleEntity.from_dict(e) for e in d["entities"])
            obs = SymbolicObservation(
                visible_entities=entities, caption=render_caption(entities, mode="oracle")
            )
            stream.append((Timestep.from_dict(d["t"]), Pose.from_dict(d["pose"]), obs))
        except Exception as exc:
            raise ValueError(f"stream record {i}: {exc}") from exc
    if len(stream) != int(header.get("count", len(stream))):
        raise ValueError("stream record count does not match header")
    return header, stream


__all__ = [
    "MAX_PATROL_DAYS",
    "MIN_PATROL_DAYS",
    "fast_forward",
    "patrol",
    "patrol_route",
    "read_stream",
    "room_segment",
    "write_stream",
]
