"""Desk-scale dynamic household simulator."""

from .patrol import (
    MAX_PATROL_DAYS,
    MIN_PATROL_DAYS,
    fast_forward,
    patrol,
    patrol_route,
    read_stream,
    room_segment,
    write_stream,
)
from .scenegraph import SceneGraph, export_scene_graph, graph_diff
from .skills import Detection, SkillResult, detect, navigate, open_receptacle, pick
from .world import (
    DEFAULT_TICKS_PER_DAY,
    LOC_INSIDE,
    LOC_INVENTORY,
    LOC_LANDMARK,
    Landmark,
    Location,
    Move,
    Room,
    SCENE_IDS,
    Schedule,
    WorldObject,
    WorldState,
    ambient_schedule,
    generate_world,
    scene_casting,
)

__all__ = [
    "DEFAULT_TICKS_PER_DAY",
    "Detection",
    "LOC_INSIDE",
    "LOC_INVENTORY",
    "LOC_LANDMARK",
    "Landmark",
    "Location",
    "MAX_PATROL_DAYS",
    "MIN_PATROL_DAYS",
    "Move",
    "Room",
    "SCENE_IDS",
    "SceneGraph",
    "Schedule",
    "SkillResult",
    "WorldObject",
    "WorldState",
    "ambient_schedule",
    "detect",
    "export_scene_graph",
    "fast_forward",
    "generate_world",
    "graph_diff",
    "navigate",
    "open_receptacle",
    "patrol",
    "patrol_route",
    "read_stream",
    "room_segment",
    "pick",
    "scene_casting",
    "write_stream",
]
