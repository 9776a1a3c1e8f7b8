"""Ground-truth scene-graph snapshots of the world, one per day.

Snapshots reflect the environment state as of the end of the requested day.
Node ids are the stable entity/landmark/room ids, so diffing two days yields
exactly the edges that changed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .world import LOC_INSIDE, LOC_LANDMARK, WorldState, generate_world


@dataclass(frozen=True)
class SceneGraph:
    day: int
    nodes: tuple[dict, ...]
    edges: tuple[tuple[str, str, str], ...]

    def to_dict(self) -> dict:
        return {
            "day": self.day,
            "nodes": [dict(n) for n in self.nodes],
            "edges": [list(e) for e in self.edges],
        }

    def node(self, node_id: str) -> dict | None:
        for n in self.nodes:
            if n["id"] == node_id:
                return dict(n)
        return None

    def edges_from(self, src: str) -> list[tuple[str, str, str]]:
        return [e for e in self.edges if e[0] == src]


def graph_diff(a: SceneGraph, b: SceneGraph) -> dict:
    """Edges added and removed going from snapshot a to snapshot b."""
    ea, eb = set(a.edges), set(b.edges)
    return {
        "added": sorted(eb - ea),
        "removed": sorted(ea - eb),
    }


def _build_graph(world: WorldState, day: int) -> SceneGraph:
    nodes: list[dict] = []
    edges: list[tuple[str, str, str]] = []
    for room in world.rooms.values():
        nodes.append({"id": room.room_id, "kind": "room"})
    for lm in world.landmarks.values():
        nodes.append(
            {
                "id": lm.landmark_id,
                "kind": "receptacle" if lm.is_receptacle else "landmark",
                "label": lm.name,
                "room": lm.room_id,
                "open": world.receptacle_open.get(lm.landmark_id, False) if lm.is_receptacle else None,
            }
        )
        edges.append((lm.landmark_id, "in_room", lm.room_id))
    for obj in world.objects.values():
        nodes.append(
            {
                "id": obj.entity_id,
                "kind": "object",
                "label": obj.class_label,
                "attributes": list(obj.attributes),
            }
        )
        loc = obj.location
        if loc.kind == LOC_LANDMARK:
            edges.append((obj.entity_id, "at", loc.ref))
        elif loc.kind == LOC_INSIDE:
            edges.append((obj.entity_id, "inside", loc.ref))
        else:
            edges.append((obj.entity_id, "held_by", "robot"))
    nodes.sort(key=lambda n: n["id"])
    edges.sort()
    return SceneGraph(day=day, nodes=tuple(nodes), edges=tuple(edges))


def export_scene_graph(world: WorldState, day: int) -> SceneGraph:
    """Snapshot of the world as of the end of the given day.

    Earlier days are reconstructed by replaying the moves the world has
    already applied, so the export is valid for any fully elapsed day.
    """
    tpd = world.ticks_per_day
    if day < 0 or (day + 1) * tpd > world.clock:
        raise ValueError(
            f"day {day} out of range: world clock {world.clock} has completed "
            f"{world.clock // tpd} day(s)"
        )
    end_tick = (day + 1) * tpd - 1
    replica, _ = generate_world(world.layout_seed, world.scene_id, ticks_per_day=tpd)
    for move in world.applied_moves:
        if move.absolute_tick(tpd) <= end_tick:
            obj = replica.objects.get(move.entity_id)
            if obj is not None:
                obj.location = move.location
    return _build_graph(replica, day)


__all__ = ["SceneGraph", "export_scene_graph", "graph_diff"]
