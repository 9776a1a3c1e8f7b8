"""Benchmark task generation: five instruction families across three task
types, with per-task schedules that guarantee each family's defining hazard.

Full-scale counts (per_family=15 over 3 scenes: 225 visible, 90 interactive,
45 commonsense) and the desk-scale default (per_family=3: 45/30/9) come from
the same arithmetic: visible = 5 * scenes * n, interactive = 5 * scenes *
ceil(2n/5), commonsense = scenes * n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from ..core import Instruction, stable_seed
from ..homesim import (
    LOC_INSIDE,
    LOC_LANDMARK,
    Location,
    Move,
    SCENE_IDS,
    Schedule,
    WorldState,
    ambient_schedule,
    generate_world,
    scene_casting,
)
from ..homesim.patrol import room_segment
from ..homesim.world import _scene_template  # scene structure tables

VISIBLE_FAMILIES = ("class", "attribute", "spatial", "spatial_temporal", "spatial_frequentist")

DEFAULT_DAYS = 3
DEFAULT_TICKS_PER_DAY = 200

OPTIMAL_VISIBLE = {"perception": 1, "navigation": 1, "manipulation": 1}
OPTIMAL_INTERACTIVE = {"perception": 2, "navigation": 1, "manipulation": 2}


class GenerationError(RuntimeError):
    """A family constraint cannot be satisfied in the requested world."""


@dataclass(frozen=True)
class TaskSpec:
    task_id: str
    instruction: str
    family: str
    type: str
    target_entity: str
    optimal_counts: dict
    scene_id: int
    layout_seed: int
    days: int
    ticks_per_day: int
    schedule: Schedule
    task_seed: int

    def instruction_full(self) -> Instruction:
        return Instruction(text=self.instruction, family=self.family, type=self.type)

    def to_dict(self) -> dict:
        return {
            "task_id": self.task_id,
            "instruction": self.instruction,
            "family": self.family,
            "type": self.type,
            "target_entity": self.target_entity,
            "optimal_counts": dict(self.optimal_counts),
            "scene_id": self.scene_id,
            "layout_seed": self.layout_seed,
            "days": self.days,
            "ticks_per_day": self.ticks_per_day,
            "schedule": self.schedule.to_dict(),
            "task_seed": self.task_seed,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "TaskSpec":
        return cls(
            task_id=str(d["task_id"]),
            instruction=str(d["instruction"]),
            family=str(d["family"]),
            type=str(d["type"]),
            target_entity=str(d["target_entity"]),
            optimal_counts=dict(d["optimal_counts"]),
            scene_id=int(d["scene_id"]),
            layout_seed=int(d["layout_seed"]),
            days=int(d["days"]),
            ticks_per_day=int(d["ticks_per_day"]),
            schedule=Schedule.from_dict(d["schedule"]),
            task_seed=int(d["task_seed"]),
        )


def default_prior_table() -> dict[str, str]:
    """Class-to-room prior covering every hidden class in the three scenes."""
    table: dict[str, str] = {}
    for scene_id in SCENE_IDS:
        hidden = scene_casting(scene_id)["hidden"]
        for entity_id, class_label, _, _ in _scene_template(scene_id)["objects"]:
            if entity_id in hidden:
                table[class_label] = hidden[entity_id]
    return table


# ---------------------------------------------------------------------------
# Family builders


def _world_for(scene_id: int, layout_seed: int, ticks_per_day: int) -> WorldState:
    world, _ = generate_world(layout_seed, scene_id, ticks_per_day=ticks_per_day)
    return world


def _home_landmark(world: WorldState, entity_id: str) -> str:
    loc = world.objects[entity_id].location
    if loc.kind != LOC_LANDMARK:
        raise GenerationError(f"{entity_id} does not start in the open")
    return loc.ref


def _landmark_name(world: WorldState, landmark_id: str) -> str:
    return world.landmarks[landmark_id].name


def _free_landmark(world: WorldState, casting: dict, avoid_room: str, idx: int) -> str:
    options = [
        lm
        for lm in casting["free_landmarks"]
        if world.landmarks[lm].room_id != avoid_room
    ]
    if not options:
        raise GenerationError("no free landmark outside the target's home room")
    return options[idx % len(options)]


def _ambient(world: WorldState, casting: dict, task_seed: int, days: int) -> tuple[Move, ...]:
    schedule = ambient_schedule(
        world, casting["drifters"], seed=stable_seed("task-ambient", task_seed), days=days
    )
    return schedule.moves


def _descriptor(world: WorldState, entity_id: str, with_attrs: bool = True) -> str:
    obj = world.objects[entity_id]
    if with_attrs and obj.attributes:
        return " ".join([*obj.attributes, obj.class_label])
    return obj.class_label


def build_task(
    scene_id: int,
    family: str,
    task_type: str,
    idx: int,
    seed: int,
    days: int = DEFAULT_DAYS,
    ticks_per_day: int = DEFAULT_TICKS_PER_DAY,
) -> TaskSpec:
    """Construct one task whose schedule realizes the family hazard."""
    task_seed = stable_seed("task", seed, scene_id, family, task_type, idx)
    layout_seed = stable_seed("layout", seed, scene_id)
    world = _world_for(scene_id, layout_seed, ticks_per_day)
    casting = scene_casting(scene_id)
    moves: list[Move] = list(_ambient(world, casting, task_seed, days))

    if task_type == "commonsense":
        hidden = sorted(casting["hidden"])
        target = hidden[idx % len(hidden)]
        instruction = f"bring me the {world.objects[target].class_label}"
        optimal = _commonsense_optimal(world, target)
        family = "commonsense"
    elif task_type == "interactive":
        target, instruction = _interactive_cast(world, casting, family, idx)
        pairs = casting["twin_pairs"]
        pair = pairs[idx % len(pairs)]
        twin = pair[(idx // len(pairs)) % 2]
        # The target surfaces on top of the twin just as the patrol reaches
        # that room on the final day, so the sighting lands in memory; it
        # disappears inside at task time.
        twin_room = world.landmarks[twin].room_id
        seg_start, _ = room_segment(world, twin_room)
        moves.append(Move(days - 1, max(1, seg_start), target, Location(LOC_LANDMARK, twin)))
        moves.append(Move(days, 0, target, Location(LOC_INSIDE, twin)))
        optimal = dict(OPTIMAL_INTERACTIVE)
    else:
        target, instruction, extra = _visible_cast(world, casting, family, idx, days)
        moves.extend(extra)
        optimal = dict(OPTIMAL_VISIBLE)

    schedule = Schedule(seed=task_seed, moves=tuple(moves))
    task = TaskSpec(
        task_id=f"s{scene_id}-{task_type}-{family}-{idx}",
        instruction=instruction,
        family=family,
        type=task_type,
        target_entity=target,
        optimal_counts=optimal,
        scene_id=scene_id,
        layout_seed=layout_seed,
        days=days,
        ticks_per_day=ticks_per_day,
        schedule=schedule,
        task_seed=task_seed,
    )
    check_family_hazard(task)
    return task


def _visible_cast(
    world: WorldState, casting: dict, family: str, idx: int, days: int
) -> tuple[str, str, list[Move]]:
    if family == "class":
        target = casting["unique_class"]
        return target, f"find the {world.objects[target].class_label}", []
    if family == "attribute":
        pair = casting["attribute_pair"]
        target = pair[idx % 2]
        return target, f"find the {_descriptor(world, target)}", []
    if family == "spatial":
        pair = casting["spatial_pair"]
        target = pair[idx % 2]
        lname = _landmark_name(world, _home_landmark(world, target))
        return target, f"find the {world.objects[target].class_label} on the {lname}", []
    if family == "spatial_temporal":
        pair = casting["spatial_pair"]
        target = pair[idx % 2]
        home = _home_landmark(world, target)
        lname = _landmark_name(world, home)
        dest = _free_landmark(world, casting, world.landmarks[home].room_id, idx)
        moves = [Move(days, 0, target, Location(LOC_LANDMARK, dest))]
        cls = world.objects[target].class_label
        return target, f"find the {cls} that was on the {lname} yesterday", moves
    if family == "spatial_frequentist":
        pair = casting["attribute_pair"]
        target = pair[idx % 2]
        home = _home_landmark(world, target)
        lname = _landmark_name(world, home)
        dest = _free_landmark(world, casting, world.landmarks[home].room_id, idx)
        moves = [Move(days - 1, 0, target, Location(LOC_LANDMARK, dest))]
        descr = _descriptor(world, target)
        return target, f"find the {descr} that is usually by the {lname}", moves
    raise GenerationError(f"unknown family {family!r}")


def _interactive_cast(
    world: WorldState, casting: dict, family: str, idx: int
) -> tuple[str, str]:
    if family == "class":
        target = casting["unique_class"]
        return target, f"find the {world.objects[target].class_label}"
    if family == "attribute":
        target = casting["attribute_pair"][idx % 2]
        return target, f"find the {_descriptor(world, target)}"
    if family == "spatial":
        target = casting["spatial_pair"][idx % 2]
        lname = _landmark_name(world, _home_landmark(world, target))
        cls = world.objects[target].class_label
        return target, f"find the {cls} that was by the {lname}"
    if family == "spatial_temporal":
        target = casting["spatial_pair"][idx % 2]
        lname = _landmark_name(world, _home_landmark(world, target))
        cls = world.objects[target].class_label
        return target, f"find the {cls} that was on the {lname} yesterday"
    if family == "spatial_frequentist":
        target = casting["attribute_pair"][idx % 2]
        lname = _landmark_name(world, _home_landmark(world, target))
        return target, f"find the {_descriptor(world, target)} that is usually by the {lname}"
    raise GenerationError(f"unknown family {family!r}")


def _commonsense_optimal(world: WorldState, target: str) -> dict:
    """Shortest ground-truth plan: navigate, (open), detect, pick."""
    loc = world.objects[target].location
    if loc.kind == LOC_INSIDE:
        return {"perception": 1, "navigation": 1, "manipulation": 2}
    return {"perception": 1, "navigation": 1, "manipulation": 1}


def interactive_per_family(per_family: int) -> int:
    return max(1, math.ceil(2 * per_family / 5))


def generate_suite(
    scenes: Iterable[int] = SCENE_IDS,
    per_family: int = 3,
    seed: int = 0,
    days: int = DEFAULT_DAYS,
    ticks_per_day: int = DEFAULT_TICKS_PER_DAY,
) -> list[TaskSpec]:
    """Emit the full task suite across scenes, families, and types."""
    if per_family < 1:
        raise GenerationError("per_family must be >= 1")
    tasks: list[TaskSpec] = []
    n_interactive = interactive_per_family(per_family)
    for scene_id in scenes:
        for family in VISIBLE_FAMILIES:
            for idx in range(per_family):
                tasks.append(build_task(scene_id, family, "visible", idx, seed, days, ticks_per_day))
        for family in VISIBLE_FAMILIES:
            for idx in range(n_interactive):
                tasks.append(build_task(scene_id, family, "interactive", idx, seed, days, ticks_per_day))
        for idx in range(per_family):
            tasks.append(build_task(scene_id, "commonsense", "commonsense", idx, seed, days, ticks_per_day))
    return tasks


# ---------------------------------------------------------------------------
# Ground-truth hazard checks and adjudication


def _location_at(task: TaskSpec, world: WorldState, entity_id: str, tick: int) -> Location:
    loc = world.objects[entity_id].location
    for move in task.schedule.moves:
        if move.entity_id != entity_id:
            continue
        if move.absolute_tick(task.ticks_per_day) <= tick:
            loc = move.location
    return loc


def check_family_hazard(task: TaskSpec) -> None:
    """Verify the family's defining condition against ground truth."""
    world = _world_for(task.scene_id, task.layout_seed, task.ticks_per_day)
    target = world.objects.get(task.target_entity)
    if target is None:
        raise GenerationError(f"{task.task_id}: target missing from world")
    task_tick = task.days * task.ticks_per_day
    loc_now = _location_at(task, world, task.target_entity, task_tick)
    same_class = [
        o for o in world.objects.values() if o.class_label == target.class_label
    ]

    if task.type == "commonsense":
        if loc_now.kind != LOC_INSIDE:
            raise GenerationError(f"{task.task_id}: commonsense target must stay hidden")
        if any(m.entity_id == task.target_entity for m in task.schedule.moves):
            raise GenerationError(f"{task.task_id}: commonsense target must never move")
        return
    if task.type == "interactive":
        if loc_now.kind != LOC_INSIDE:
            raise GenerationError(f"{task.task_id}: interactive target must end inside a receptacle")
        recep = world.landmarks[loc_now.ref]
        twins = [
            lm
            for lm in world.landmarks.values()
            if lm.is_receptacle and lm.name == recep.name and lm.room_id == recep.room_id
        ]
        if len(twins) < 2:
            raise GenerationError(f"{task.task_id}: receptacle {recep.landmark_id} has no identical twin")
        return

    if task.family == "class":
        if len(same_class) != 1:
            raise GenerationError(f"{task.task_id}: class must have a unique instance")
    elif task.family == "attribute":
        if len(same_class) < 2:
            raise GenerationError(f"{task.task_id}: attribute family needs >= 2 instances")
        matching = [o for o in same_class if o.attributes == target.attributes]
        if len(matching) != 1:
            raise GenerationError(f"{task.task_id}: attributes must single out the target")
    elif task.family == "spatial":
        if len(same_class) < 2:
            raise GenerationError(f"{task.task_id}: spatial family needs >= 2 instances")
        landmarks = {
            _location_at(task, world, o.entity_id, task_tick).ref for o in same_class
        }
        if len(landmarks) < 2:
            raise GenerationError(f"{task.task_id}: same-class instances share a landmark")
    elif task.family == "spatial_temporal":
        ref_tick = (task.days - 1) * task.ticks_per_day  # start of the referenced day
        loc_ref = _location_at(task, world, task.target_entity, ref_tick)
        if loc_ref == loc_now:
            raise GenerationError(f"{task.task_id}: target did not move after the referenced day")
    elif task.family == "spatial_frequentist":
        counts: dict[str, int] = {}
        for day in range(task.days):
            loc = _location_at(task, world, task.target_entity, day * task.ticks_per_day)
            if loc.kind == LOC_LANDMARK:
                counts[loc.ref] = counts.get(loc.ref, 0) + 1
        if not counts:
            raise GenerationError(f"{task.task_id}: frequentist target never in the open")
        modal, modal_days = max(counts.items(), key=lambda kv: kv[1])
        final = _location_at(task, world, task.target_entity, (task.days - 1) * task.ticks_per_day)
        if modal_days <= task.days - modal_days:
            raise GenerationError(f"{task.task_id}: no strict modal landmark")
        if final.kind == LOC_LANDMARK and final.ref == modal:
            raise GenerationError(f"{task.task_id}: target still at its modal landmark on the final day")


def adjudicate(task: TaskSpec, result) -> bool:
    """Success iff the ground-truth target was picked within the budget.

    Takes an EpisodeResult or anything exposing a .trace with steps; the
    budget guard re-checks step indices even though the loop enforces it.
    """
    trace = result.trace if hasattr(result, "trace") else result
    budget = len(trace.steps) + trace.remaining_budget
    for i, (action, outcome) in enumerate(trace.steps, start=1):
        if i > budget:
            return False
        if (
            action.tool == "pick"
            and outcome.payload.get("success")
            and outcome.payload.get("entity") == task.target_entity
        ):
            return True
    return False


def optimal_counts(task: TaskSpec) -> dict:
    """Protocol constants for visible/interactive; shortest ground-truth plan
    for commonsense."""
    if task.type == "visible":
        return dict(OPTIMAL_VISIBLE)
    if task.type == "interactive":
        return dict(OPTIMAL_INTERACTIVE)
    world = _world_for(task.scene_id, task.layout_seed, task.ticks_per_day)
    return _commonsense_optimal(world, task.target_entity)


__all__ = [
    "DEFAULT_DAYS",
    "DEFAULT_TICKS_PER_DAY",
    "GenerationError",
    "OPTIMAL_INTERACTIVE",
    "OPTIMAL_VISIBLE",
    "TaskSpec",
    "VISIBLE_FAMILIES",
    "adjudicate",
    "build_task",
    "check_family_hazard",
    "default_prior_table",
    "generate_suite",
    "interactive_per_family",
    "optimal_counts",
]
