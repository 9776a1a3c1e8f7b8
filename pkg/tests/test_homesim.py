"""Simulator: world generation, patrol streams, skills, scene graphs."""

import pytest

from objsearch.core import CONTAINMENT_INSIDE_OPEN
from objsearch.homesim import (
    LOC_INSIDE,
    LOC_LANDMARK,
    Location,
    Move,
    SCENE_IDS,
    Schedule,
    detect,
    export_scene_graph,
    fast_forward,
    generate_world,
    graph_diff,
    navigate,
    open_receptacle,
    patrol,
    patrol_route,
    pick,
    read_stream,
    room_segment,
    write_stream,
)


def world_with(moves=()):
    world, _ = generate_world(1, 1)
    return world, Schedule(seed=0, moves=tuple(moves))


# -- generation -----------------------------------------------------------------


def test_generation_deterministic():
    w1, s1 = generate_world(1, 1)
    w2, s2 = generate_world(1, 1)
    assert w1.to_dict() == w2.to_dict()
    assert s1.to_dict() == s2.to_dict()


def test_three_scenes_available():
    assert SCENE_IDS == (1, 2, 3)
    for scene in SCENE_IDS:
        world, _ = generate_world(0, scene)
        assert world.scene_id == scene
    with pytest.raises(ValueError):
        generate_world(0, 4)


@pytest.mark.parametrize("scene", SCENE_IDS)
def test_scene_structural_minimums(scene):
    world, _ = generate_world(5, scene)
    assert len(world.rooms) >= 4
    assert len(world.landmarks) >= 8
    assert len(world.objects) >= 12
    assert len({o.class_label for o in world.objects.values()}) >= 5
    # At least two visually identical receptacle pairs in the same room.
    twins = {}
    for lm in world.landmarks.values():
        if lm.is_receptacle:
            twins.setdefault((lm.name, lm.room_id), []).append(lm.landmark_id)
    pairs = [ids for ids in twins.values() if len(ids) >= 2]
    assert len(pairs) >= 2
    # Attribute variation within at least one class.
    by_class = {}
    for o in world.objects.values():
        by_class.setdefault(o.class_label, set()).add(o.attributes)
    assert any(len(v) >= 2 for v in by_class.values())


@pytest.mark.parametrize("scene", SCENE_IDS)
def test_referential_integrity(scene):
    world, schedule = generate_world(9, scene)
    for obj in world.objects.values():
        assert obj.location.kind in (LOC_LANDMARK, LOC_INSIDE)
        assert obj.location.ref in world.landmarks
    for move in schedule.moves:
        assert move.entity_id in world.objects
        assert move.location.ref in world.landmarks


# -- patrol ----------------------------------------------------------------------


def test_patrol_length_and_days():
    world, schedule = generate_world(2, 1)
    stream = patrol(world, schedule, days=3)
    assert len(stream) == 600
    assert stream[0][0].value == 0
    assert stream[-1][0].value == 599
    assert stream[-1][0].day == 2
    assert world.clock == 600


def test_patrol_day_range_enforced():
    world, schedule = generate_world(2, 1)
    with pytest.raises(ValueError):
        patrol(world, schedule, days=2)
    world2, schedule2 = generate_world(2, 1)
    with pytest.raises(ValueError):
        patrol(world2, schedule2, days=7)


def test_patrol_full_scale_band():
    world, schedule = generate_world(2, 1, ticks_per_day=1300)
    stream = patrol(world, schedule, days=3)
    assert len(stream) == 3900
    per_day = len(stream) // 3
    assert 1200 <= per_day <= 1500


def test_patrol_visits_every_landmark_each_day():
    world, schedule = generate_world(2, 1)
    stream = patrol(world, schedule, days=3)
    tpd = world.ticks_per_day
    route = set(patrol_route(world))
    for day in range(3):
        focused = set()
        for t, pose, obs in stream[day * tpd : (day + 1) * tpd]:
            for lm in world.landmarks.values():
                if lm.room_id == pose.room_id:
                    focused.add(lm.landmark_id)
        # Room-scoped focus: being in the room covers its landmarks.
        assert focused == route


def test_patrol_pose_inside_room_bounds():
    world, schedule = generate_world(2, 1)
    stream = patrol(world, schedule, days=3)
    for _, pose, _ in stream[:250]:
        assert world.rooms[pose.room_id].contains(pose.position)


def test_scheduled_move_visible_across_days():
    world, _ = generate_world(1, 1)
    move = Move(day=1, tick_of_day=0, entity_id="toy_1", location=Location(LOC_LANDMARK, "sofa"))
    schedule = Schedule(seed=0, moves=(move,))
    stream = patrol(world, schedule, days=3)
    tpd = world.ticks_per_day

    def seen_at(day):
        spots = set()
        for t, pose, obs in stream[day * tpd : (day + 1) * tpd]:
            for ent in obs.visible_entities:
                if ent.entity_id == "toy_1":
                    spots.add(ent.landmark_id)
        return spots

    assert seen_at(0) == {"bed"}
    assert seen_at(1) == {"sofa"}
    assert seen_at(2) == {"sofa"}


def test_fast_forward_matches_patrol_end_state():
    w1, s1 = generate_world(4, 2)
    patrol(w1, s1, days=3)
    w2, s2 = generate_world(4, 2)
    fast_forward(w2, s2, days=3)
    assert w1.clock == w2.clock
    assert w1.robot_focus == w2.robot_focus
    assert {o.entity_id: o.location for o in w1.objects.values()} == {
        o.entity_id: o.location for o in w2.objects.values()
    }


def test_stream_file_round_trip(tmp_path):
    world, schedule = generate_world(2, 1)
    stream = patrol(world, schedule, days=3)
    path = str(tmp_path / "stream.jsonl")
    write_stream(path, stream, meta={"config": {"ticks_per_day": 200}})
    header, loaded = read_stream(path)
    assert len(loaded) == len(stream)
    assert loaded[5][0] == stream[5][0]
    assert loaded[5][1] == stream[5][1]
    assert loaded[5][2].visible_entities == stream[5][2].visible_entities
    # Corruption is caught.
    text = open(path).read()
    open(path, "w").write(text.replace("toy", "tyo", 1))
    with pytest.raises(ValueError, match="checksum"):
        read_stream(path)


def test_room_segment_covers_whole_day():
    world, _ = generate_world(2, 1)
    segs = [room_segment(world, room) for room in world.rooms]
    assert segs[0][0] == 0
    assert segs[-1][1] == world.ticks_per_day - 1
    for (s0, e0), (s1, e1) in zip(segs, segs[1:]):
        assert e0 + 1 == s1


# -- skills -----------------------------------------------------------------------


def test_navigate_success_and_room():
    world, schedule = world_with()
    result = navigate(world, schedule, "study_desk")
    assert result.success
    assert world.robot_pose.room_id == "study"
    assert world.robot_focus == "study_desk"


def test_navigate_unknown_landmark_is_failure_not_exception():
    world, schedule = world_with()
    result = navigate(world, schedule, "nonexistent")
    assert not result.success and result.reason == "unknown landmark"


def test_clock_advances_per_skill():
    world, schedule = world_with()
    start = world.clock
    navigate(world, schedule, "sink")
    navigate(world, schedule, "sofa")
    assert world.clock == start + 2
    detect(world, schedule)
    assert world.clock == start + 3


def test_detect_sees_room_open_air():
    world, schedule = world_with()
    navigate(world, schedule, "sink")
    det = detect(world, schedule)
    ids = {e.entity_id for e in det.entities}
    assert "mug_1" in ids and "mug_2" in ids
    assert "folder_1" not in ids  # other room


def test_closed_receptacle_contents_hidden():
    world, schedule = world_with()
    navigate(world, schedule, "fridge")
    det = detect(world, schedule)
    assert "milk_1" not in {e.entity_id for e in det.entities}


def test_open_then_detect_reveals_contents():
    world, schedule = world_with()
    navigate(world, schedule, "fridge")
    assert open_receptacle(world, schedule, "fridge").success
    det = detect(world, schedule)
    milk = [e for e in det.entities if e.entity_id == "milk_1"]
    assert milk and milk[0].containment == CONTAINMENT_INSIDE_OPEN


def test_open_out_of_reach():
    world, schedule = world_with()
    navigate(world, schedule, "sofa")
    result = open_receptacle(world, schedule, "fridge")
    assert not result.success and result.reason == "out of reach"


def test_open_non_receptacle():
    world, schedule = world_with()
    navigate(world, schedule, "study_desk")
    result = open_receptacle(world, schedule, "study_desk")
    assert not result.success and result.reason == "not a receptacle"


def test_open_contents_only_visible_at_focus():
    world, schedule = world_with()
    navigate(world, schedule, "fridge")
    open_receptacle(world, schedule, "fridge")
    navigate(world, schedule, "sink")
    det = detect(world, schedule)
    assert "milk_1" not in {e.entity_id for e in det.entities}


def test_pick_visible_entity():
    world, schedule = world_with()
    navigate(world, schedule, "sink")
    detect(world, schedule)
    result = pick(world, schedule, "mug_1")
    assert result.success
    assert world.inventory == ["mug_1"]
    assert world.objects["mug_1"].location.kind == "inventory"


def test_pick_hidden_entity_fails():
    world, schedule = world_with()
    navigate(world, schedule, "fridge")
    result = pick(world, schedule, "milk_1")
    assert not result.success and result.reason == "not visible"


def test_pick_already_held():
    world, schedule = world_with()
    navigate(world, schedule, "sink")
    pick(world, schedule, "mug_1")
    result = pick(world, schedule, "mug_1")
    assert not result.success and result.reason == "already held"


def test_object_conservation_under_moves_and_picks():
    world, schedule = world_with(
        [Move(0, 0, "toy_1", Location(LOC_LANDMARK, "sofa"))]
    )
    before = sorted(world.objects)
    patrol(world, schedule, days=3)
    navigate(world, schedule, "sink")
    pick(world, schedule, "mug_1")
    assert sorted(world.objects) == before


def test_occlusion_soundness_randomized():
    import random

    rng = random.Random(0)
    for trial in range(10):
        world, schedule = generate_world(rng.randrange(100), rng.choice(SCENE_IDS))
        landmarks = list(world.landmarks)
        for _ in range(15):
            navigate(world, schedule, rng.choice(landmarks))
            if rng.random() < 0.3 and world.robot_focus in world.receptacle_open:
                open_receptacle(world, schedule, world.robot_focus)
            det = detect(world, schedule)
            for ent in det.entities:
                obj = world.objects[ent.entity_id]
                if obj.location.kind == LOC_INSIDE:
                    assert world.receptacle_open[obj.location.ref]
                    assert world.robot_focus == obj.location.ref


# -- scene graphs --------------------------------------------------------------------


def graph_world(days=3):
    world, _ = generate_world(1, 1)
    move = Move(day=1, tick_of_day=0, entity_id="toy_1", location=Location(LOC_LANDMARK, "sofa"))
    schedule = Schedule(seed=0, moves=(move,))
    patrol(world, schedule, days=days)
    return world


def test_scene_graph_at_edge():
    world = graph_world()
    g0 = export_scene_graph(world, 0)
    assert ("mug_1", "at", "sink") in g0.edges
    assert ("toy_1", "at", "bed") in g0.edges


def test_scene_graph_day_diff_is_exactly_the_move():
    world = graph_world()
    g0 = export_scene_graph(world, 0)
    g1 = export_scene_graph(world, 1)
    diff = graph_diff(g0, g1)
    assert diff["added"] == [("toy_1", "at", "sofa")]
    assert diff["removed"] == [("toy_1", "at", "bed")]


def test_scene_graph_stable_node_ids():
    world = graph_world()
    for day in range(3):
        g = export_scene_graph(world, day)
        assert g.node("mug_1") is not None
        assert g.node("mug_1")["label"] == "mug"


def test_scene_graph_day_out_of_range():
    world = graph_world()
    with pytest.raises(ValueError):
        export_scene_graph(world, 3)
    with pytest.raises(ValueError):
        export_scene_graph(world, -1)


def test_scene_graph_includes_rooms_landmarks_containment():
    world = graph_world()
    g = export_scene_graph(world, 0)
    kinds = {n["kind"] for n in g.nodes}
    assert kinds == {"room", "landmark", "receptacle", "object"}
    assert ("milk_1", "inside", "fridge") in g.edges
    assert ("sink", "in_room", "kitchen") in g.edges
