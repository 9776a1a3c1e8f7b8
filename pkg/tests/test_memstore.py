"""Memory store: construction, the three query modalities against linear-scan
oracles, raw retrieval, and file persistence."""

import math
import random
import threading

import pytest

from objsearch.core import MemoryRecord, Pose, SymbolicObservation, Timestep, VisibleEntity
from objsearch.embed import Embedder, EmbedderConfig
from objsearch.homesim import generate_world, patrol
from objsearch.memstore import (
    IntegrityError,
    LongTermMemory,
    build,
    load,
    persist,
    SCORE_DECIMALS,
)

EMB = Embedder(EmbedderConfig(d=64))


def synthetic_record(t, caption, pos, ticks_per_day=200):
    ent = VisibleEntity(
        entity_id=f"e{t}", class_label="mug", attributes=(), landmark_id="sink"
    )
    return MemoryRecord(
        t=Timestep.at(t, ticks_per_day),
        pose=Pose(position=pos, yaw=0.0, room_id="kitchen"),
        embedding=EMB(caption),
        raw=SymbolicObservation(visible_entities=(ent,), caption=caption),
    )


def fill(memory, specs):
    for t, caption, pos in specs:
        memory.append(synthetic_record(t, caption, pos))
    return memory


def new_memory(**kw):
    args = dict(d=64, ticks_per_day=200)
    args.update(kw)
    return LongTermMemory(**args)


# -- oracles ---------------------------------------------------------------------


def oracle_semantic(memory, qvec, r):
    scored = [
        (round(float(rec.embedding @ qvec), SCORE_DECIMALS), i)
        for i, rec in enumerate(memory.records)
    ]
    scored.sort(key=lambda s: (-s[0], s[1]))
    return [i for _, i in scored[:r]]


def oracle_temporal_point(memory, center, r):
    scored = [(abs(rec.t.value - center), i) for i, rec in enumerate(memory.records)]
    scored.sort(key=lambda s: (s[0], s[1]))
    return [i for _, i in scored[:r]]


def oracle_temporal_window(memory, d0, d1, r):
    hits = [
        (rec.t.value, i)
        for i, rec in enumerate(memory.records)
        if d0 <= rec.t.value // memory.ticks_per_day <= d1
    ]
    hits.sort(key=lambda s: (-s[0], s[1]))
    return [i for _, i in hits[:r]]


def oracle_spatial(memory, center, radius, r):
    scored = []
    for i, rec in enumerate(memory.records):
        d = round(math.dist(rec.pose.position, center), SCORE_DECIMALS)
        if d <= radius:
            scored.append((d, i))
    scored.sort(key=lambda s: (s[0], s[1]))
    return [i for _, i in scored[:r]]


# -- construction ------------------------------------------------------------------


def test_build_empty_stream():
    memory = build([], EMB, ticks_per_day=200)
    assert len(memory) == 0
    assert memory.query_semantic("anything", EMB, r=5).hits == ()


def test_build_length_conservation():
    stream = []
    for t in range(10):
        ent = VisibleEntity(entity_id=f"e{t}", class_label="mug", attributes=(), landmark_id="sink")
        obs = SymbolicObservation(visible_entities=(ent,), caption="")
        stream.append((Timestep.at(t, 200), Pose(position=(0, 0), yaw=0, room_id="kitchen"), obs))
    memory = build(stream, EMB, ticks_per_day=200)
    assert len(memory) == 10
    assert memory.semantic_index.shape == (10, 64)
    assert memory.temporal_index.shape == (10,)
    assert memory.spatial_index.shape == (10, 2)


def test_build_from_three_day_patrol():
    world, schedule = generate_world(3, 1)
    stream = patrol(world, schedule, days=3)
    memory = build(stream, EMB, ticks_per_day=200)
    assert len(memory) == 600
    assert max(rec.t.day for rec in memory.records) == 2


def test_build_rejects_non_monotonic_timestamps():
    memory = fill(new_memory(), [(5, "a mug on the sink", (0, 0))])
    with pytest.raises(ValueError):
        memory.append(synthetic_record(5, "again", (0, 0)))
    with pytest.raises(ValueError):
        memory.append(synthetic_record(3, "earlier", (0, 0)))


def test_keyframe_stride():
    stream = []
    for t in range(60):
        ent = VisibleEntity(entity_id=f"e{t}", class_label="mug", attributes=(), landmark_id="sink")
        obs = SymbolicObservation(visible_entities=(ent,), caption="")
        stream.append((Timestep.at(t, 200), Pose(position=(0, 0), yaw=0, room_id="kitchen"), obs))
    memory = build(stream, EMB, ticks_per_day=200, snapshot_every=25)
    flagged = [i for i, rec in enumerate(memory.records) if rec.raw.keyframe]
    assert flagged == [0, 25, 50]
    assert memory.fetch_raw(25).keyframe
    assert len(memory.fetch_raw(25).visible_entities) == 1


def test_build_is_task_agnostic_signature():
    import inspect

    params = inspect.signature(build).parameters
    assert "instruction" not in params and "task" not in params


# -- semantic queries -----------------------------------------------------------------


def test_semantic_unique_mention_ranked_first():
    memory = fill(
        new_memory(),
        [
            (0, "a red mug on the sink", (0, 0)),
            (1, "a green folder on the study desk", (1, 0)),
            (2, "a blue sofa cushion", (2, 0)),
        ],
    )
    result = memory.query_semantic("green folder", EMB, r=1)
    assert result.indices == (1,)
    assert oracle_semantic(memory, EMB("green folder"), 1) == [1]


def test_semantic_exact_caption_scores_one():
    memory = fill(new_memory(), [(0, "a red mug on the sink", (0, 0))])
    result = memory.query_semantic("a red mug on the sink", EMB, r=1)
    assert result.hits[0][1] == pytest.approx(1.0, abs=1e-6)


def test_semantic_empty_memory():
    assert new_memory().query_semantic("anything", EMB, r=5).hits == ()


def test_semantic_tie_break_lower_index():
    memory = fill(
        new_memory(),
        [(t, "a red mug on the sink", (0, 0)) for t in range(5)],
    )
    result = memory.query_semantic("red mug", EMB, r=3)
    assert result.indices == (0, 1, 2)


# -- temporal queries -------------------------------------------------------------------


def test_temporal_point_with_tie_break():
    memory = fill(new_memory(), [(t, f"caption {t}", (0, 0)) for t in range(10)])
    result = memory.query_temporal(t_center=5, r=3)
    assert result.indices == (5, 4, 6)
    assert oracle_temporal_point(memory, 5, 3) == [5, 4, 6]


def test_temporal_point_exact_timestamp():
    memory = fill(new_memory(), [(t, f"caption {t}", (0, 0)) for t in range(10)])
    assert memory.query_temporal(t_center=7, r=1).indices == (7,)


def test_temporal_window_selects_day():
    world, schedule = generate_world(3, 1)
    stream = patrol(world, schedule, days=3)
    memory = build(stream, EMB, ticks_per_day=200)
    result = memory.query_temporal(day_window=(1, 1), r=600)
    assert len(result) == 200
    assert all(200 <= memory.records[i].t.value <= 399 for i in result.indices)
    assert list(result.indices) == oracle_temporal_window(memory, 1, 1, 600)
    # Recency order within the window.
    assert result.indices[0] == 399 and result.indices[-1] == 200


def test_temporal_window_invalid():
    memory = fill(new_memory(), [(0, "x y", (0, 0))])
    with pytest.raises(ValueError):
        memory.query_temporal(day_window=(2, 1))
    with pytest.raises(ValueError):
        memory.query_temporal()
    with pytest.raises(ValueError):
        memory.query_temporal(t_center=1, day_window=(0, 1))


# -- spatial queries ---------------------------------------------------------------------


def test_spatial_exact_pose_match():
    memory = fill(new_memory(), [(t, f"caption {t}", (float(t), 0.0)) for t in range(5)])
    result = memory.query_spatial((2.0, 0.0), radius=0.01, r=5)
    assert result.indices == (2,)


def test_spatial_no_hits_outside_radius():
    memory = fill(new_memory(), [(0, "caption", (10.0, 10.0))])
    assert memory.query_spatial((0.0, 0.0), radius=1.0, r=5).hits == ()


def test_spatial_line_layout_distance_sorted():
    memory = fill(new_memory(), [(t, f"caption {t}", (float(t), 0.0)) for t in range(5)])
    result = memory.query_spatial((0.0, 0.0), radius=2.5, r=10)
    assert result.indices == (0, 1, 2)
    assert [round(s, 6) for _, s in result.hits] == [0.0, 1.0, 2.0]
    assert list(result.indices) == oracle_spatial(memory, (0.0, 0.0), 2.5, 10)


def test_spatial_tie_break_lower_index():
    memory = fill(new_memory(), [(t, f"caption {t}", (1.0, 0.0)) for t in range(4)])
    result = memory.query_spatial((0.0, 0.0), radius=2.0, r=3)
    assert result.indices == (0, 1, 2)


# -- randomized oracle equivalence ---------------------------------------------------------


def random_memory(rng, n, ticks_per_day=50):
    memory = new_memory(ticks_per_day=ticks_per_day)
    t = 0
    vocab = ["mug", "folder", "book", "sink", "desk", "red", "green", "toy", "sofa", "lamp"]
    for _ in range(n):
        t += rng.randrange(1, 4)
        words = " ".join(rng.choice(vocab) for _ in range(rng.randrange(1, 6)))
        pos = (rng.randrange(0, 8) * 0.5, rng.randrange(0, 8) * 0.5)
        memory.append(synthetic_record(t, words, pos, ticks_per_day))
    return memory


def test_oracle_equivalence_randomized():
    rng = random.Random(123)
    for _ in range(8):
        memory = random_memory(rng, rng.randrange(20, 120))
        last_day = memory.records[-1].t.day
        for _ in range(20):
            r = rng.randrange(1, 12)
            qtext = " ".join(rng.choice(["mug", "red", "desk", "toy"]) for _ in range(2))
            qvec = EMB(qtext)
            assert list(memory.query_semantic(qtext, EMB, r=r).indices) == oracle_semantic(memory, qvec, r)
            center = rng.randrange(0, memory.records[-1].t.value + 5)
            assert list(memory.query_temporal(t_center=center, r=r).indices) == oracle_temporal_point(memory, center, r)
            d0 = rng.randrange(0, last_day + 1)
            d1 = rng.randrange(d0, last_day + 1)
            assert list(memory.query_temporal(day_window=(d0, d1), r=r).indices) == oracle_temporal_window(memory, d0, d1, r)
            cx, cy = rng.randrange(0, 8) * 0.5, rng.randrange(0, 8) * 0.5
            radius = rng.choice([0.25, 0.5, 1.0, 2.0])
            assert list(memory.query_spatial((cx, cy), radius, r=r).indices) == oracle_spatial(memory, (cx, cy), radius, r)


def test_monotone_insertion_preserves_tie_order():
    memory = fill(new_memory(), [(t, "a red mug on the sink", (1.0, 1.0)) for t in range(6)])
    before = memory.query_semantic("red mug", EMB, r=4).indices
    memory.append(synthetic_record(99, "a red mug on the sink", (1.0, 1.0)))
    after = memory.query_semantic("red mug", EMB, r=4).indices
    assert before == after


def test_score_bounds():
    rng = random.Random(5)
    memory = random_memory(rng, 60)
    sem = memory.query_semantic("red mug", EMB, r=20)
    assert all(-1.0 - 1e-9 <= s <= 1.0 + 1e-9 for _, s in sem.hits)
    spa = memory.query_spatial((1.0, 1.0), radius=5.0, r=20)
    assert all(s >= 0.0 for _, s in spa.hits)


# -- raw retrieval ------------------------------------------------------------------------


def test_fetch_raw_round_trip():
    memory = fill(new_memory(), [(0, "a red mug on the sink", (0, 0))])
    raw = memory.fetch_raw(0)
    assert raw.caption == "a red mug on the sink"
    assert raw.visible_entities[0].entity_id == "e0"


def test_fetch_raw_out_of_range():
    memory = fill(new_memory(), [(0, "a red mug on the sink", (0, 0))])
    with pytest.raises(IndexError):
        memory.fetch_raw(1)
    with pytest.raises(IndexError):
        memory.fetch_raw(-1)


# -- persistence --------------------------------------------------------------------------


def test_persist_load_round_trip(tmp_path):
    world, schedule = generate_world(3, 1)
    stream = patrol(world, schedule, days=3)
    memory = build(stream, EMB, ticks_per_day=200)
    path = str(tmp_path / "memory.jsonl")
    persist(memory, path)
    loaded = load(path)
    assert len(loaded) == len(memory)
    assert loaded.ticks_per_day == memory.ticks_per_day
    assert loaded.embedder_id == memory.embedder_id
    probes = [
        ("semantic", "green folder"),
        ("semantic", "red mug sink"),
        ("point", 123),
        ("window", (1, 2)),
        ("spatial", ((2.0, 2.0), 3.0)),
    ]
    for kind, arg in probes:
        if kind == "semantic":
            assert loaded.query_semantic(arg, EMB, r=7).hits == memory.query_semantic(arg, EMB, r=7).hits
        elif kind == "point":
            assert loaded.query_temporal(t_center=arg, r=7).hits == memory.query_temporal(t_center=arg, r=7).hits
        elif kind == "window":
            assert loaded.query_temporal(day_window=arg, r=7).hits == memory.query_temporal(day_window=arg, r=7).hits
        else:
            center, radius = arg
            assert loaded.query_spatial(center, radius, r=7).hits == memory.query_spatial(center, radius, r=7).hits


def test_persist_empty_memory(tmp_path):
    path = str(tmp_path / "empty.jsonl")
    persist(new_memory(), path)
    assert len(load(path)) == 0


def test_truncated_file_rejected(tmp_path):
    memory = fill(new_memory(), [(t, f"caption {t}", (0, 0)) for t in range(5)])
    path = str(tmp_path / "memory.jsonl")
    persist(memory, path)
    text = open(path).read()
    open(path, "w").write("\n".join(text.splitlines()[:-2]) + "\n")
    with pytest.raises(IntegrityError):
        load(path)


def test_corrupt_record_named(tmp_path):
    import hashlib

    memory = fill(new_memory(), [(t, f"caption {t}", (0, 0)) for t in range(3)])
    path = str(tmp_path / "memory.jsonl")
    persist(memory, path)
    lines = open(path).read().splitlines()
    lines[2] = lines[2].replace('"value":1', '"value":"bogus"')
    body = "\n".join(lines[:-1]) + "\n"
    checksum = hashlib.sha256(body.encode()).hexdigest()
    open(path, "w").write(body + '{"sha256":"%s"}\n' % checksum)
    with pytest.raises(IntegrityError, match="record 1"):
        load(path)


# -- concurrency ---------------------------------------------------------------------------


def test_concurrent_readers_see_consistent_prefix():
    memory = new_memory()
    errors = []
    stop = threading.Event()

    def reader():
        while not stop.is_set():
            n = len(memory)
            sem = memory.semantic_index
            ts = memory.temporal_index
            pos = memory.spatial_index
            if not (len(sem) >= n and len(ts) >= n and len(pos) >= n):
                errors.append(f"torn read: {len(sem)}/{len(ts)}/{len(pos)} vs {n}")
            result = memory.query_temporal(t_center=0, r=5)
            if any(i >= len(memory) for i in result.indices):
                errors.append("query returned unpublished record")

    threads = [threading.Thread(target=reader) for _ in range(3)]
    for th in threads:
        th.start()
    for t in range(300):
        memory.append(synthetic_record(t, f"caption {t}", (0.0, 0.0)))
    stop.set()
    for th in threads:
        th.join()
    assert errors == []
