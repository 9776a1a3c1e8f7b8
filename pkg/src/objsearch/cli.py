"""Command-line pipeline: gen-world -> patrol -> build-memory -> run.

Every artifact file embeds the hash of the configuration that produced it,
and `report` refuses to render logs whose lineage does not match unless
forced. Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import hashlib
import os

import click

from .bench import (
    FIXTURE_KINDS,
    SuiteConfig,
    SuiteReport,
    TaskSpec,
    build_fixture_suite,
    generate_suite,
    prepare_task,
    render_report,
    run_suite,
    run_task_episode,
)
from .core import NoiseModel, canonical_dumps, canonical_loads
from .embed import EmbedderConfig
from .homesim import (
    MAX_PATROL_DAYS,
    MIN_PATROL_DAYS,
    Schedule,
    WorldState,
    generate_world,
    patrol,
    read_stream,
    write_stream,
)
from .agent import LLMPolicyConfig
from .memstore import build as build_memory_from_stream, persist


def _config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_dumps(config).encode()).hexdigest()[:16]


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(payload) + "\n")


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return canonical_loads(fh.read())


@click.group()
@click.version_option()
def main() -> None:
    """Spatiotemporal object-search pipeline."""


@main.command("gen-world")
@click.option("--scene", type=click.IntRange(1, 3), required=True, help="Scene template id.")
@click.option("--seed", type=int, default=0, show_default=True, help="Layout seed.")
@click.option("--ticks-per-day", type=int, default=200, show_default=True)
@click.option("--out-world", type=click.Path(dir_okay=False), default="world.json", show_default=True)
@click.option("--out-schedule", type=click.Path(dir_okay=False), default="schedule.json", show_default=True)
def cmd_gen_world(scene: int, seed: int, ticks_per_day: int, out_world: str, out_schedule: str) -> None:
    """Generate a scene and its ambient schedule."""
    config = {"cmd": "gen-world", "scene": scene, "seed": seed, "ticks_per_day": ticks_per_day}
    chash = _config_hash(config)
    world, schedule = generate_world(seed, scene, ticks_per_day=ticks_per_day)
    _write_json(out_world, {"config": config, "config_hash": chash, "world": world.to_dict()})
    _write_json(out_schedule, {"config": config, "config_hash": chash, "schedule": schedule.to_dict()})
    click.echo(
        f"rooms={len(world.rooms)} landmarks={len(world.landmarks)} objects={len(world.objects)}"
    )


@main.command("patrol")
@click.option("--world", "world_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--schedule", "schedule_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--days", type=click.IntRange(MIN_PATROL_DAYS, MAX_PATROL_DAYS), default=3, show_default=True)
@click.option("--ticks-per-day", type=int, default=None, help="Defaults to the world's configuration.")
@click.option("--out", type=click.Path(dir_okay=False), default="stream.jsonl", show_default=True)
def cmd_patrol(world_path: str, schedule_path: str, days: int, ticks_per_day: int | None, out: str) -> None:
    """Run the daily patrol and write the observation stream."""
    world_doc = _read_json(world_path)
    schedule_doc = _read_json(schedule_path)
    world = WorldState.from_dict(world_doc["world"])
    if ticks_per_day is not None and ticks_per_day != world.ticks_per_day:
        raise click.ClickException(
            f"ticks-per-day {ticks_per_day} does not match the world's {world.ticks_per_day}"
        )
    schedule = Schedule.from_dict(schedule_doc["schedule"])
    config = {
        "cmd": "patrol",
        "days": days,
        "ticks_per_day": world.ticks_per_day,
        "world_hash": world_doc["config_hash"],
        "schedule_hash": schedule_doc["config_hash"],
    }
    stream = patrol(world, schedule, days)
    write_stream(out, stream, meta={"config": config, "config_hash": _config_hash(config)})
    click.echo(f"observations={len(stream)} days={days} ticks_per_day={world.ticks_per_day}")


@main.command("export-graphs")
@click.option("--world", "world_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--schedule", "schedule_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--days", type=click.IntRange(MIN_PATROL_DAYS, MAX_PATROL_DAYS), default=3, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default="graphs.jsonl", show_default=True)
def cmd_export_graphs(world_path: str, schedule_path: str, days: int, out: str) -> None:
    """Export per-day scene-graph snapshots (nodes and edges)."""
    from .homesim import export_scene_graph, fast_forward

    world_doc = _read_json(world_path)
    schedule_doc = _read_json(schedule_path)
    world = WorldState.from_dict(world_doc["world"])
    schedule = Schedule.from_dict(schedule_doc["schedule"])
    fast_forward(world, schedule, days)
    config = {
        "cmd": "export-graphs", "days": days,
        "world_hash": world_doc["config_hash"], "schedule_hash": schedule_doc["config_hash"],
    }
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps({"config": config, "config_hash": _config_hash(config),
                                  "days": days}) + "\n")
        for day in range(days):
            fh.write(canonical_dumps(export_scene_graph(world, day).to_dict()) + "\n")
    click.echo(f"graphs={days} out={out}")


@main.command("build-memory")
@click.option("--stream", "stream_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--mode", type=click.Choice(["oracle", "realistic"]), default="oracle", show_default=True)
@click.option("--d", "dim", type=int, default=256, show_default=True, help="Embedding dimension.")
@click.option("--snapshot-every", type=int, default=25, show_default=True)
@click.option("--noise-seed", type=int, default=0, show_default=True)
@click.option("--p-drop", type=float, default=0.1, show_default=True)
@click.option("--p-mislabel", type=float, default=0.1, show_default=True)
@click.option("--embed-url", type=str, default=None, envvar="OBJSEARCH_EMBED_URL",
              help="External embedding endpoint; the hashed reference embedder is used otherwise.")
@click.option("--embed-model", type=str, default="default", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default="memory.jsonl", show_default=True)
def cmd_build_memory(
    stream_path: str, mode: str, dim: int, snapshot_every: int,
    noise_seed: int, p_drop: float, p_mislabel: float,
    embed_url: str | None, embed_model: str, out: str,
) -> None:
    """Build the long-term memory from an observation stream."""
    try:
        header, stream = read_stream(stream_path)
    except ValueError as exc:
        raise click.ClickException(f"stream integrity error: {exc}") from exc
    tpd = int(header.get("config", {}).get("ticks_per_day", 200))
    if embed_url:
        embed_config = EmbedderConfig(kind="external", d=dim, endpoint=embed_url, model=embed_model)
    else:
        embed_config = EmbedderConfig(d=dim)
    memory = build_memory_from_stream(
        stream,
        embed_config,
        mode=mode,
        noise=NoiseModel(p_drop=p_drop, p_mislabel=p_mislabel),
        noise_seed=noise_seed,
        snapshot_every=snapshot_every,
        ticks_per_day=tpd,
    )
    config = {
        "cmd": "build-memory", "mode": mode, "d": dim, "snapshot_every": snapshot_every,
        "noise_seed": noise_seed, "p_drop": p_drop, "p_mislabel": p_mislabel,
        "stream_hash": header.get("config_hash"),
    }
    persist(memory, out, extra_header={"config_hash": _config_hash(config)})
    click.echo(f"records={len(memory)} mode={mode} d={dim}")


@main.command("gen-tasks")
@click.option("--per-family", type=int, default=3, show_default=True)
@click.option("--scenes", type=str, default="1,2,3", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--days", type=click.IntRange(MIN_PATROL_DAYS, MAX_PATROL_DAYS), default=3, show_default=True)
@click.option("--ticks-per-day", type=int, default=200, show_default=True)
@click.option("--fixture", type=click.Choice(list(FIXTURE_KINDS)), default=None,
              help="Emit a named fixture suite instead of the generated one.")
@click.option("--n", "fixture_n", type=int, default=20, show_default=True, help="Fixture task count.")
@click.option("--out", type=click.Path(dir_okay=False), default="tasks.jsonl", show_default=True)
def cmd_gen_tasks(
    per_family: int, scenes: str, seed: int, days: int, ticks_per_day: int,
    fixture: str | None, fixture_n: int, out: str,
) -> None:
    """Generate the benchmark task suite (or a fixture suite)."""
    if fixture is not None:
        tasks = build_fixture_suite(fixture, n=fixture_n, seed=seed)
        config = {"cmd": "gen-tasks", "fixture": fixture, "n": fixture_n, "seed": seed}
    else:
        scene_ids = tuple(int(s) for s in scenes.split(","))
        tasks = generate_suite(scene_ids, per_family=per_family, seed=seed,
                               days=days, ticks_per_day=ticks_per_day)
        config = {
            "cmd": "gen-tasks", "per_family": per_family, "scenes": list(scene_ids),
            "seed": seed, "days": days, "ticks_per_day": ticks_per_day,
        }
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps({"config": config, "config_hash": _config_hash(config),
                                  "count": len(tasks)}) + "\n")
        for task in tasks:
            fh.write(canonical_dumps(task.to_dict()) + "\n")
    by_type: dict[str, int] = {}
    for task in tasks:
        by_type[task.type] = by_type.get(task.type, 0) + 1
    click.echo(
        "tasks=%d visible=%d interactive=%d commonsense=%d"
        % (len(tasks), by_type.get("visible", 0), by_type.get("interactive", 0),
           by_type.get("commonsense", 0))
    )


def _load_tasks(path: str) -> tuple[dict, list[TaskSpec]]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    header = canonical_loads(lines[0])
    tasks = [TaskSpec.from_dict(canonical_loads(ln)) for ln in lines[1:]]
    return header, tasks


def _suite_config(methods: str, modes: str, budget: int, seed: int, parallelism: int,
                  llm_url: str | None, llm_model: str) -> SuiteConfig:
    llm = None
    url = llm_url or os.environ.get("OBJSEARCH_LLM_URL")
    if url:
        llm = LLMPolicyConfig(url=url, model=llm_model)
    return SuiteConfig(
        methods=tuple(methods.split(",")),
        modes=tuple(modes.split(",")),
        budget=budget,
        seed=seed,
        parallelism=parallelism,
        llm=llm,
    )


@main.command("run-task")
@click.option("--tasks", "tasks_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--index", type=int, default=0, show_default=True, help="Task index within the file.")
@click.option("--method", type=str, default="star", show_default=True)
@click.option("--mode", type=click.Choice(["oracle", "realistic"]), default="oracle", show_default=True)
@click.option("--budget", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--llm-url", type=str, default=None, envvar="OBJSEARCH_LLM_URL")
@click.option("--llm-model", type=str, default="default", show_default=True)
def cmd_run_task(tasks_path: str, index: int, method: str, mode: str, budget: int,
                 seed: int, llm_url: str | None, llm_model: str) -> None:
    """Run a single task episode and print the outcome."""
    _, tasks = _load_tasks(tasks_path)
    if not (0 <= index < len(tasks)):
        raise click.ClickException(f"task index {index} out of range [0, {len(tasks)})")
    task = tasks[index]
    config = _suite_config(method, mode, budget, seed, 1, llm_url, llm_model)
    memory, graphs, embedder = prepare_task(task, mode, config)
    result = run_task_episode(task, method, mode, config, memory, graphs, embedder)
    click.echo(
        f"task={task.task_id} success={'true' if result.success else 'false'} "
        f"steps={result.steps_used} termination={result.termination}"
    )


@main.command("run-suite")
@click.option("--tasks", "tasks_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--methods", type=str, default="random,sg_s,tr_s,star", show_default=True)
@click.option("--modes", type=str, default="oracle", show_default=True)
@click.option("--budget", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--parallelism", type=int, default=1, show_default=True)
@click.option("--llm-url", type=str, default=None, envvar="OBJSEARCH_LLM_URL")
@click.option("--llm-model", type=str, default="default", show_default=True)
@click.option("--out-report", type=click.Path(dir_okay=False), default="report.json", show_default=True)
@click.option("--out-logs", type=click.Path(dir_okay=False), default="episodes.jsonl", show_default=True)
def cmd_run_suite(tasks_path: str, methods: str, modes: str, budget: int, seed: int,
                  parallelism: int, llm_url: str | None, llm_model: str,
                  out_report: str, out_logs: str) -> None:
    """Run the full suite and write the report and raw episode logs."""
    header, tasks = _load_tasks(tasks_path)
    config = _suite_config(methods, modes, budget, seed, parallelism, llm_url, llm_model)
    report = run_suite(tasks, config, log_path=out_logs)
    payload = report.to_dict()
    payload["tasks_hash"] = header.get("config_hash")
    _write_json(out_report, payload)
    total = len(report.episodes)
    wins = sum(1 for e in report.episodes if e["success"])
    click.echo(f"episodes={total} successes={wins} report={out_report} logs={out_logs}")


@main.command("report")
@click.option("--report", "report_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--logs", "logs_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table", show_default=True)
@click.option("--force", is_flag=True, help="Render even when lineage hashes do not match.")
def cmd_report(report_path: str, logs_path: str | None, fmt: str, force: bool) -> None:
    """Render a suite report; verifies log lineage when logs are given."""
    doc = _read_json(report_path)
    report = SuiteReport.from_dict(doc)
    if logs_path is not None:
        expected = report.config_hash
        with open(logs_path, "r", encoding="utf-8") as fh:
            for line in fh:
                rec = canonical_loads(line)
                if rec.get("event") == "episode_start" and rec.get("config_hash") != expected:
                    if not force:
                        raise click.ClickException(
                            "lineage mismatch: logs were produced by config "
                            f"{rec.get('config_hash')}, report by {expected} (use --force to render)"
                        )
                    break
    if fmt == "json":
        click.echo(canonical_dumps(report.to_dict()))
    else:
        click.echo(render_report(report), nl=False)


if __name__ == "__main__":
    main()
