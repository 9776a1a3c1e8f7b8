"""Canned fixture suites exercising the qualitative behaviors the harness
asserts: unmoved targets, post-patrol moves, twin receptacles, and
never-observed objects."""

from __future__ import annotations

from ..homesim import SCENE_IDS
from .tasks import TaskSpec, build_task

FIXTURE_KINDS = (
    "unmoved_visible",
    "moved_spatial_temporal",
    "twin_interactive",
    "commonsense",
)


def build_fixture_suite(kind: str, n: int = 20, seed: int = 0) -> list[TaskSpec]:
    """Build one of the named fixture suites with n tasks."""
    if kind == "unmoved_visible":
        combos = [
            (scene, family) for scene in SCENE_IDS for family in ("class", "attribute", "spatial")
        ]
        return [
            build_task(combos[i % len(combos)][0], combos[i % len(combos)][1], "visible",
                       i // len(combos), seed)
            for i in range(n)
        ]
    if kind == "moved_spatial_temporal":
        return [
            build_task(SCENE_IDS[i % 3], "spatial_temporal", "visible", i // 3, seed)
            for i in range(n)
        ]
    if kind == "twin_interactive":
        combos = [
            (scene, family)
            for scene in SCENE_IDS
            for family in ("class", "attribute", "spatial", "spatial_temporal", "spatial_frequentist")
        ]
        return [
            build_task(combos[i % len(combos)][0], combos[i % len(combos)][1], "interactive",
                       i // len(combos), seed)
            for i in range(n)
        ]
    if kind == "commonsense":
        return [
            build_task(SCENE_IDS[i % 3], "commonsense", "commonsense", i // 3, seed)
            for i in range(n)
        ]
    raise ValueError(f"unknown fixture kind {kind!r}; valid kinds: {FIXTURE_KINDS}")


__all__ = ["FIXTURE_KINDS", "build_fixture_suite"]
