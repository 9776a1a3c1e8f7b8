"""Append-only long-term memory with semantic, temporal, and spatial indices.

Retrieval is an exact full scan over flat numpy arrays. Desk-scale memories
stay well under 1e5 records, where exact scan is both fast and trivially
testable against a linear oracle; an approximate index could later hide
behind the same interface.

Concurrency: one writer may append while readers query. Readers snapshot the
record count first and then slice each index array, so every query sees a
consistent prefix of the insertion order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import (
    MemoryRecord,
    NoiseModel,
    DEFAULT_NOISE,
    Pose,
    SymbolicObservation,
    Timestep,
    canonical_dumps,
    canonical_loads,
    render_caption,
    stable_seed,
)
from .embed import Embedder, EmbedderConfig

FORMAT_VERSION = 1
DEFAULT_SNAPSHOT_EVERY = 25
DEFAULT_TOP_R = 5

# Similarity scores are quantized before ranking so that orderings do not
# depend on last-ulp differences between BLAS implementations.
SCORE_DECIMALS = 9


class IntegrityError(RuntimeError):
    """A memory file failed validation on load."""


@dataclass(frozen=True)
class QueryResult:
    """Ranked hits from one memory query, best first.

    Score semantics depend on the query: cosine similarity (semantic, higher
    is better), absolute timestep distance (temporal point, lower is better),
    timestep value (temporal window, recency order), Euclidean distance in
    meters (spatial, lower is better). Ties always break toward the lower
    record index.
    """

    hits: tuple[tuple[int, float], ...]
    records: tuple[MemoryRecord, ...]

    def __len__(self) -> int:
        return len(self.hits)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.hits)


class LongTermMemory:
    """Append-only record sequence plus three query indices."""

    def __init__(
        self,
        d: int,
        ticks_per_day: int,
        snapshot_every: int = DEFAULT_SNAPSHOT_EVERY,
        embedder_id: str = "",
        mode: str = "oracle",
    ):
        if snapshot_every < 1:
            raise ValueError("snapshot_every must be >= 1")
        self.d = d
        self.ticks_per_day = ticks_per_day
        self.snapshot_every = snapshot_every
        self.embedder_id = embedder_id
        self.mode = mode
        self._records: list[MemoryRecord] = []
        self._n = 0
        cap = 64
        self._emb = np.zeros((cap, d), dtype=np.float64)
        self._ts = np.zeros(cap, dtype=np.int64)
        self._pos = np.zeros((cap, 2), dtype=np.float64)

    def __len__(self) -> int:
        return self._n

    @property
    def records(self) -> Sequence[MemoryRecord]:
        return self._records[: self._n]

    @property
    def semantic_index(self) -> np.ndarray:
        return self._emb[: self._n]

    @property
    def temporal_index(self) -> np.ndarray:
        return self._ts[: self._n]

    @property
    def spatial_index(self) -> np.ndarray:
        return self._pos[: self._n]

    def _grow(self) -> None:
        cap = self._emb.shape[0] * 2
        for name in ("_emb", "_ts", "_pos"):
            old = getattr(self, name)
            new_shape = (cap,) + old.shape[1:]
            grown = np.zeros(new_shape, dtype=old.dtype)
            grown[: self._n] = old[: self._n]
            setattr(self, name, grown)

    def append(self, record: MemoryRecord) -> int:
        """Append one record; timestamps must be strictly increasing."""
        if record.embedding.shape != (self.d,):
            raise ValueError(f"embedding dimension {record.embedding.shape} != ({self.d},)")
        if self._n > 0 and record.t.value <= int(self._ts[self._n - 1]):
            raise ValueError(
                f"non-monotonic timestamp {record.t.value} after {int(self._ts[self._n - 1])}"
            )
        if self._n == self._emb.shape[0]:
            self._grow()
        i = self._n
        self._emb[i] = record.embedding
        self._ts[i] = record.t.value
        self._pos[i] = record.pose.position
        self._records.append(record)
        # Publish the new row last so concurrent readers never see a torn
        # index triple: rows below _n are immutable once _n is advanced.
        self._n = i + 1
        return i

    def _snapshot(self) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
        n = self._n
        return n, self._emb[:n], self._ts[:n], self._pos[:n]

    # -- queries ------------------------------------------------------------

    def _result(self, order: np.ndarray, scores: np.ndarray) -> QueryResult:
        hits = tuple((int(i), float(scores[k])) for k, i in enumerate(order))
        recs = tuple(self._records[int(i)] for i in order)
        return QueryResult(hits=hits, records=recs)

    def query_semantic_vector(self, qvec: np.ndarray, r: int = DEFAULT_TOP_R) -> QueryResult:
        if r < 1:
            raise ValueError("r must be >= 1")
        n, emb, _, _ = self._snapshot()
        if n == 0:
            return QueryResult(hits=(), records=())
        scores = np.round(emb @ np.asarray(qvec, dtype=np.float64), SCORE_DECIMALS)
        order = np.argsort(-scores, kind="stable")[:r]
        return self._result(order, scores[order])

    def query_semantic(self, query: str, embedder: Embedder, r: int = DEFAULT_TOP_R) -> QueryResult:
        """Top-r records by cosine similarity between the embedded query and
        stored caption embeddings."""
        return self.query_semantic_vector(embedder(query), r=r)

    def query_temporal(
        self,
        t_center: Optional[int] = None,
        day_window: Optional[tuple[int, int]] = None,
        r: int = DEFAULT_TOP_R,
    ) -> QueryResult:
        """Point form: top-r by |t - t_center|, ties toward smaller t.
        Window form: records with day in [d_start, d_end], most recent first,
        truncated to r."""
        if r < 1:
            raise ValueError("r must be >= 1")
        if (t_center is None) == (day_window is None):
            raise ValueError("provide exactly one of t_center and day_window")
        n, _, ts, _ = self._snapshot()
        if n == 0:
            return QueryResult(hits=(), records=())
        if t_center is not None:
            dist = np.abs(ts - int(t_center))
            order = np.argsort(dist, kind="stable")[:r]
            return self._result(order, dist[order].astype(np.float64))
        d_start, d_end = day_window  # type: ignore[misc]
        if d_start > d_end:
            raise ValueError(f"empty day window [{d_start}, {d_end}]")
        days = ts // self.ticks_per_day
        idx = np.nonzero((days >= d_start) & (days <= d_end))[0]
        order = idx[np.argsort(-ts[idx], kind="stable")][:r]
        return self._result(order, ts[order].astype(np.float64))

    def query_spatial(self, center: tuple[float, float], radius: float, r: int = DEFAULT_TOP_R) -> QueryResult:
        """Records whose pose lies within radius of center, nearest first."""
        if r < 1:
            raise ValueError("r must be >= 1")
        if radius <= 0:
            raise ValueError("radius must be positive")
        n, _, _, pos = self._snapshot()
        if n == 0:
            return QueryResult(hits=(), records=())
        c = np.asarray(center, dtype=np.float64)
        dist = np.round(np.linalg.norm(pos - c, axis=1), SCORE_DECIMALS)
        idx = np.nonzero(dist <= radius)[0]
        order = idx[np.argsort(dist[idx], kind="stable")][:r]
        return self._result(order, dist[order])

    def fetch_raw(self, record_index: int) -> SymbolicObservation:
        """Return the stored raw observation for one record, unchanged."""
        if not (0 <= record_index < self._n):
            raise IndexError(f"record index {record_index} out of range [0, {self._n})")
        return self._records[record_index].raw


def build(
    stream: Iterable[tuple[Timestep, Pose, SymbolicObservation]],
    embedder: Embedder | EmbedderConfig,
    mode: str = "oracle",
    *,
    noise: NoiseModel = DEFAULT_NOISE,
    noise_seed: int = 0,
    snapshot_every: int = DEFAULT_SNAPSHOT_EVERY,
    ticks_per_day: int = 200,
) -> LongTermMemory:
    """Construct long-term memory from an observation stream.

    Construction is task-agnostic: it sees only the stream. Captions are
    rendered from the raw entity lists under the requested mode (the noise
    seed for each record derives from noise_seed and its timestep), embedded,
    and stored alongside the raw observation. Every snapshot_every-th record
    is flagged as a keyframe.
    """
    if isinstance(embedder, EmbedderConfig):
        embedder = Embedder(embedder)
    memory = LongTermMemory(
        d=embedder.d,
        ticks_per_day=ticks_per_day,
        snapshot_every=snapshot_every,
        embedder_id=embedder.embedder_id,
        mode=mode,
    )
    for i, (t, pose, obs) in enumerate(stream):
        caption = render_caption(
            obs.visible_entities,
            mode=mode,
            seed=stable_seed("caption", noise_seed, t.value),
            noise=noise,
        )
        raw = replace(obs, caption=caption, keyframe=(i % snapshot_every == 0))
        memory.append(MemoryRecord(t=t, pose=pose, embedding=embedder(caption), raw=raw))
    return memory


# -- persistence -------------------------------------------------------------


def persist(memory: LongTermMemory, path: str, extra_header: Optional[dict] = None) -> None:
    """Write a memory file: header line, one record per line, checksum line.

    extra_header fields (e.g. a producing-config hash) are merged into the
    header without displacing the required keys.
    """
    header = dict(extra_header or {})
    header.update(
        {
            "format_version": FORMAT_VERSION,
            "d": memory.d,
            "ticks_per_day": memory.ticks_per_day,
            "snapshot_every": memory.snapshot_every,
            "embedder_id": memory.embedder_id,
            "mode": memory.mode,
            "count": len(memory),
        }
    )
    lines = [canonical_dumps(header)]
    lines.extend(canonical_dumps(rec.to_dict()) for rec in memory.records)
    body = "\n".join(lines) + "\n"
    checksum = hashlib.sha256(body.encode("utf-8")).hexdigest()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(body)
        fh.write(canonical_dumps({"sha256": checksum}) + "\n")


def load(path: str) -> LongTermMemory:
    """Load a memory file, verifying the checksum and every record."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    lines = text.splitlines()
    if len(lines) < 2:
        raise IntegrityError("file too short: missing header or checksum")
    try:
        tail = canonical_loads(lines[-1])
        stored = tail["sha256"]
    except Exception as exc:
        raise IntegrityError(f"missing or malformed checksum line: {exc}") from exc
    body = "\n".join(lines[:-1]) + "\n"
    actual = hashlib.sha256(body.encode("utf-8")).hexdigest()
    if actual != stored:
        raise IntegrityError("checksum mismatch: file corrupt or truncated")
    try:
        header = canonical_loads(lines[0])
        if header["format_version"] != FORMAT_VERSION:
            raise IntegrityError(f"unsupported format version {header['format_version']}")
    except IntegrityError:
        raise
    except Exception as exc:
        raise IntegrityError(f"malformed header: {exc}") from exc
    memory = LongTermMemory(
        d=int(header["d"]),
        ticks_per_day=int(header["ticks_per_day"]),
        snapshot_every=int(header["snapshot_every"]),
        embedder_id=str(header["embedder_id"]),
        mode=str(header["mode"]),
    )
    record_lines = lines[1:-1]
    if len(record_lines) != int(header["count"]):
        raise IntegrityError(
            f"record count mismatch: header says {header['count']}, found {len(record_lines)}"
        )
    for i, line in enumerate(record_lines):
        try:
            memory.append(MemoryRecord.from_dict(canonical_loads(line)))
        except Exception as exc:
            raise IntegrityError(f"record {i}: {exc}") from exc
    return memory


__all__ = [
    "DEFAULT_SNAPSHOT_EVERY",
    "DEFAULT_TOP_R",
    "IntegrityError",
    "LongTermMemory",
    "QueryResult",
    "build",
    "load",
    "persist",
]
