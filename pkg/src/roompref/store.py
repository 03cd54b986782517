"""Persistence: feature-table CSV, corpus ingestion, append-only event log.

Files are deliberately plain (CSV and tab-separated lines with JSON payloads)
so they stay inspectable and diffable without tooling.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable

from .features import FeatureVector, extract_features
from .imageops import load_and_standardize
from .scoring import FeatureStats, ScoredRow, score_corpus

logger = logging.getLogger(__name__)

FEATURE_HEADER = (
    "image_id,likes,color_harmony,lightness,complexity,"
    "ch_norm,l_norm,c_norm,simplicity_norm,aesthetic_score"
)
_FLOAT_FIELDS = ("color_harmony", "ch_norm", "l_norm", "c_norm",
                 "simplicity_norm", "aesthetic_score")
_INT_FIELDS = ("likes", "lightness", "complexity")

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg")

EVENT_KINDS = (
    "user-created",
    "color-rating-submitted",
    "trial-recorded",
    "study-created",
)

__all__ = [
    "FEATURE_HEADER",
    "EVENT_KINDS",
    "FeatureTable",
    "Event",
    "EventLog",
    "ReplayState",
    "ingest",
    "replay",
]


@dataclass
class FeatureTable:
    """Scored corpus rows, keyed by unique image id."""

    rows: list[ScoredRow]

    def __post_init__(self) -> None:
        ids = [r.image_id for r in self.rows]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate image ids: {dupes}")

    def __len__(self) -> int:
        return len(self.rows)

    def ids(self) -> list[str]:
        return [r.image_id for r in self.rows]

    def row(self, image_id: str) -> ScoredRow:
        for r in self.rows:
            if r.image_id == image_id:
                return r
        raise KeyError(f"no such image: {image_id}")

    def stats(self) -> FeatureStats:
        """Corpus min/max recovered from the raw feature columns.

        Stats equal the raw extremes by construction at ingestion time, so
        the CSV stays the single source of truth.
        """
        if not self.rows:
            raise ValueError("empty table has no stats")
        return FeatureStats(
            color_harmony=(min(r.color_harmony for r in self.rows),
                           max(r.color_harmony for r in self.rows)),
            lightness=(min(r.lightness for r in self.rows),
                       max(r.lightness for r in self.rows)),
            complexity=(min(r.complexity for r in self.rows),
                        max(r.complexity for r in self.rows)),
        )

    def save(self, path: str | os.PathLike) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(FEATURE_HEADER + "\n")
            writer = csv.writer(fh)
            for r in self.rows:
                writer.writerow(
                    [
                        r.image_id,
                        r.likes,
                        f"{r.color_harmony:.6f}",
                        r.lightness,
                        r.complexity,
                        f"{r.ch_norm:.6f}",
                        f"{r.l_norm:.6f}",
                        f"{r.c_norm:.6f}",
                        f"{r.simplicity_norm:.6f}",
                        f"{r.aesthetic_score:.6f}",
                    ]
                )

    @classmethod
    def load(cls, path: str | os.PathLike) -> "FeatureTable":
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise ValueError(f"{path}: empty file") from None
            if header != FEATURE_HEADER.split(","):
                raise ValueError(
                    f"{path}: line 1: expected header {FEATURE_HEADER!r}"
                )
            rows = []
            for lineno, record in enumerate(reader, start=2):
                if not record:
                    continue
                if len(record) != 10:
                    raise ValueError(f"{path}: line {lineno}: expected 10 fields, "
                                     f"got {len(record)}")
                try:
                    values = dict(zip(FEATURE_HEADER.split(","), record))
                    rows.append(
                        ScoredRow(
                            image_id=values["image_id"],
                            **{k: int(values[k]) for k in _INT_FIELDS},
                            **{k: float(values[k]) for k in _FLOAT_FIELDS},
                        )
                    )
                except ValueError as exc:
                    raise ValueError(f"{path}: line {lineno}: {exc}") from None
        return cls(rows)


def _read_likes(path: str | os.PathLike) -> dict[str, int]:
    likes: dict[str, int] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["image_id", "likes"]:
            raise ValueError(f"{path}: line 1: expected header 'image_id,likes'")
        for lineno, record in enumerate(reader, start=2):
            if not record:
                continue
            try:
                likes[record[0]] = int(record[1])
            except (IndexError, ValueError):
                raise ValueError(f"{path}: line {lineno}: bad likes record "
                                 f"{record!r}") from None
    return likes


def ingest(
    directory: str | os.PathLike, likes_file: str | os.PathLike | None = None
) -> FeatureTable:
    """Standardize, featurize, and score every image in a directory.

    Image ids are file stems. Files that fail to decode are skipped with a
    warning. Likes come from an optional `image_id,likes` CSV and default
    to 0.
    """
    directory = Path(directory)
    likes = _read_likes(likes_file) if likes_file else {}
    entries: list[tuple[str, int, FeatureVector]] = []
    for name in sorted(os.listdir(directory)):
        if not name.lower().endswith(IMAGE_EXTENSIONS):
            continue
        image_id = Path(name).stem
        try:
            img = load_and_standardize(directory / name)
        except (OSError, ValueError) as exc:
            logger.warning("skipping %s: %s", name, exc)
            continue
        entries.append((image_id, likes.get(image_id, 0), extract_features(img)))
    if not entries:
        raise ValueError(f"no decodable images in {directory}")
    _, rows = score_corpus(entries)
    return FeatureTable(rows)


# ----------------------------------------------------------------- event log

@dataclass(frozen=True)
class Event:
    seq: int
    timestamp: str
    kind: str
    payload: dict


class EventLog:
    """Append-only tab-separated log: seq, ISO timestamp, kind, compact JSON.

    Single-writer: appends are serialized by an internal lock; readers see a
    consistent prefix because lines are written and flushed atomically.
    """

    def __init__(self, path: str | os.PathLike,
                 clock: Callable[[], str] | None = None) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()
        self._clock = clock or (lambda: datetime.now(timezone.utc).isoformat())
        self._seq = 0
        if self.path.exists():
            events = self.read_all()
            if events:
                self._seq = events[-1].seq

    def append(self, kind: str, payload: dict) -> Event:
        if kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind: {kind!r}")
        with self._lock:
            self._seq += 1
            event = Event(self._seq, self._clock(), kind,
                          json.loads(json.dumps(payload)))
            line = "\t".join(
                [str(event.seq), event.timestamp, event.kind,
                 json.dumps(event.payload, separators=(",", ":"), sort_keys=True)]
            )
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
        return event

    def read_all(self) -> list[Event]:
        if not self.path.exists():
            return []
        events: list[Event] = []
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t", 3)
                if len(parts) != 4:
                    raise ValueError(f"{self.path}: line {lineno}: expected 4 "
                                     f"tab-separated fields")
                seq_s, timestamp, kind, payload_s = parts
                try:
                    event = Event(int(seq_s), timestamp, kind, json.loads(payload_s))
                except (ValueError, json.JSONDecodeError) as exc:
                    raise ValueError(f"{self.path}: line {lineno}: {exc}") from None
                if events and event.seq <= events[-1].seq:
                    raise ValueError(f"{self.path}: line {lineno}: sequence "
                                     f"numbers must increase")
                events.append(event)
        return events


@dataclass
class ReplayState:
    """In-memory state rebuilt from an event log."""

    users: dict[str, dict] = field(default_factory=dict)          # id -> info
    profiles: dict[str, dict[str, float]] = field(default_factory=dict)
    studies: dict[str, dict] = field(default_factory=dict)        # id -> config
    trials: list[dict] = field(default_factory=list)


def replay(events: Iterable[Event]) -> ReplayState:
    """Rebuild users, rating profiles, studies, and trials from the log.

    Later color-rating events overwrite earlier ones for the same user
    (resubmission is allowed); trials are deduplicated on their idempotency
    key (study, user, pair) keeping the first occurrence.
    """
    state = ReplayState()
    seen_trials: set[tuple] = set()
    for event in events:
        p = event.payload
        if event.kind == "user-created":
            state.users[p["user_id"]] = {k: v for k, v in p.items() if k != "user_id"}
        elif event.kind == "color-rating-submitted":
            state.profiles[p["user_id"]] = dict(p["ratings"])
        elif event.kind == "study-created":
            state.studies[p["study_id"]] = {k: v for k, v in p.items()
                                            if k != "study_id"}
        elif event.kind == "trial-recorded":
            key = (p["study_id"], p["user_id"], p["image_a"], p["image_b"])
            if key in seen_trials:
                continue
            seen_trials.add(key)
            state.trials.append(dict(p))
    return state
