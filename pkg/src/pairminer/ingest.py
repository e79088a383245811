"""Transcript parsing and confidence-threshold filtering.

Transcript schema: one JSON file per episode with ``episode_id`` (string)
and ``chunks`` (array of ``{"text": str, "confidence": number}``).
Unknown fields are ignored.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ConfidenceOutOfRange, DuplicateEpisodeId, MalformedTranscript
from .models import Chunk, Episode


def _parse_file(path: Path) -> Episode:
    name = path.name
    try:
        with path.open("r", encoding="utf-8") as f:
            doc = json.load(f)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedTranscript(name, -1, f"unparseable JSON: {exc}") from exc

    if not isinstance(doc, dict):
        raise MalformedTranscript(name, -1, "top-level value is not an object")
    episode_id = doc.get("episode_id")
    if not isinstance(episode_id, str) or not episode_id:
        raise MalformedTranscript(name, -1, "missing or empty episode_id")
    records = doc.get("chunks")
    if not isinstance(records, list):
        raise MalformedTranscript(name, -1, "chunks is not an array")

    chunks = []
    for i, rec in enumerate(records):
        if not isinstance(rec, dict):
            raise MalformedTranscript(name, i, "chunk record is not an object")
        text = rec.get("text")
        if not isinstance(text, str):
            raise MalformedTranscript(name, i, "missing or non-string text")
        conf = rec.get("confidence")
        if isinstance(conf, bool) or not isinstance(conf, (int, float)):
            raise MalformedTranscript(name, i, "missing or non-numeric confidence")
        # Percent-scale values (e.g. 96) are rejected, not auto-scaled.
        if not 0.0 <= conf <= 1.0:
            raise ConfidenceOutOfRange(name, i, conf)
        chunks.append(Chunk(episode_id=episode_id, index=i, text=text, confidence=float(conf)))
    return Episode(episode_id=episode_id, chunks=tuple(chunks))


def parse_transcripts(path) -> list[Episode]:
    """Parse a transcript file, or every ``*.json`` file in a directory,
    into Episodes. Chunk order and count mirror the input records."""
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.json"))
    elif path.exists():
        files = [path]
    else:
        raise FileNotFoundError(path)

    episodes = []
    seen = set()
    for f in files:
        ep = _parse_file(f)
        if ep.episode_id in seen:
            raise DuplicateEpisodeId(f"episode_id {ep.episode_id!r} appears in more than one file")
        seen.add(ep.episode_id)
        episodes.append(ep)
    return episodes


def filter_chunks(episodes: list[Episode], threshold: float) -> list[Chunk]:
    """Keep chunks with confidence >= threshold ("less than 96%" are
    removed, so the boundary is kept) and non-blank text, ordered by
    (episode_id, index)."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold!r} outside [0, 1]")
    kept = [
        c
        for ep in episodes
        for c in ep.chunks
        if c.confidence >= threshold and c.text.strip()
    ]
    kept.sort(key=lambda c: (c.episode_id, c.index))
    return kept


def chunk_to_record(chunk: Chunk) -> dict:
    return {
        "episode_id": chunk.episode_id,
        "index": chunk.index,
        "text": chunk.text,
        "confidence": chunk.confidence,
    }


def record_to_chunk(rec: dict) -> Chunk:
    return Chunk(
        episode_id=rec["episode_id"],
        index=rec["index"],
        text=rec["text"],
        confidence=rec["confidence"],
    )
