"""Standoff annotation export.

Reads a scrubbed corpus (JSON Lines with ``episode_id``, ``index``,
``text``) and writes one standoff record per chunk:

    {"episode_id": str, "chunk_index": int, "channel": "MED"|"DISEASE",
     "spans": [{"start": int, "end": int, "surface": str}]}

Offsets are Unicode character offsets into the exact scrubbed text and
every surface equals its text slice; emitted spans within a record are
non-overlapping. Any violation is a bridge bug and raises before a
nonconforming file is written.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

CHANNELS = ("MED", "DISEASE")


class ModelLoadFailure(Exception):
    pass


class NonconformingOutput(Exception):
    pass


@dataclass(frozen=True)
class BridgeRequest:
    corpus_path: str
    channel: str  # MED | DISEASE
    model: str  # backend spec, e.g. "hf:/path/to/model"
    output_path: str
    labels: tuple[str, ...] | None = None  # restrict to these entity groups


def _load_backend(model: str, labels):
    if model.startswith("hf:"):
        from .hf_backend import HFTagger

        return HFTagger(model[len("hf:"):], labels=labels)
    raise ModelLoadFailure(f"unknown model spec {model!r}; expected hf:<model-path-or-id>")


def _clean_spans(text: str, raw_spans) -> list[dict]:
    """Clip, strip whitespace edges, drop empties, sort, and drop any
    span overlapping an earlier one."""
    cleaned = []
    for start, end in raw_spans:
        start = max(0, start)
        end = min(len(text), end)
        while start < end and text[start].isspace():
            start += 1
        while end > start and text[end - 1].isspace():
            end -= 1
        if end > start:
            cleaned.append((start, end))
    cleaned.sort()
    spans = []
    last_end = 0
    for start, end in cleaned:
        if start < last_end:
            continue
        spans.append({"start": start, "end": end, "surface": text[start:end]})
        last_end = end
    return spans


def _verify_record(text: str, spans: list[dict]) -> None:
    last_end = 0
    for s in spans:
        if not (0 <= s["start"] < s["end"] <= len(text)):
            raise NonconformingOutput(f"span {s} out of bounds for text of length {len(text)}")
        if s["surface"] != text[s["start"] : s["end"]]:
            raise NonconformingOutput(f"surface mismatch in span {s}")
        if s["start"] < last_end:
            raise NonconformingOutput(f"overlapping span {s}")
        last_end = s["end"]


def _read_corpus(path):
    with Path(path).open("r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                rec = json.loads(line)
                yield rec["episode_id"], rec["index"], rec["text"]


def export_annotations(request: BridgeRequest) -> int:
    """Tag every chunk and write the standoff file; returns the number
    of records written. Chunks with no entities still get a record with
    an empty span list."""
    if request.channel not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}, got {request.channel!r}")
    tagger = _load_backend(request.model, request.labels)

    n = 0
    with Path(request.output_path).open("w", encoding="utf-8") as out:
        for episode_id, chunk_index, text in _read_corpus(request.corpus_path):
            spans = _clean_spans(text, tagger.tag(text))
            _verify_record(text, spans)
            record = {
                "episode_id": episode_id,
                "chunk_index": chunk_index,
                "channel": request.channel,
                "spans": spans,
            }
            out.write(json.dumps(record, ensure_ascii=False, sort_keys=True, separators=(",", ":")))
            out.write("\n")
            n += 1
    return n
