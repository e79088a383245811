"""Entity tagging over scrubbed chunks.

Two tagger channels exist: MED (drugs and diseases) and DISEASE
(diseases only). Each channel can be fed by a dictionary tagger
(`tag_lexicon`) or by pre-computed standoff annotations
(`load_standoff`). Terms are classified Drug or Disease by comparing
the two channels: a MED term the disease channel does not acknowledge
is a Drug.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import jsonio
from .errors import (
    OffsetOutOfBounds,
    OverlappingSpans,
    StandoffError,
    SurfaceMismatch,
    UnknownChunkKey,
)
from .models import DISEASE, DISEASE_CLASS, DRUG, MED, Chunk, EntitySpan, TypedTerm
from .normalize import normalize_name
from .preprocess import tokenize


@dataclass(frozen=True)
class Gazetteer:
    entries: frozenset[str]  # normalized phrases
    channel: str  # MED | DISEASE

    @property
    def max_words(self) -> int:
        return max((len(e.split()) for e in self.entries), default=0)


def load_gazetteer(path, channel: str) -> Gazetteer:
    """Read one phrase per line; entries are normalized on load."""
    entries = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        norm = normalize_name(line)
        if norm:
            entries.add(norm)
    return Gazetteer(entries=frozenset(entries), channel=channel)


def tag_lexicon(chunk: Chunk, gaz: Gazetteer) -> list[EntitySpan]:
    """Greedy longest-match, left-to-right, case-insensitive,
    token-boundary-aligned dictionary tagging."""
    text = chunk.text
    tokens = tokenize(text)
    spans = []
    i = 0
    while i < len(tokens):
        matched = False
        for n in range(min(gaz.max_words, len(tokens) - i), 0, -1):
            start = tokens[i].start
            end = tokens[i + n - 1].end
            if normalize_name(text[start:end]) in gaz.entries:
                spans.append(
                    EntitySpan(
                        chunk_key=chunk.key,
                        start=start,
                        end=end,
                        surface=text[start:end],
                        channel=gaz.channel,
                    )
                )
                i += n
                matched = True
                break
        if not matched:
            i += 1
    return spans


def _check_no_overlap(spans: list[EntitySpan], context: str) -> None:
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.start < prev.end:
            raise OverlappingSpans(
                f"{context}: spans [{prev.start},{prev.end}) and [{cur.start},{cur.end}) overlap"
            )


def load_standoff(path, chunks_by_key: dict[tuple[str, int], str]) -> dict:
    """Load standoff annotations and validate offsets against the
    referenced scrubbed corpus (chunk_key -> text).

    Returns {chunk_key: {channel: [EntitySpan, ...]}}.
    """
    result: dict[tuple[str, int], dict[str, list[EntitySpan]]] = {}
    for rec in jsonio.read_jsonl(path):
        key = (rec["episode_id"], rec["chunk_index"])
        channel = rec["channel"]
        if channel not in (MED, DISEASE):
            raise StandoffError(f"unknown channel {channel!r} for chunk {key}")
        if key not in chunks_by_key:
            raise UnknownChunkKey(f"standoff references unknown chunk {key}")
        text = chunks_by_key[key]
        spans = []
        for s in rec["spans"]:
            start, end = s["start"], s["end"]
            if not (0 <= start < end <= len(text)):
                raise OffsetOutOfBounds(
                    f"chunk {key}: span [{start},{end}) outside text of length {len(text)}"
                )
            if s["surface"] != text[start:end]:
                raise SurfaceMismatch(
                    f"chunk {key}: declared surface {s['surface']!r} != slice {text[start:end]!r}"
                )
            spans.append(
                EntitySpan(chunk_key=key, start=start, end=end, surface=s["surface"], channel=channel)
            )
        _check_no_overlap(spans, f"chunk {key} channel {channel}")
        result.setdefault(key, {}).setdefault(channel, []).extend(spans)
        _check_no_overlap(result[key][channel], f"chunk {key} channel {channel}")
    return result


def _overlaps(a: EntitySpan, b: EntitySpan) -> bool:
    return a.start < b.end and b.start < a.end


def _token_index(text: str, offset: int) -> int:
    """Token position of a character offset in space-joined text."""
    return text.count(" ", 0, offset)


def classify_terms(
    text: str, med: list[EntitySpan], dis: list[EntitySpan]
) -> list[TypedTerm]:
    """Assign Drug/Disease classes by comparing the two channels.

    A MED span is a Disease if any DISEASE span overlaps it by at least
    one character, or some DISEASE span anywhere in the chunk has the
    same normalized surface; otherwise it is a Drug (the set
    difference). DISEASE spans with no overlapping MED span are emitted
    as additional Disease terms.
    """
    med = sorted(med, key=lambda s: (s.start, s.end))
    dis = sorted(dis, key=lambda s: (s.start, s.end))
    dis_norms = {normalize_name(d.surface) for d in dis}

    chosen: list[tuple[EntitySpan, str]] = []
    for m in med:
        is_disease = normalize_name(m.surface) in dis_norms or any(
            _overlaps(m, d) for d in dis
        )
        chosen.append((m, DISEASE_CLASS if is_disease else DRUG))
    for d in dis:
        if not any(_overlaps(d, m) for m in med):
            chosen.append((d, DISEASE_CLASS))

    chosen.sort(key=lambda pair: (pair[0].start, pair[0].end))
    terms = []
    for ordinal, (span, klass) in enumerate(chosen):
        terms.append(
            TypedTerm(
                chunk_key=span.chunk_key,
                ordinal=ordinal,
                surface=span.surface,
                norm=normalize_name(span.surface),
                klass=klass,
                start=span.start,
                end=span.end,
                token_start=_token_index(text, span.start),
                token_end=_token_index(text, span.end - 1) + 1,
            )
        )
    return terms


def term_to_record(t: TypedTerm) -> dict:
    ep, idx = t.chunk_key
    return {
        "episode_id": ep,
        "chunk_index": idx,
        "ordinal": t.ordinal,
        "surface": t.surface,
        "norm": t.norm,
        "klass": t.klass,
        "start": t.start,
        "end": t.end,
        "token_start": t.token_start,
        "token_end": t.token_end,
    }


def record_to_term(rec: dict) -> TypedTerm:
    return TypedTerm(
        chunk_key=(rec["episode_id"], rec["chunk_index"]),
        ordinal=rec["ordinal"],
        surface=rec["surface"],
        norm=rec["norm"],
        klass=rec["klass"],
        start=rec["start"],
        end=rec["end"],
        token_start=rec.get("token_start", 0),
        token_end=rec.get("token_end", 0),
    )
