"""Core domain types. All types are immutable and safe to share."""

from __future__ import annotations

from dataclasses import dataclass, field

MED = "MED"
DISEASE = "DISEASE"

DRUG = "Drug"
DISEASE_CLASS = "Disease"


@dataclass(frozen=True)
class Chunk:
    """One transcribed text segment; the pipeline's unit of work."""

    episode_id: str
    index: int
    text: str
    confidence: float

    @property
    def key(self) -> tuple[str, int]:
        return (self.episode_id, self.index)


@dataclass(frozen=True)
class Episode:
    episode_id: str
    chunks: tuple[Chunk, ...]


@dataclass(frozen=True)
class Token:
    """A whitespace token with edge punctuation stripped; offsets point
    at the stripped core within the chunk text."""

    text: str
    start: int
    end: int


@dataclass(frozen=True)
class EntitySpan:
    """A tagged character range over one chunk's scrubbed text."""

    chunk_key: tuple[str, int]
    start: int
    end: int
    surface: str
    channel: str  # MED | DISEASE


@dataclass(frozen=True)
class TypedTerm:
    """A tagged term classified Drug or Disease, positioned in its chunk."""

    chunk_key: tuple[str, int]
    ordinal: int
    surface: str
    norm: str
    klass: str  # Drug | Disease
    start: int
    end: int
    token_start: int = 0
    token_end: int = 0  # exclusive


@dataclass(frozen=True)
class CandidatePair:
    a: TypedTerm
    b: TypedTerm

    @property
    def provenance(self) -> tuple[str, int, tuple[int, int]]:
        ep, idx = self.a.chunk_key
        return (ep, idx, (self.a.ordinal, self.b.ordinal))


@dataclass(frozen=True)
class DrugDiseasePair:
    drug_norm: str
    disease_norm: str
    support: tuple[tuple[str, int, tuple[int, int]], ...]


@dataclass(frozen=True)
class VerifiedPair:
    drug_norm: str
    disease_norm: str
    predicates: tuple[str, ...]


@dataclass(frozen=True)
class ValidationReport:
    total: int
    verified: int
    verified_pairs: tuple[VerifiedPair, ...]
    unverified_pairs: tuple[DrugDiseasePair, ...]

    @property
    def recall(self) -> float:
        return self.verified / self.total if self.total > 0 else 0.0


@dataclass(frozen=True)
class CooccurrenceResult:
    drug_norm: str
    disease_norm: str
    count: int
    strength: str  # none | weak | strong


@dataclass(frozen=True)
class PipelineStats:
    episodes: int = 0
    chunks_total: int = 0
    chunks_kept: int = 0
    terms: int = 0
    raw_pairs: int = 0
    class_filtered: int = 0
    deduped: int = 0
    kg_verified: int = 0
    cooccur_hits: int = 0

    def as_dict(self) -> dict:
        return {
            "episodes": self.episodes,
            "chunks_total": self.chunks_total,
            "chunks_kept": self.chunks_kept,
            "terms": self.terms,
            "raw_pairs": self.raw_pairs,
            "class_filtered": self.class_filtered,
            "deduped": self.deduped,
            "kg_verified": self.kg_verified,
            "cooccur_hits": self.cooccur_hits,
        }
