"""Publication co-occurrence counting over a term -> publication index.

Index file: TSV ``term<TAB>publication_id``; duplicate rows collapse.
Co-occurrence of two terms is the size of the intersection of their
posting sets; a missing term has an empty posting set.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import MalformedRow
from .models import CooccurrenceResult
from .normalize import normalize_name

STRENGTH_NONE = "none"
STRENGTH_WEAK = "weak"
STRENGTH_STRONG = "strong"

DEFAULT_STRONG_THRESHOLD = 5


@dataclass(frozen=True)
class PublicationIndex:
    postings: dict[str, frozenset[str]]


def load_index(path) -> PublicationIndex:
    postings: dict[str, set[str]] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cols = line.rstrip("\n").split("\t")
        if len(cols) != 2:
            raise MalformedRow(f"{path}: line {lineno}: expected 2 columns")
        term, pub = normalize_name(cols[0]), cols[1].strip()
        if not term or not pub:
            raise MalformedRow(f"{path}: line {lineno}: empty term or publication id")
        postings.setdefault(term, set()).add(pub)
    return PublicationIndex(postings={t: frozenset(p) for t, p in postings.items()})


def label_strength(count: int, strong_threshold: int = DEFAULT_STRONG_THRESHOLD) -> str:
    if count == 0:
        return STRENGTH_NONE
    return STRENGTH_STRONG if count >= strong_threshold else STRENGTH_WEAK


def cooccurrence(
    index: PublicationIndex,
    term_a: str,
    term_b: str,
    strong_threshold: int = DEFAULT_STRONG_THRESHOLD,
) -> CooccurrenceResult:
    """Count publications containing both normalized terms."""
    count = len(
        index.postings.get(term_a, frozenset()) & index.postings.get(term_b, frozenset())
    )
    return CooccurrenceResult(
        drug_norm=term_a,
        disease_norm=term_b,
        count=count,
        strength=label_strength(count, strong_threshold),
    )
