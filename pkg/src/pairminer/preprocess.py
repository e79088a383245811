"""Tokenization and medical-adjacent blocklist scrubbing."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import MalformedBlocklist
from .models import Chunk, Token
from .normalize import _is_punct

_WORD_RE = re.compile(r"\S+")

# Built-in blocklist of medical-adjacent terms; slash rows expanded into
# their variants.
DEFAULT_BLOCKLIST_TERMS = frozenset(
    {
        "pharmacy", "health", "allergist",
        "patient", "biochemical", "medication",
        "symptom", "poop", "feces",
        "urologist", "polypharmacy", "relief",
        "nutrient", "dr", "herbal",
        "care", "healthcare", "prognosis", "diagnosis",
        "die", "death", "insurance", "remittance",
        "relapse", "physician", "decease",
        "practitioner", "anesthesia", "icu",
        "medicare", "etiology",
    }
)

# Prefix matching below this length would hit unrelated words
# ("dr" -> "drug"), so short entries match exactly only.
_MIN_PREFIX_LEN = 4


def tokenize(text: str) -> list[Token]:
    """Split on whitespace and strip leading/trailing punctuation from
    each token; offsets refer to the stripped core."""
    tokens = []
    for m in _WORD_RE.finditer(text):
        start, end = m.start(), m.end()
        while start < end and _is_punct(text[start]):
            start += 1
        while end > start and _is_punct(text[end - 1]):
            end -= 1
        if end > start:
            tokens.append(Token(text=text[start:end], start=start, end=end))
    return tokens


@dataclass(frozen=True)
class Blocklist:
    terms: frozenset[str]

    def matches(self, token_text: str) -> bool:
        """Partial-match rule: exact lowercased equality, or the token
        starts with a term of length >= 4."""
        low = token_text.lower()
        if low in self.terms:
            return True
        return any(
            len(term) >= _MIN_PREFIX_LEN and low.startswith(term)
            for term in self.terms
        )


def load_blocklist(path=None) -> Blocklist:
    """Load a blocklist file (one term per line, ``#`` comments,
    ``a/b`` expands to both variants); without a path, return the
    built-in default."""
    if path is None:
        return Blocklist(terms=DEFAULT_BLOCKLIST_TERMS)

    terms = set()
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        for variant in line.split("/"):
            variant = variant.strip().lower()
            if not variant:
                raise MalformedBlocklist(f"line {lineno}: empty slash variant in {line!r}")
            if any(ch.isspace() for ch in variant):
                raise MalformedBlocklist(
                    f"line {lineno}: multi-word entries are unsupported: {variant!r}"
                )
            terms.add(variant)
    return Blocklist(terms=frozenset(terms))


def scrub_chunk(chunk: Chunk, blocklist: Blocklist) -> Chunk:
    """Delete blocklist-matching tokens from the chunk text, joining
    survivors with single spaces. Surviving tokens keep their casing."""
    survivors = [t.text for t in tokenize(chunk.text) if not blocklist.matches(t.text)]
    return replace(chunk, text=" ".join(survivors))
