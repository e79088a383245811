"""Surface-form normalization shared by tagging and validation."""

import unicodedata


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def normalize_name(s: str) -> str:
    """Normalize a free-text term for name-based matching.

    NFC, lowercase, internal whitespace collapsed to single spaces,
    leading/trailing punctuation and whitespace stripped. Internal
    punctuation (apostrophes, hyphens) is preserved.
    """
    s = unicodedata.normalize("NFC", s).lower()
    s = " ".join(s.split())
    start, end = 0, len(s)
    while start < end and (s[start] == " " or _is_punct(s[start])):
        start += 1
    while end > start and (s[end - 1] == " " or _is_punct(s[end - 1])):
        end -= 1
    return s[start:end]
