"""Candidate pair formation and post-processing filters.

Stage order: collapse adjacent duplicates -> form pairs from adjacent
terms -> drop same-class pairs (a drug cannot treat another drug) ->
deduplicate, folding (A, B) and (B, A) into one canonical pair.
Pairs never cross chunk boundaries.
"""

from __future__ import annotations

from dataclasses import replace

from .models import DISEASE_CLASS, DRUG, CandidatePair, DrugDiseasePair, TypedTerm


def collapse_adjacent_duplicates(terms: list[TypedTerm]) -> list[TypedTerm]:
    """Collapse runs of consecutive terms with equal norm to the first
    occurrence; ordinals are reassigned densely."""
    kept = []
    for t in terms:
        if kept and kept[-1].norm == t.norm:
            continue
        kept.append(t)
    return [replace(t, ordinal=i) for i, t in enumerate(kept)]


def form_pairs(terms: list[TypedTerm], max_gap: int | None = None) -> list[CandidatePair]:
    """One pair per consecutive term pair within a chunk; n terms yield
    n-1 pairs. With max_gap set, a pair forms only when at most that
    many tokens separate the two terms."""
    pairs = []
    for a, b in zip(terms, terms[1:]):
        if max_gap is not None and (b.token_start - a.token_end) > max_gap:
            continue
        pairs.append(CandidatePair(a=a, b=b))
    return pairs


def filter_same_class(pairs: list[CandidatePair]) -> list[CandidatePair]:
    """Retain exactly the pairs with one Drug and one Disease member."""
    return [p for p in pairs if p.a.klass != p.b.klass]


def dedup(pairs: list[CandidatePair]) -> list[DrugDiseasePair]:
    """Canonicalize each class-filtered pair to (drug, disease) and
    merge duplicates across chunks and episodes, accumulating
    provenance. Output is sorted by (drug_norm, disease_norm)."""
    merged: dict[tuple[str, str], list] = {}
    for p in pairs:
        drug = p.a if p.a.klass == DRUG else p.b
        disease = p.a if p.a.klass == DISEASE_CLASS else p.b
        key = (drug.norm, disease.norm)
        merged.setdefault(key, []).append(p.provenance)
    out = []
    for (drug_norm, disease_norm) in sorted(merged):
        support = tuple(sorted(merged[(drug_norm, disease_norm)]))
        out.append(
            DrugDiseasePair(drug_norm=drug_norm, disease_norm=disease_norm, support=support)
        )
    return out


def chunk_pair_counts(
    terms_by_chunk: dict[tuple[str, int], list[TypedTerm]], max_gap: int | None = None
) -> tuple[list[CandidatePair], list[CandidatePair], list[DrugDiseasePair]]:
    """Run the full post-processing over per-chunk term lists; returns
    (raw pairs, class-filtered pairs, deduped pairs)."""
    raw: list[CandidatePair] = []
    for key in sorted(terms_by_chunk):
        terms = sorted(terms_by_chunk[key], key=lambda t: t.ordinal)
        raw.extend(form_pairs(collapse_adjacent_duplicates(terms), max_gap=max_gap))
    filtered = filter_same_class(raw)
    return raw, filtered, dedup(filtered)


def pair_to_record(p: DrugDiseasePair) -> dict:
    return {
        "drug": p.drug_norm,
        "disease": p.disease_norm,
        "support": [
            {"episode_id": ep, "chunk_index": idx} for ep, idx, _ in p.support
        ],
    }


def record_to_pair(rec: dict) -> DrugDiseasePair:
    support = tuple(
        (s["episode_id"], s["chunk_index"], (0, 0)) for s in rec.get("support", [])
    )
    return DrugDiseasePair(drug_norm=rec["drug"], disease_norm=rec["disease"], support=support)
