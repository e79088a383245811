"""Pipeline statistics aggregation and human-reviewable exports.

Counts are recomputed from the stage files themselves; sidecar values
are cross-checked and any disagreement raises InconsistentCounts.
"""

from __future__ import annotations

import csv
from pathlib import Path

from . import jsonio, layout
from .errors import InconsistentCounts
from .models import PipelineStats
from .pairing import chunk_pair_counts, pair_to_record
from .tagging import record_to_term


def _count_lines(path: Path) -> int:
    return sum(1 for _ in jsonio.read_jsonl(path))


def _recount_pairs(workdir: Path, max_gap):
    terms_by_chunk: dict[tuple[str, int], list] = {}
    for rec in jsonio.read_jsonl(workdir / layout.TERMS):
        t = record_to_term(rec)
        terms_by_chunk.setdefault(t.chunk_key, []).append(t)
    return chunk_pair_counts(terms_by_chunk, max_gap=max_gap)


def summarize(workdir) -> PipelineStats:
    """Recount every stage file in the workdir into PipelineStats."""
    workdir = Path(workdir)

    meta = jsonio.read_json(workdir / layout.INGEST_META)
    episodes = meta["episodes"]
    chunks_total = meta["chunks_total"]
    chunks_kept = _count_lines(workdir / layout.CHUNKS)
    terms = _count_lines(workdir / layout.TERMS)

    counts = jsonio.read_json(workdir / layout.COUNTS)
    raw, filtered, deduped = _recount_pairs(workdir, counts.get("max_gap"))
    recount = {"raw": len(raw), "class_filtered": len(filtered), "deduped": len(deduped)}
    for field in ("raw", "class_filtered", "deduped"):
        if counts.get(field) != recount[field]:
            raise InconsistentCounts(
                f"counts.json {field}={counts.get(field)} but recount gives {recount[field]}"
            )
    pairs_on_disk = [
        (r["drug"], r["disease"]) for r in jsonio.read_jsonl(workdir / layout.PAIRS)
    ]
    if pairs_on_disk != [(p.drug_norm, p.disease_norm) for p in deduped]:
        raise InconsistentCounts("pairs.jsonl disagrees with pairs recomputed from terms.jsonl")

    kg_report = jsonio.read_json(workdir / layout.KG_REPORT)
    kg_verified = len(kg_report["verified_pairs"])
    if kg_report["verified"] != kg_verified:
        raise InconsistentCounts(
            f"kg_report verified={kg_report['verified']} but lists {kg_verified} verified pairs"
        )
    if kg_report["total"] != len(deduped):
        raise InconsistentCounts(
            f"kg_report total={kg_report['total']} but {len(deduped)} deduped pairs exist"
        )

    cooccur_hits = 0
    cooccur_path = workdir / layout.COOCCUR
    if cooccur_path.exists():
        cooccur = jsonio.read_json(cooccur_path)
        cooccur_hits = sum(1 for r in cooccur["results"] if r["count"] > 0)

    stats = PipelineStats(
        episodes=episodes,
        chunks_total=chunks_total,
        chunks_kept=chunks_kept,
        terms=terms,
        raw_pairs=len(raw),
        class_filtered=len(filtered),
        deduped=len(deduped),
        kg_verified=kg_verified,
        cooccur_hits=cooccur_hits,
    )
    _check_invariants(stats)
    return stats


def _check_invariants(s: PipelineStats) -> None:
    if s.chunks_kept > s.chunks_total:
        raise InconsistentCounts("chunks_kept exceeds chunks_total")
    if not (s.deduped <= s.class_filtered <= s.raw_pairs):
        raise InconsistentCounts("pair counts violate deduped <= class_filtered <= raw")
    if s.kg_verified > s.deduped:
        raise InconsistentCounts("kg_verified exceeds deduped pair count")


def disease_table(workdir) -> list[dict]:
    """Per-disease association rows: for each (disease, drug) pair, the
    KG verification flag and any co-occurrence evidence. Sorted by
    disease then drug; null evidence fields mean co-occurrence was not
    computed for that pair."""
    workdir = Path(workdir)
    kg_report = jsonio.read_json(workdir / layout.KG_REPORT)
    verified = {(v["drug"], v["disease"]) for v in kg_report["verified_pairs"]}

    cooccur_by_pair = {}
    cooccur_path = workdir / layout.COOCCUR
    if cooccur_path.exists():
        for r in jsonio.read_json(cooccur_path)["results"]:
            cooccur_by_pair[(r["drug"], r["disease"])] = r

    rows = []
    for rec in jsonio.read_jsonl(workdir / layout.PAIRS):
        key = (rec["drug"], rec["disease"])
        evidence = cooccur_by_pair.get(key)
        rows.append(
            {
                "disease": rec["disease"],
                "drug": rec["drug"],
                "kg_verified": key in verified,
                "cooccur_count": evidence["count"] if evidence else None,
                "strength": evidence["strength"] if evidence else None,
            }
        )
    rows.sort(key=lambda r: (r["disease"], r["drug"]))
    return rows


def write_disease_table_csv(rows: list[dict], path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["disease", "drug", "kg_verified", "cooccur_count", "strength"])
        for r in rows:
            writer.writerow(
                [
                    r["disease"],
                    r["drug"],
                    str(r["kg_verified"]).lower(),
                    "" if r["cooccur_count"] is None else r["cooccur_count"],
                    "" if r["strength"] is None else r["strength"],
                ]
            )
