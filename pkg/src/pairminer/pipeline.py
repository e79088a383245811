"""Stage implementations and the one-shot pipeline runner.

Every stage persists its output as JSONL/JSON in the workdir, so any
stage can be re-run in isolation or swapped for an external tool.
Reruns on identical inputs produce byte-identical stage files, and
results are independent of worker_count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import jsonio, layout
from .cooccur import DEFAULT_STRONG_THRESHOLD, cooccurrence, load_index
from .errors import ConfigError, StageError
from .ingest import (
    chunk_to_record,
    filter_chunks,
    parse_transcripts,
    record_to_chunk,
)
from .kg import load_kg, validate
from .models import DISEASE, MED, Chunk, PipelineStats
from .pairing import chunk_pair_counts, pair_to_record, record_to_pair
from .preprocess import load_blocklist, scrub_chunk
from .report import disease_table, summarize, write_disease_table_csv
from .tagging import (
    classify_terms,
    load_gazetteer,
    load_standoff,
    tag_lexicon,
    term_to_record,
)

DEFAULT_THRESHOLD = 0.96

STANDOFF_PREFIX = "standoff:"


def _map_ordered(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _guarded(stage: str, out_paths: list[Path]):
    """Decorator-ish context: remove partial outputs and re-raise with
    the stage name prefixed."""

    class _Guard:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is not None:
                for p in out_paths:
                    Path(p).unlink(missing_ok=True)
                if not isinstance(exc, StageError):
                    raise StageError(stage, exc) from exc
            return False

    return _Guard()


def stage_ingest(input_path, threshold: float, out_path, meta_path=None) -> int:
    """Parse transcripts, filter by confidence, write chunks.jsonl plus
    a sidecar with pre-filter episode/chunk counts."""
    outs = [out_path] + ([meta_path] if meta_path else [])
    with _guarded("ingest", outs):
        episodes = parse_transcripts(input_path)
        kept = filter_chunks(episodes, threshold)
        jsonio.write_jsonl(out_path, (chunk_to_record(c) for c in kept))
        if meta_path:
            jsonio.write_json(
                meta_path,
                {
                    "episodes": len(episodes),
                    "chunks_total": sum(len(ep.chunks) for ep in episodes),
                    "threshold": threshold,
                },
            )
        return len(kept)


def stage_scrub(in_path, blocklist_path, out_path, workers: int = 1) -> int:
    """Apply the medical-adjacent blocklist to every chunk.
    blocklist_path None or "builtin" selects the built-in list."""
    with _guarded("scrub", [out_path]):
        if blocklist_path in (None, "builtin"):
            blocklist = load_blocklist(None)
        else:
            blocklist = load_blocklist(blocklist_path)
        chunks = [record_to_chunk(r) for r in jsonio.read_jsonl(in_path)]
        scrubbed = _map_ordered(lambda c: scrub_chunk(c, blocklist), chunks, workers)
        jsonio.write_jsonl(out_path, (chunk_to_record(c) for c in scrubbed))
        return len(scrubbed)


def _span_source(source: str, channel: str, chunks: list[Chunk]):
    """Resolve a tagger source spec ("standoff:PATH" or a gazetteer
    path) into a per-chunk span function."""
    if source.startswith(STANDOFF_PREFIX):
        path = source[len(STANDOFF_PREFIX):]
        by_key = load_standoff(path, {c.key: c.text for c in chunks})
        return lambda chunk: by_key.get(chunk.key, {}).get(channel, [])
    gaz = load_gazetteer(source, channel)
    return lambda chunk: tag_lexicon(chunk, gaz)


def stage_tag(in_path, med_source: str, disease_source: str, out_path, workers: int = 1) -> int:
    """Tag both channels over scrubbed chunks and classify terms."""
    with _guarded("tag", [out_path]):
        chunks = [record_to_chunk(r) for r in jsonio.read_jsonl(in_path)]
        med_fn = _span_source(med_source, MED, chunks)
        dis_fn = _span_source(disease_source, DISEASE, chunks)

        def tag_one(chunk: Chunk):
            return classify_terms(chunk.text, med_fn(chunk), dis_fn(chunk))

        per_chunk = _map_ordered(tag_one, chunks, workers)
        n = 0
        records = []
        for terms in per_chunk:
            for t in terms:
                records.append(term_to_record(t))
                n += 1
        jsonio.write_jsonl(out_path, records)
        return n


def stage_pair(in_path, out_path, counts_path, max_gap: int | None = None) -> dict:
    """Run post-processing over tagged terms; write pairs.jsonl and the
    counts sidecar."""
    with _guarded("pair", [out_path, counts_path]):
        from .tagging import record_to_term

        terms_by_chunk: dict[tuple[str, int], list] = {}
        for rec in jsonio.read_jsonl(in_path):
            t = record_to_term(rec)
            terms_by_chunk.setdefault(t.chunk_key, []).append(t)
        raw, filtered, deduped = chunk_pair_counts(terms_by_chunk, max_gap=max_gap)
        jsonio.write_jsonl(out_path, (pair_to_record(p) for p in deduped))
        counts = {
            "raw": len(raw),
            "class_filtered": len(filtered),
            "deduped": len(deduped),
            "max_gap": max_gap,
        }
        jsonio.write_json(counts_path, counts)
        return counts


def stage_validate(pairs_path, nodes_path, edges_path, report_path, unverified_path) -> float:
    """Check deduped pairs against the knowledge graph; write the
    validation report and the unverified remainder. Returns recall."""
    with _guarded("validate", [report_path, unverified_path]):
        kg = load_kg(nodes_path, edges_path)
        pairs = [record_to_pair(r) for r in jsonio.read_jsonl(pairs_path)]
        report = validate(pairs, kg)
        jsonio.write_json(
            report_path,
            {
                "total": report.total,
                "verified": report.verified,
                "recall": report.recall,
                "verified_pairs": [
                    {
                        "drug": v.drug_norm,
                        "disease": v.disease_norm,
                        "predicates": list(v.predicates),
                    }
                    for v in report.verified_pairs
                ],
                "unverified_pairs": [
                    {"drug": u.drug_norm, "disease": u.disease_norm}
                    for u in report.unverified_pairs
                ],
            },
        )
        jsonio.write_jsonl(
            unverified_path, (pair_to_record(u) for u in report.unverified_pairs)
        )
        return report.recall


def stage_cooccur(pairs_path, index_path, strong_threshold: int, out_path) -> int:
    """Count publication co-occurrence for each pair in pairs_path
    (by default the KG-unverified pairs)."""
    with _guarded("cooccur", [out_path]):
        index = load_index(index_path)
        results = []
        hits = 0
        for rec in jsonio.read_jsonl(pairs_path):
            r = cooccurrence(index, rec["drug"], rec["disease"], strong_threshold)
            results.append(
                {
                    "drug": r.drug_norm,
                    "disease": r.disease_norm,
                    "count": r.count,
                    "strength": r.strength,
                }
            )
            hits += 1 if r.count > 0 else 0
        jsonio.write_json(out_path, {"strong_threshold": strong_threshold, "results": results})
        return hits


def stage_report(workdir, fmt: str, out_path) -> PipelineStats:
    """Aggregate stage files into stats (json) or the per-disease
    association table (csv)."""
    with _guarded("report", [out_path]):
        stats = summarize(workdir)
        if fmt == "json":
            jsonio.write_json(out_path, stats.as_dict())
        elif fmt == "csv":
            write_disease_table_csv(disease_table(workdir), out_path)
        else:
            raise ConfigError(f"unknown report format {fmt!r}")
        return stats


@dataclass(frozen=True)
class PipelineConfig:
    input_dir: str
    kg_nodes: str
    kg_edges: str
    workdir: str
    threshold: float = DEFAULT_THRESHOLD
    blocklist_path: str | None = None
    tagger_med: str = ""
    tagger_disease: str = ""
    pub_index: str | None = None
    strong_threshold: int = DEFAULT_STRONG_THRESHOLD
    max_gap: int | None = None
    worker_count: int = 1

    def check(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold {self.threshold!r} outside [0, 1]")
        if self.worker_count < 1:
            raise ConfigError("worker_count must be >= 1")
        if self.max_gap is not None and self.max_gap < 0:
            raise ConfigError("max_gap must be >= 0")
        if self.strong_threshold < 1:
            raise ConfigError("strong_threshold must be >= 1")
        required = {"input_dir": self.input_dir, "kg_nodes": self.kg_nodes, "kg_edges": self.kg_edges}
        for name, value in required.items():
            if not value:
                raise ConfigError(f"{name} is required")
            if not Path(value).exists():
                raise ConfigError(f"{name} path does not exist: {value}")
        for name, value in (("tagger_med", self.tagger_med), ("tagger_disease", self.tagger_disease)):
            if not value:
                raise ConfigError(f"{name} is required")
            path = value[len(STANDOFF_PREFIX):] if value.startswith(STANDOFF_PREFIX) else value
            if not Path(path).exists():
                raise ConfigError(f"{name} path does not exist: {path}")
        if self.blocklist_path not in (None, "builtin") and not Path(self.blocklist_path).exists():
            raise ConfigError(f"blocklist path does not exist: {self.blocklist_path}")
        if self.pub_index is not None and not Path(self.pub_index).exists():
            raise ConfigError(f"pub_index path does not exist: {self.pub_index}")


_INT_KEYS = {"strong_threshold", "max_gap", "worker_count"}
_FLOAT_KEYS = {"threshold"}


def load_config(path, overrides: dict | None = None) -> PipelineConfig:
    """Flat key = value config file; '#' comments; CLI flags override
    file values."""
    values: dict = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}: line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})

    known = set(PipelineConfig.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    parsed: dict = {}
    for key, value in values.items():
        if value is None or value == "":
            continue
        try:
            if key in _INT_KEYS:
                parsed[key] = int(value)
            elif key in _FLOAT_KEYS:
                parsed[key] = float(value)
            else:
                parsed[key] = value
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {value!r}") from exc
    try:
        return PipelineConfig(**parsed)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def run(config: PipelineConfig) -> PipelineStats:
    """Execute ingest -> scrub -> tag -> pair -> validate -> cooccur ->
    report, persisting each stage output in the workdir."""
    config.check()
    workdir = Path(config.workdir)
    workdir.mkdir(parents=True, exist_ok=True)

    stage_ingest(
        config.input_dir,
        config.threshold,
        workdir / layout.CHUNKS,
        workdir / layout.INGEST_META,
    )
    stage_scrub(
        workdir / layout.CHUNKS,
        config.blocklist_path,
        workdir / layout.SCRUBBED,
        workers=config.worker_count,
    )
    stage_tag(
        workdir / layout.SCRUBBED,
        config.tagger_med,
        config.tagger_disease,
        workdir / layout.TERMS,
        workers=config.worker_count,
    )
    stage_pair(
        workdir / layout.TERMS,
        workdir / layout.PAIRS,
        workdir / layout.COUNTS,
        max_gap=config.max_gap,
    )
    stage_validate(
        workdir / layout.PAIRS,
        config.kg_nodes,
        config.kg_edges,
        workdir / layout.KG_REPORT,
        workdir / layout.UNVERIFIED,
    )
    if config.pub_index is None:
        (workdir / layout.COOCCUR).unlink(missing_ok=True)
    else:
        stage_cooccur(
            workdir / layout.UNVERIFIED,
            config.pub_index,
            config.strong_threshold,
            workdir / layout.COOCCUR,
        )
    stats = stage_report(workdir, "json", workdir / layout.STATS)
    stage_report(workdir, "csv", workdir / layout.DISEASE_TABLE)
    return stats
