"""Canonical stage file names inside a pipeline workdir."""

CHUNKS = "chunks.jsonl"
INGEST_META = "ingest_meta.json"
SCRUBBED = "scrubbed.jsonl"
TERMS = "terms.jsonl"
PAIRS = "pairs.jsonl"
COUNTS = "counts.json"
KG_REPORT = "kg_report.json"
UNVERIFIED = "unverified.jsonl"
COOCCUR = "cooccur.json"
STATS = "stats.json"
DISEASE_TABLE = "disease_table.csv"
