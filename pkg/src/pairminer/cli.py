"""Command-line entry point: per-stage subcommands plus a one-shot run."""

from __future__ import annotations

import argparse
import sys

from . import pipeline
from .cooccur import DEFAULT_STRONG_THRESHOLD
from .errors import PairminerError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairminer",
        description="Extract and validate candidate drug-disease pairs from transcript text.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse transcripts and filter by confidence")
    p.add_argument("--input", required=True, help="transcript file or directory")
    p.add_argument("--threshold", type=float, default=pipeline.DEFAULT_THRESHOLD)
    p.add_argument("--out", required=True, help="output chunks.jsonl")
    p.add_argument("--meta-out", default=None, help="optional sidecar with pre-filter counts")

    p = sub.add_parser("scrub", help="remove medical-adjacent blocklist terms")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--blocklist", default="builtin", help="blocklist file, or 'builtin'")
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("tag", help="tag entities and classify Drug/Disease")
    p.add_argument("--in", dest="in_path", required=True, help="scrubbed.jsonl")
    p.add_argument("--med", required=True, help="gazetteer path or standoff:PATH")
    p.add_argument("--disease", required=True, help="gazetteer path or standoff:PATH")
    p.add_argument("--out", required=True, help="output terms.jsonl")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("pair", help="form and filter candidate pairs")
    p.add_argument("--in", dest="in_path", required=True, help="terms.jsonl")
    p.add_argument("--out", required=True, help="output pairs.jsonl")
    p.add_argument("--counts-out", default=None, help="counts sidecar (default: counts.json next to --out)")
    p.add_argument("--max-gap", type=int, default=None, help="max tokens between paired terms")

    p = sub.add_parser("validate", help="check pairs against the knowledge graph")
    p.add_argument("--pairs", required=True)
    p.add_argument("--kg-nodes", required=True)
    p.add_argument("--kg-edges", required=True)
    p.add_argument("--out", required=True, help="output report.json")
    p.add_argument("--unverified-out", default=None, help="unverified pairs jsonl (default next to --out)")

    p = sub.add_parser("cooccur", help="count publication co-occurrence for pairs")
    p.add_argument("--pairs", required=True, help="pairs jsonl (typically the unverified ones)")
    p.add_argument("--index", required=True, help="term/publication TSV")
    p.add_argument("--strong-threshold", type=int, default=DEFAULT_STRONG_THRESHOLD)
    p.add_argument("--out", required=True)

    p = sub.add_parser("report", help="aggregate stage files into stats or a disease table")
    p.add_argument("--workdir", required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", required=True)

    p = sub.add_parser("run", help="run the whole pipeline from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--input-dir", default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--blocklist", dest="blocklist_path", default=None)
    p.add_argument("--med", dest="tagger_med", default=None)
    p.add_argument("--disease", dest="tagger_disease", default=None)
    p.add_argument("--kg-nodes", default=None)
    p.add_argument("--kg-edges", default=None)
    p.add_argument("--pub-index", default=None)
    p.add_argument("--strong-threshold", type=int, default=None)
    p.add_argument("--max-gap", type=int, default=None)
    p.add_argument("--workdir", default=None)
    p.add_argument("--workers", dest="worker_count", type=int, default=None)

    return parser


def _cmd_run(args) -> int:
    overrides = {
        "input_dir": args.input_dir,
        "threshold": args.threshold,
        "blocklist_path": args.blocklist_path,
        "tagger_med": args.tagger_med,
        "tagger_disease": args.tagger_disease,
        "kg_nodes": args.kg_nodes,
        "kg_edges": args.kg_edges,
        "pub_index": args.pub_index,
        "strong_threshold": args.strong_threshold,
        "max_gap": args.max_gap,
        "workdir": args.workdir,
        "worker_count": args.worker_count,
    }
    config = pipeline.load_config(args.config, overrides)
    stats = pipeline.run(config)
    for key, value in stats.as_dict().items():
        print(f"{key}: {value}")
    if stats.deduped > 0:
        print(f"recall: {stats.kg_verified / stats.deduped * 100:.1f}%")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "ingest":
            n = pipeline.stage_ingest(args.input, args.threshold, args.out, args.meta_out)
            print(f"kept {n} chunks")
        elif args.command == "scrub":
            n = pipeline.stage_scrub(args.in_path, args.blocklist, args.out, args.workers)
            print(f"scrubbed {n} chunks")
        elif args.command == "tag":
            n = pipeline.stage_tag(args.in_path, args.med, args.disease, args.out, args.workers)
            print(f"tagged {n} terms")
        elif args.command == "pair":
            counts_out = args.counts_out or str(_sibling(args.out, "counts.json"))
            counts = pipeline.stage_pair(args.in_path, args.out, counts_out, args.max_gap)
            print(
                f"raw {counts['raw']}, class_filtered {counts['class_filtered']}, "
                f"deduped {counts['deduped']}"
            )
        elif args.command == "validate":
            unverified_out = args.unverified_out or str(_sibling(args.out, "unverified.jsonl"))
            recall = pipeline.stage_validate(
                args.pairs, args.kg_nodes, args.kg_edges, args.out, unverified_out
            )
            print(f"recall: {recall * 100:.1f}%")
        elif args.command == "cooccur":
            hits = pipeline.stage_cooccur(args.pairs, args.index, args.strong_threshold, args.out)
            print(f"{hits} pairs with co-occurrence evidence")
        elif args.command == "report":
            stats = pipeline.stage_report(args.workdir, args.format, args.out)
            if args.format == "json":
                for key, value in stats.as_dict().items():
                    print(f"{key}: {value}")
                if stats.deduped > 0:
                    print(f"recall: {stats.kg_verified / stats.deduped * 100:.1f}%")
        elif args.command == "run":
            return _cmd_run(args)
    except PairminerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _sibling(out_path, name):
    from pathlib import Path

    return Path(out_path).parent / name


if __name__ == "__main__":
    sys.exit(main())
