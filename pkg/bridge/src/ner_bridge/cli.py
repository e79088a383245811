"""Command-line entry point for standoff export."""

from __future__ import annotations

import argparse
import sys

from .export import BridgeRequest, ModelLoadFailure, NonconformingOutput, export_annotations


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ner-bridge",
        description="Run a pretrained sequence tagger over scrubbed chunks and export standoff annotations.",
    )
    parser.add_argument("--corpus", required=True, help="scrubbed.jsonl input")
    parser.add_argument("--channel", required=True, choices=["MED", "DISEASE"])
    parser.add_argument("--model", required=True, help="model spec, e.g. hf:/path/to/checkpoint")
    parser.add_argument("--out", required=True, help="standoff JSONL output")
    parser.add_argument(
        "--labels",
        default=None,
        help="comma-separated entity groups to keep (default: all)",
    )
    args = parser.parse_args(argv)

    labels = tuple(l.strip() for l in args.labels.split(",")) if args.labels else None
    request = BridgeRequest(
        corpus_path=args.corpus,
        channel=args.channel,
        model=args.model,
        output_path=args.out,
        labels=labels,
    )
    try:
        n = export_annotations(request)
    except (ModelLoadFailure, NonconformingOutput, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {n} standoff records")
    return 0


if __name__ == "__main__":
    sys.exit(main())
