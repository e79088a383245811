"""Deterministic JSON / JSONL readers and writers for stage files."""

import json
from pathlib import Path


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def write_jsonl(path, records) -> int:
    path = Path(path)
    n = 0
    with path.open("w", encoding="utf-8") as f:
        for rec in records:
            f.write(dumps(rec))
            f.write("\n")
            n += 1
    return n


def read_jsonl(path):
    with Path(path).open("r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                yield json.loads(line)


def write_json(path, obj) -> None:
    with Path(path).open("w", encoding="utf-8") as f:
        json.dump(obj, f, ensure_ascii=False, sort_keys=True, indent=2)
        f.write("\n")


def read_json(path):
    with Path(path).open("r", encoding="utf-8") as f:
        return json.load(f)
