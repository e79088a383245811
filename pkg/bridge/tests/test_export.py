import json

import pytest

from ner_bridge.export import (
    BridgeRequest,
    ModelLoadFailure,
    _clean_spans,
    export_annotations,
)


def read_records(path):
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]


def test_export_one_record_per_chunk(tiny_model_dir, small_corpus, tmp_path):
    out = tmp_path / "standoff.jsonl"
    n = export_annotations(
        BridgeRequest(
            corpus_path=str(small_corpus),
            channel="MED",
            model=f"hf:{tiny_model_dir}",
            output_path=str(out),
        )
    )
    records = read_records(out)
    assert n == len(records) == 3
    assert [(r["episode_id"], r["chunk_index"]) for r in records] == [
        ("ep1", 0),
        ("ep1", 2),
        ("ep2", 0),
    ]
    assert all(r["channel"] == "MED" for r in records)


def test_spans_offset_valid_and_non_overlapping(tiny_model_dir, small_corpus, tmp_path):
    out = tmp_path / "standoff.jsonl"
    export_annotations(
        BridgeRequest(
            corpus_path=str(small_corpus),
            channel="MED",
            model=f"hf:{tiny_model_dir}",
            output_path=str(out),
        )
    )
    texts = {
        (r["episode_id"], r["index"]): r["text"]
        for r in (json.loads(l) for l in small_corpus.read_text().splitlines())
    }
    for rec in read_records(out):
        text = texts[(rec["episode_id"], rec["chunk_index"])]
        last_end = 0
        for s in rec["spans"]:
            assert 0 <= s["start"] < s["end"] <= len(text)
            assert s["surface"] == text[s["start"] : s["end"]]
            assert s["start"] >= last_end
            last_end = s["end"]


def test_empty_corpus_gives_empty_file(tiny_model_dir, tmp_path):
    corpus = tmp_path / "scrubbed.jsonl"
    corpus.write_text("")
    out = tmp_path / "standoff.jsonl"
    n = export_annotations(
        BridgeRequest(
            corpus_path=str(corpus),
            channel="DISEASE",
            model=f"hf:{tiny_model_dir}",
            output_path=str(out),
        )
    )
    assert n == 0
    assert out.read_text() == ""


def test_chunk_with_no_entities_keeps_record(tiny_model_dir, small_corpus, tmp_path):
    # A label filter nothing matches forces empty span lists while the
    # records themselves must remain.
    out = tmp_path / "standoff.jsonl"
    n = export_annotations(
        BridgeRequest(
            corpus_path=str(small_corpus),
            channel="MED",
            model=f"hf:{tiny_model_dir}",
            output_path=str(out),
            labels=("NO_SUCH_GROUP",),
        )
    )
    records = read_records(out)
    assert n == len(records) == 3
    assert all(r["spans"] == [] for r in records)


def test_deterministic_output(tiny_model_dir, small_corpus, tmp_path):
    outs = []
    for name in ("a.jsonl", "b.jsonl"):
        out = tmp_path / name
        export_annotations(
            BridgeRequest(
                corpus_path=str(small_corpus),
                channel="MED",
                model=f"hf:{tiny_model_dir}",
                output_path=str(out),
            )
        )
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_model_load_failure(small_corpus, tmp_path):
    with pytest.raises(ModelLoadFailure):
        export_annotations(
            BridgeRequest(
                corpus_path=str(small_corpus),
                channel="MED",
                model="hf:/nonexistent/checkpoint",
                output_path=str(tmp_path / "out.jsonl"),
            )
        )


def test_unknown_backend_spec(small_corpus, tmp_path):
    with pytest.raises(ModelLoadFailure):
        export_annotations(
            BridgeRequest(
                corpus_path=str(small_corpus),
                channel="MED",
                model="magic:whatever",
                output_path=str(tmp_path / "out.jsonl"),
            )
        )


def test_bad_channel_rejected(small_corpus, tmp_path):
    with pytest.raises(ValueError):
        export_annotations(
            BridgeRequest(
                corpus_path=str(small_corpus),
                channel="BOTH",
                model="hf:x",
                output_path=str(tmp_path / "out.jsonl"),
            )
        )


class TestCleanSpans:
    def test_strips_whitespace_edges(self):
        text = "aspirin helps"
        assert _clean_spans(text, [(0, 8)]) == [
            {"start": 0, "end": 7, "surface": "aspirin"}
        ]

    def test_clips_to_bounds(self):
        text = "ab"
        assert _clean_spans(text, [(-3, 99)]) == [{"start": 0, "end": 2, "surface": "ab"}]

    def test_drops_empty_and_overlapping(self):
        text = "aspirin helps"
        spans = _clean_spans(text, [(3, 3), (0, 7), (4, 10)])
        assert spans == [{"start": 0, "end": 7, "surface": "aspirin"}]
