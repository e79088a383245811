import json
from pathlib import Path

import pytest

PIPELINE_FIXTURE = Path(__file__).parents[2] / "tests" / "data" / "fixture"

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "omeprazole", "can", "help", "treat", "heartburn", "yes", "needs",
    "the", "said", "aspirin", "arthritis", "and", "celebrex", "for",
    "fish", "oil", "magnesium", "may", "ease", "alzheimer", "'", "s",
    "disease", "or", "asthma", "took", "daily",
]

LABELS = ["O", "B-DRUG", "I-DRUG", "B-DISEASE", "I-DISEASE"]


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory) -> Path:
    """A small randomly initialized (fixed seed) token-classification
    checkpoint saved to disk, loadable fully offline."""
    import torch
    from transformers import BertConfig, BertForTokenClassification, BertTokenizerFast

    d = tmp_path_factory.mktemp("tiny_tagger")
    (d / "vocab.txt").write_text("\n".join(VOCAB) + "\n")
    tokenizer = BertTokenizerFast(vocab_file=str(d / "vocab.txt"), do_lower_case=True)

    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=32,
        num_hidden_layers=1,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=128,
        num_labels=len(LABELS),
        id2label=dict(enumerate(LABELS)),
        label2id={l: i for i, l in enumerate(LABELS)},
    )
    torch.manual_seed(0)
    model = BertForTokenClassification(config)
    model.save_pretrained(d)
    tokenizer.save_pretrained(d)
    return d


@pytest.fixture
def small_corpus(tmp_path) -> Path:
    p = tmp_path / "scrubbed.jsonl"
    records = [
        {"episode_id": "ep1", "index": 0, "text": "aspirin helps heartburn", "confidence": 0.99},
        {"episode_id": "ep1", "index": 2, "text": "fish oil daily", "confidence": 0.97},
        {"episode_id": "ep2", "index": 0, "text": "magnesium may ease asthma", "confidence": 0.98},
    ]
    p.write_text("".join(json.dumps(r) + "\n" for r in records))
    return p


@pytest.fixture
def pipeline_fixture_dir() -> Path:
    return PIPELINE_FIXTURE
