"""Token-classification backend on top of the transformers pipeline.

Any token-classification checkpoint loadable by transformers works; the
model is configuration, not a fixed choice. Inference runs one chunk at
a time so chunks are never mixed.
"""

from __future__ import annotations

from .export import ModelLoadFailure


class HFTagger:
    def __init__(self, model_path: str, labels=None):
        try:
            from transformers import pipeline

            self._pipe = pipeline(
                "token-classification",
                model=model_path,
                aggregation_strategy="simple",
                device=-1,
            )
        except Exception as exc:
            raise ModelLoadFailure(f"cannot load model {model_path!r}: {exc}") from exc
        self._labels = set(labels) if labels else None

    def tag(self, text: str) -> list[tuple[int, int]]:
        if not text:
            return []
        spans = []
        for ent in self._pipe(text):
            if self._labels is not None and ent.get("entity_group") not in self._labels:
                continue
            spans.append((int(ent["start"]), int(ent["end"])))
        return spans
