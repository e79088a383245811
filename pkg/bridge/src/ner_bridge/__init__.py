"""ner_bridge: export standoff entity annotations from a pretrained
sequence tagger, for consumption by the pair-mining pipeline."""

from .export import BridgeRequest, ModelLoadFailure, export_annotations

__version__ = "0.1.0"

__all__ = ["BridgeRequest", "ModelLoadFailure", "export_annotations", "__version__"]
