"""pairminer: drug-disease candidate pair extraction and validation
from noisy transcript text."""

from .models import (
    CandidatePair,
    Chunk,
    CooccurrenceResult,
    DrugDiseasePair,
    EntitySpan,
    Episode,
    PipelineStats,
    TypedTerm,
    ValidationReport,
)
from .normalize import normalize_name

__version__ = "0.1.0"

__all__ = [
    "CandidatePair",
    "Chunk",
    "CooccurrenceResult",
    "DrugDiseasePair",
    "EntitySpan",
    "Episode",
    "PipelineStats",
    "TypedTerm",
    "ValidationReport",
    "normalize_name",
    "__version__",
]
