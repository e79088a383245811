"""Exception hierarchy for the pipeline."""


class PairminerError(Exception):
    """Base class for all pipeline errors."""


class MalformedTranscript(PairminerError):
    def __init__(self, filename, record_index, reason):
        self.filename = filename
        self.record_index = record_index
        super().__init__(f"{filename}: record {record_index}: {reason}")


class ConfidenceOutOfRange(MalformedTranscript):
    def __init__(self, filename, record_index, value):
        super().__init__(filename, record_index, f"confidence {value!r} outside [0, 1]")
        self.value = value


class DuplicateEpisodeId(PairminerError):
    pass


class MalformedBlocklist(PairminerError):
    pass


class StandoffError(PairminerError):
    pass


class OffsetOutOfBounds(StandoffError):
    pass


class SurfaceMismatch(StandoffError):
    pass


class UnknownChunkKey(StandoffError):
    pass


class OverlappingSpans(StandoffError):
    pass


class KGError(PairminerError):
    pass


class DanglingEdge(KGError):
    pass


class DuplicateNodeId(KGError):
    pass


class MalformedRow(PairminerError):
    pass


class InconsistentCounts(PairminerError):
    pass


class ConfigError(PairminerError):
    pass


class StageError(PairminerError):
    """Wraps a failure inside a named pipeline stage."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")
