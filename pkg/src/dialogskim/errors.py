"""Typed errors shared across the pipeline, providers, and service."""


class DialogSkimError(Exception):
    """Base class; ``code`` is the stable machine-readable identifier."""

    code = "ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class InvalidConfigError(DialogSkimError):
    code = "INVALID_CONFIG"


class MalformedTranscriptError(DialogSkimError):
    code = "MALFORMED_TRANSCRIPT"

    def __init__(self, violations, message: str = ""):
        self.violations = list(violations)
        super().__init__(message or "; ".join(self.violations))


class ProviderUnavailableError(DialogSkimError):
    code = "PROVIDER_UNAVAILABLE"


class MalformedResponseError(DialogSkimError):
    code = "MALFORMED_RESPONSE"


class EmptyOutputError(DialogSkimError):
    code = "EMPTY_OUTPUT"


class DimensionMismatchError(DialogSkimError):
    code = "DIMENSION_MISMATCH"


class AllStemmedError(DialogSkimError):
    code = "ALL_STEMMED"


class EmptySegmentationError(DialogSkimError):
    """Fatal: the segmenter produced zero chunks for a transcript."""

    code = "EMPTY_SEGMENTATION"


class RecordingMismatchError(DialogSkimError):
    code = "RECORDING_MISMATCH"


class UnreadableInputError(DialogSkimError):
    code = "UNREADABLE_INPUT"


class NotFoundError(DialogSkimError):
    code = "NOT_FOUND"


class NotReadyError(DialogSkimError):
    code = "NOT_READY"

    def __init__(self, message: str = "", job_state: str = ""):
        super().__init__(message)
        self.job_state = job_state


class RangeOutOfBoundsError(DialogSkimError):
    code = "RANGE_OUT_OF_BOUNDS"
