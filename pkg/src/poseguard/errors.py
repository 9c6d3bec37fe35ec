"""Exception types raised by the engine."""


class PoseGuardError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PoseGuardError):
    """Malformed input syntax. Carries the byte offset of the failure."""

    def __init__(self, message: str, byte_offset: int | None = None):
        super().__init__(message)
        self.byte_offset = byte_offset


class SchemaError(PoseGuardError):
    """Structurally valid input that violates the expected schema."""


class ValidationError(PoseGuardError):
    """Values that violate a domain invariant (range, finiteness, shape)."""


class SequencingError(PoseGuardError):
    """Frames arrived out of order for a stream."""


class MergeConflictError(PoseGuardError):
    """Two track ids to be merged co-occur in the same frame."""

    def __init__(self, frame_index: int, from_id: int, into_id: int):
        super().__init__(
            f"cannot merge track {from_id} into {into_id}: "
            f"both present in frame {frame_index}"
        )
        self.frame_index = frame_index


class SinkError(PoseGuardError):
    """Event delivery failed after retries."""


class DegeneratePoseError(PoseGuardError):
    """Pose with no usable spatial extent (zero torso and zero bbox)."""
