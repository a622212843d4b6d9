"""Exception types shared across the toolchain.

Every error carries a short machine-readable ``code`` so the HTTP layer can
report ``{"error": ..., "code": ...}`` without a mapping table of its own.
"""

from __future__ import annotations


class OfcError(Exception):
    """Base class for all toolchain errors."""

    code = "error"
    http_status = 400


class ModelSyntaxError(OfcError):
    """Model document is not well formed."""

    code = "syntax"

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateIdError(OfcError):
    code = "duplicate_id"


class InvalidModelError(OfcError):
    """Model failed validation where a valid model is a precondition."""

    code = "invalid_model"


class TooLargeError(OfcError):
    """State count exceeds the subset-enumeration cap."""

    code = "too_large"

    def __init__(self, n_states: int, cap: int) -> None:
        self.n_states = n_states
        self.cap = cap
        super().__init__(
            f"model has {n_states} states; enumeration is capped at {cap} "
            f"(raise the cap to scan larger models, cost doubles per state)"
        )


class NotASubsetError(OfcError):
    code = "not_a_subset"


class WholeGraphError(OfcError):
    """Refused to hierarchically replace the entire state graph."""

    code = "whole_graph"


class NotFoundError(OfcError):
    code = "not_found"
    http_status = 404


class BrokenMappingError(OfcError):
    """A state is flagged hierarchical but has no nested model."""

    code = "broken_mapping"


class NotHierarchicalError(OfcError):
    code = "not_hierarchical"


class InvalidSpecError(OfcError):
    code = "invalid_spec"


class MissingSpecError(OfcError):
    """A hierarchical node has no bridge spec to simulate against."""

    code = "missing_spec"


class NotEnabledError(OfcError):
    """No transition with the given method is enabled in the current state."""

    code = "not_enabled"
    http_status = 409


class AttestationPendingError(OfcError):
    code = "attestation_pending"
    http_status = 409


class NotAwaitingError(OfcError):
    code = "not_awaiting"
    http_status = 409


class UnknownActorError(OfcError):
    code = "unknown_actor"


class SimulationFailedError(OfcError):
    """The simulation is in its terminal failed state and accepts no steps."""

    code = "simulation_failed"
    http_status = 409


class TraceError(OfcError):
    """Wraps an error raised while replaying a trace, with the step index."""

    code = "trace"

    def __init__(self, index: int, cause: Exception) -> None:
        self.index = index
        self.cause = cause
        super().__init__(f"trace step {index}: {cause}")


class AlreadyDecidedError(OfcError):
    code = "already_decided"
    http_status = 409


class AbsorbedError(OfcError):
    code = "absorbed"
    http_status = 409


class OverlapConflictError(OfcError):
    code = "overlap_conflict"
    http_status = 409


class WholeGraphConfirmationError(OfcError):
    """Accepting the whole-graph candidate needs an explicit confirmation."""

    code = "whole_graph_confirmation"
    http_status = 409


class OverlappingDecisionsError(OfcError):
    """Accepted subgraphs overlap in a way totals cannot account for."""

    code = "overlapping_decisions"


class IoError(OfcError):
    code = "io"
