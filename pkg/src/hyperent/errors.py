"""Exception types shared across the package.

The CLI maps these onto its exit-code taxonomy (schema 2, empty state 3,
infeasible design 4, dimension mismatch 5).
"""


class HyperentError(ValueError):
    """Base class for all package-specific errors."""


class BasisMismatchError(HyperentError):
    """Two values built on different mode bases (or arities) were combined."""


class ZeroStateError(HyperentError):
    """An operation produced or received a zero state vector."""


class ZeroPostSelectionError(ZeroStateError):
    """Post-selection killed every interferometer branch.

    Carries per-branch diagnostics naming the projector that zeroed each arm.
    """

    def __init__(self, message: str, killed: dict[str, str] | None = None):
        super().__init__(message)
        self.killed = dict(killed or {})


class AssumptionError(HyperentError):
    """The coherence conditions required for the post-selected form are not asserted."""


class SchemaError(HyperentError):
    """A setup/target/report document failed schema validation."""


class InfeasibleTargetError(HyperentError):
    """The requested target state cannot be produced by any three-arm assignment."""


class DimensionMismatchError(HyperentError):
    """A state's local dimension does not match the requested analysis dimension."""


class EncodingError(HyperentError):
    """A state carries amplitude outside the domain of the requested encoding."""
