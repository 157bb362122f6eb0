"""Exception types raised by guards and validators."""


class BatchGreedyError(Exception):
    """Base class for all package-specific errors."""


class GroundSetMismatch(BatchGreedyError, ValueError):
    """A subset was used against an instance with a different ground size."""


class ExhaustiveLimitExceeded(BatchGreedyError, RuntimeError):
    """An exhaustive check was requested beyond its configured limit."""


class CandidateCapExceeded(BatchGreedyError, RuntimeError):
    """An enumeration would exceed the configured candidate cap."""


class NoFeasibleBatch(BatchGreedyError, RuntimeError):
    """No independent batch of the required size exists at some stage.

    Impossible for axiom-verified matroids with equicardinal bases; raised
    defensively for ill-formed explicit set systems.
    """


class RankUndefined(BatchGreedyError, ValueError):
    """Greedy rank computation is invalid because augmentation fails."""


class InstanceFormatError(BatchGreedyError, ValueError):
    """An instance file violates the schema or a parameter domain."""
