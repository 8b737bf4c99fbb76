"""Domain errors.

Every error the library raises on bad input or an unsatisfiable request
subclasses DomainError, so callers (and the CLI) can distinguish domain
failures from programming bugs. ``error.name`` is the stable identifier
used in CLI output.
"""


class DomainError(Exception):
    @property
    def name(self) -> str:
        return type(self).__name__


class CycleDetected(DomainError):
    pass


class NegativeWeight(DomainError):
    pass


class MissingSourceOrTarget(DomainError):
    pass


class DuplicateEdge(DomainError):
    pass


class UnknownNode(DomainError):
    pass


class InvalidGraph(DomainError):
    """Raised by validate(); bundles every violation found in one pass."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(f"{v.name}: {v}" for v in self.violations))

    def has(self, kind) -> bool:
        return any(isinstance(v, kind) for v in self.violations)


class PathLimitExceeded(DomainError):
    pass


class BiasOutOfRange(DomainError):
    pass


class ZeroOptimalCost(DomainError):
    pass


class NotFeasible(DomainError):
    pass


class SearchBudgetExceeded(DomainError):
    pass


class ZeroCollectedReward(DomainError):
    pass


class PreconditionViolated(DomainError):
    pass


class ParameterConstraintViolated(DomainError):
    pass
