"""Exception hierarchy shared by all modules."""


class MacwtError(Exception):
    """Base class for library errors."""


class DomainError(MacwtError, ValueError):
    """An input value is outside its legal domain."""


class AxisError(MacwtError, ValueError):
    """Unknown, duplicate, or shape-mismatched table axes."""


class MarkovViolationError(MacwtError, ValueError):
    """A required degradedness Markov chain does not hold in the given table."""


class InfeasibleRateError(MacwtError, ValueError):
    """A requested rate lies outside the range where the quantity is defined."""


class ResourceCapError(MacwtError, RuntimeError):
    """A table or codebook would exceed the configured size cap."""


class InternalConsistencyError(MacwtError, RuntimeError):
    """A numeric result is inconsistent beyond float noise; indicates a bug."""
