"""Exception types raised by the engine."""


class DomainError(ValueError):
    """An argument lies outside the domain of a formula."""


class DegenerateInputError(DomainError):
    """The input is valid but the requested quantity is undefined for it."""


class NoDecoherenceTime(DomainError):
    """No finite decoherence time exists (zero temperature or zero separation)."""


class ResolutionError(ValueError):
    """A sampled profile is too coarse to resolve its interference fringes."""


class OracleFailure(RuntimeError):
    """A numerical cross-check did not converge or did not pass."""
