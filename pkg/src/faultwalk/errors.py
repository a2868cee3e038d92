"""Exception hierarchy shared by the library and the CLI."""


class FaultwalkError(Exception):
    """Base class for every error raised by faultwalk."""


class InvalidSizeError(FaultwalkError, ValueError):
    """A generator or closed form was asked for a size outside its domain."""


class GraphParseError(FaultwalkError, ValueError):
    pass


class InvalidGraphError(FaultwalkError, ValueError):
    """The graph violates a structural requirement (symmetry, ring shape, ...)."""


class InvalidStrategyError(FaultwalkError, ValueError):
    pass


class ObservationError(InvalidStrategyError):
    """A strategy tried to read fault status that has not been revealed yet."""


class TraceError(FaultwalkError):
    """An exploration trace failed independent validation."""


class BudgetExceededError(FaultwalkError):
    """An exact search or enumeration would exceed its configured budget."""
