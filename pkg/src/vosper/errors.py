"""Exception hierarchy shared by the library and the command line."""


class VosperError(Exception):
    pass


class ParseError(VosperError, ValueError):
    """Malformed textual input (group specs, subsets, edge lists)."""


class PreconditionError(VosperError, ValueError):
    """Input is well formed but outside an operation's domain."""


class BudgetExceeded(PreconditionError):
    """Input is larger than an oracle budget allows."""
