"""Exception taxonomy shared by all workbench modules.

Three failure classes matter operationally and map onto CLI exit codes:
bad input (exit 1), a resource/capacity wall (exit 1, but a different
message shape), and a *verified* mathematical failure of a bound or
checker (exit 2 -- that one is a finding, not a bug).
"""


class ExlabError(Exception):
    """Base class for all workbench errors."""


class InputError(ExlabError, ValueError):
    """Malformed or out-of-contract input (bad vertex id, non-prime order, ...)."""


class CapacityError(ExlabError, RuntimeError):
    """An exhaustive search or construction exceeded its hard size/time cap.

    Deliberately distinct from an *Unknown* result: Unknown means the answer
    lies beyond a configured cap, CapacityError means we refused to start or
    had to abort the work itself.
    """


class ProtocolError(ExlabError, RuntimeError):
    """A game participant violated the move protocol (e.g. color out of range)."""
