"""exlab: a verifiable workbench for extremal-combinatorics constructions.

Every constructive routine is paired with an independent checker or a
brute-force oracle; nothing is emitted unverified.
"""

from ._kernels import backend_name
from .errors import CapacityError, ExlabError, InputError, ProtocolError

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ExlabError",
    "InputError",
    "ProtocolError",
    "backend_name",
    "__version__",
]
