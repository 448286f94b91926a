"""Domain exceptions shared across the package.

Invalid *arguments* (wrong shapes, out-of-range parameters) raise the builtin
ValueError; the classes below mark failures of physical or probabilistic
preconditions, which the CLI maps to their own exit code.
"""


class RacError(Exception):
    """Base class for domain errors raised by rac_lab operations."""


class InvalidStateError(RacError):
    """A quantum state failed a positivity, trace or norm check."""


class DegenerateStateError(RacError):
    """A correlation component required by a protocol is numerically zero."""


class NullEventError(RacError):
    """Conditioning on a measurement outcome of (numerically) zero probability."""
