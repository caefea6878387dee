"""Exception types shared across the package.

Three failure classes are distinguished so callers (and the command line
front end) can map them to distinct exit paths: bad static configuration,
mismatched array shapes, and violated numeric preconditions.
"""

from __future__ import annotations


class RingbathError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(RingbathError):
    """A configuration value is missing, unknown, or out of range."""


class DimensionError(RingbathError):
    """Array lengths or grids do not match the assembly they describe."""


class ParameterError(RingbathError):
    """A numeric argument violates an operation's stated precondition."""
