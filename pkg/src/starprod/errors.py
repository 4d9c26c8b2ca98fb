"""Error taxonomy shared by the library and the command line tool.

The CLI maps these onto exit codes: InputError -> 2, ResourceLimitError -> 3,
InternalError (including CalibrationError) -> 4.
"""


class StarprodError(Exception):
    """Base class for all errors raised by this package."""


class InputError(StarprodError):
    """Bad user input: parse errors, dimension mismatches, violated preconditions."""


class ResourceLimitError(StarprodError):
    """A configured work or size cap was exceeded before the computation finished."""


class InternalError(StarprodError):
    """An internal invariant failed; indicates a bug, not bad input."""


class CalibrationError(InternalError):
    """The propagator/vertex weight calibration produced inconsistent constants."""
