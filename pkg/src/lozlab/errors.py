"""Exception types shared across the package.

Every error raised on bad user input derives from LozlabError so the
command line tool can map them to a single exit code.  Internal
consistency failures use plain AssertionError and are bugs.
"""


class LozlabError(Exception):
    """Base class for all user-facing errors."""


class ParameterError(LozlabError):
    """Region parameters are malformed or out of range."""


class HoleCollisionError(ParameterError):
    """A boundary hole overlaps the central core.

    Carries the offending hole indices in .ks.
    """

    def __init__(self, message, ks):
        super().__init__(message)
        self.ks = list(ks)


class SymmetryAbsentError(LozlabError):
    """The requested symmetry does not map the region to itself."""


class BudgetError(LozlabError):
    """A brute-force routine refused an input above its size cap."""


class ContractError(LozlabError):
    """A graph reduction met a shape it cannot normalize."""


class FormulaRangeError(LozlabError):
    """A closed-form evaluation was requested outside its domain."""


class FormatError(LozlabError):
    """Serialized input violates the file format.

    .offset, when not None, is the byte offset of the first bad field.
    """

    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset
