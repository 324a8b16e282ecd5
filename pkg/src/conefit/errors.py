"""Exception hierarchy shared across the toolkit.

Every error carries an ``exit_code`` so the command line front end can map
failures to distinct process exit statuses (0 means success, 2 is reserved
for usage problems such as missing input files).
"""


class ConefitError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class UnknownIdError(ConefitError):
    """A labeled item id has no matching embedding (or vice versa)."""

    exit_code = 3


class EmptyConstraintSetError(ConefitError):
    """The requested constraint mode produced zero pairs."""

    exit_code = 4


class SingleLevelError(ConefitError):
    """Fewer than two distinct difficulty levels are present."""

    exit_code = 5


class DegenerateDirectionError(ConefitError):
    """Constraint difference vectors cancel; no direction exists."""

    exit_code = 6


class DimensionMismatchError(ConefitError):
    """Vector dimensions disagree."""

    exit_code = 7


class EmptyLevelError(ConefitError):
    """A requested difficulty level has no items."""

    exit_code = 8


class NoReferenceItemsError(ConefitError):
    """An anchor item has no items in strictly lower or higher levels."""

    exit_code = 9


class LengthMismatchError(ConefitError):
    """Paired sequences differ in length or are too short."""

    exit_code = 10


class ConstantInputError(ConefitError):
    """A rank correlation input has zero variance."""

    exit_code = 11


class MissingPairError(ConefitError):
    """A compatibility report lacks the requested level pair."""

    exit_code = 12


class SingleClassError(ConefitError):
    """Binary training data contains only one class."""

    exit_code = 13


class ParseError(ConefitError):
    """An input file is malformed."""

    exit_code = 14


class ZeroVectorError(ConefitError):
    """A vector with (near) zero norm cannot be normalized."""

    exit_code = 15


class DuplicateIdError(ConefitError):
    """An item id occurs more than once."""

    exit_code = 16


class UnknownLevelError(ConefitError):
    """A label names a level absent from the level order."""

    exit_code = 17


class EmptyFileError(ConefitError):
    """An input file contains no usable rows."""

    exit_code = 18


class InvalidSpecError(ConefitError):
    """A synthetic data specification violates its invariants."""

    exit_code = 19


class NotUnitNormError(ConefitError):
    """A vector fails the unit-norm assertion policy."""

    exit_code = 20
