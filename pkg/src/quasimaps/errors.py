"""Exception hierarchy.

Every domain failure derives from :class:`QuasimapError` and carries a short
machine-readable ``code`` used by the command-line front end.
"""


class QuasimapError(Exception):
    code = "error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class PresentationError(QuasimapError, ValueError):
    code = "invalid-presentation"


class InsertionError(PresentationError):
    code = "invalid-insertion"


class DegenerateStabilityError(PresentationError):
    code = "degenerate-stability"


class InfiniteLiftsError(QuasimapError):
    code = "infinite-lifts"


class EnumerationBoundError(QuasimapError):
    code = "bound-exceeded"


class NotAUnitError(QuasimapError, ZeroDivisionError):
    code = "not-a-unit"


class PoleError(QuasimapError, ZeroDivisionError):
    code = "pole"


class DegenerateArrangementError(QuasimapError):
    code = "degenerate-arrangement"


class ContractViolation(QuasimapError, ValueError):
    code = "contract-violation"


class ConsistencyError(QuasimapError):
    """The assembled equivariant value failed to be a polynomial in z."""

    code = "internal-consistency"

    def __init__(self, message, breakdown=None):
        super().__init__(message)
        self.breakdown = breakdown or []


class DegenerateQError(QuasimapError):
    code = "degenerate-q"


class UnsupportedSystemError(QuasimapError):
    code = "unsupported-system"


class PolynomialSyntaxError(QuasimapError, ValueError):
    code = "syntax"
