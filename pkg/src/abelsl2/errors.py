"""Exception hierarchy shared by every module."""


class AbelSl2Error(Exception):
    """Base class for all library errors."""


class ContextMismatch(AbelSl2Error):
    pass


class VarietyMismatch(ContextMismatch):
    pass


class MissingImage(AbelSl2Error):
    pass


class NonLinearImage(AbelSl2Error):
    pass


class OddDegreeTerm(AbelSl2Error):
    pass


class ConstantTerm(AbelSl2Error):
    pass


class NotDiagonalizable(AbelSl2Error):
    pass


class DegeneratePairing(AbelSl2Error):
    pass


class NotSingleFactor(AbelSl2Error):
    pass


class NotTwoFactors(AbelSl2Error):
    pass


class NotInvertible(AbelSl2Error):
    pass


class NotIsogeny(AbelSl2Error):
    pass


class PolarizationMismatch(AbelSl2Error):
    pass


class BracketViolation(AbelSl2Error):
    pass


class NotDecomposable(AbelSl2Error):
    """Raised when a verified triple fails to split; indicates a bug."""


class NegativeLambda(AbelSl2Error):
    pass


class UnsupportedShape(AbelSl2Error):
    pass


class NotHomogeneous(AbelSl2Error):
    pass


class InvalidBidegree(AbelSl2Error):
    pass


class DimensionGuard(AbelSl2Error):
    """Requested dimension exceeds what an operation supports."""

    def __init__(self, what, g, limit):
        super().__init__(f"{what} supports g <= {limit}, got g = {g}")
        self.what = what
        self.g = g
        self.limit = limit
