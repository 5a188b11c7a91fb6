class DomainError(Exception):
    """Base class for failures that are the input's fault rather than a bug."""

    code = "DomainError"

    def __init__(self, message: str = "", **detail):
        super().__init__(message or self.code)
        self.detail = detail


def _make(name):
    return type(name, (DomainError,), {"code": name})


DivisionByZero = _make("DivisionByZero")
InexactDivision = _make("InexactDivision")
UnassignedVariable = _make("UnassignedVariable")
ZeroAssignedToInvertedVariable = _make("ZeroAssignedToInvertedVariable")
ParseError = _make("ParseError")

WindowOutOfBand = _make("WindowOutOfBand")
NotClosing = _make("NotClosing")
NonPositiveEntry = _make("NonPositiveEntry")
ShapeMismatch = _make("ShapeMismatch")
OrderMismatch = _make("OrderMismatch")

NotADiagonal = _make("NotADiagonal")
NotACCFrieze = _make("NotACCFrieze")

FrozenDirection = _make("FrozenDirection")
LaurentViolation = _make("LaurentViolation")
LoopOrTwoCycle = _make("LoopOrTwoCycle")
BoundExceeded = _make("BoundExceeded")
UnknownCluster = _make("UnknownCluster")

IndexCollision = _make("IndexCollision")
UnmatchedPluecker = _make("UnmatchedPluecker")
UnsupportedSize = _make("UnsupportedSize")

UnknownType = _make("UnknownType")
NoSliceFound = _make("NoSliceFound")
InvalidTilting = _make("InvalidTilting")
SummandHasNoModule = _make("SummandHasNoModule")

WindowTooNarrow = _make("WindowTooNarrow")
NonIntegralEntry = _make("NonIntegralEntry")
DiagonalOutOfWindow = _make("DiagonalOutOfWindow")
