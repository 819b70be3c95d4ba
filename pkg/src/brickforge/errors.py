"""Exception hierarchy shared by all brickforge modules."""


class BrickforgeError(Exception):
    """Base class for all library errors."""


class NotCrystallographic(BrickforgeError):
    pass


class NotFinite(BrickforgeError):
    pass


class NotARoot(BrickforgeError):
    pass


class IndexOutOfRange(BrickforgeError, IndexError):
    pass


class NotComparable(BrickforgeError):
    """Raised when an operation needs ``x <= y`` in Bruhat order and it fails."""


class EmptyComplex(BrickforgeError):
    """The subword complex has no facets (target not below the Demazure product)."""


class NotFlippable(BrickforgeError):
    pass


class NotInFacet(BrickforgeError):
    pass


class NoCover(BrickforgeError):
    pass


class DimensionMismatch(BrickforgeError, ValueError):
    pass


class DimensionTooLarge(BrickforgeError):
    pass


class FunctionalNotNonnegative(BrickforgeError):
    """The functional is negative on some atom label of [w, Dem(Q)]."""


class PreconditionFailed(BrickforgeError):
    pass
