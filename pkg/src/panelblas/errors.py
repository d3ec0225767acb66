"""Exception types shared across the library."""


class PanelBlasError(Exception):
    pass


class DimensionError(PanelBlasError, ValueError):
    """Raised when a window or size argument leaves the matrix bounds."""


class MemoryLayoutError(PanelBlasError, ValueError):
    """Raised when externally supplied storage is undersized or misaligned."""


class FactorizationError(PanelBlasError, ArithmeticError):
    """A factorization hit an unusable pivot.

    The ``index`` attribute is the 0-based diagonal position of the first
    failing pivot, relative to the factored window.
    """

    def __init__(self, msg, index):
        super().__init__(msg)
        self.index = index


class NotPositiveDefiniteError(FactorizationError):
    pass


class SingularMatrixError(FactorizationError):
    pass
