"""Exception hierarchy shared by all torfib modules."""


class TorfibError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(TorfibError):
    """Vector or matrix shapes are incompatible for the requested operation."""


class BlockMismatchError(TorfibError):
    """Block structures of two configurations do not line up."""


class HomogeneityError(TorfibError):
    """No rational grading certificate exists for the given pair."""

    def __init__(self, side: str, block: int):
        self.side = side
        self.block = block
        super().__init__(
            f"no grading certificate for the {side}-side configuration; "
            f"first offending block: {block + 1}"
        )


class NotInKernelError(TorfibError):
    """A vector expected to lie in the integer kernel does not."""


class NonPointedError(TorfibError):
    """The column cone is not pointed, so bounded search is impossible."""


class FiberBoundExhaustedError(TorfibError):
    """Monoid element generation hit its cap before closure; result inconclusive."""


class MatrixParseError(TorfibError):
    """A matrix file could not be parsed; carries the offending position."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
