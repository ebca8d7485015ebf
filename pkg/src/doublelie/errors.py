"""Exception hierarchy shared by the algebraic and group layers."""


class DoubleLieError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(DoubleLieError, ValueError):
    pass


class AntisymmetryViolation(DoubleLieError, ValueError):
    def __init__(self, i, j, k, msg=None):
        self.index = (i, j, k)
        super().__init__(msg or f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")


class NoSolution(DoubleLieError):
    """The cobracket is not a coboundary."""


class NotProportional(DoubleLieError):
    """[r, r] is not a multiple of the reference trivector."""


class ConstraintViolated(DoubleLieError, ValueError):
    def __init__(self, which: str):
        self.which = which
        super().__init__(which)


class NotBType(DoubleLieError, ValueError):
    pass


class EigenstructureViolated(DoubleLieError, ValueError):
    pass


class NotClosed(DoubleLieError):
    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"bracket escapes the span: {witness}")


class DegeneratePairing(DoubleLieError):
    pass


class BasisMismatch(DoubleLieError, ValueError):
    pass


class BadParams(DoubleLieError, ValueError):
    pass


class NotInGroup(DoubleLieError, ValueError):
    pass


class NumericalBreakdown(DoubleLieError, ArithmeticError):
    pass


class Obstructed(DoubleLieError):
    """g is not in the product set; carries the offending k[n, n] entry."""

    def __init__(self, k_value: float):
        self.k_value = float(k_value)
        super().__init__(f"k[n+1,n+1] = {self.k_value:.3e} is not positive")


class OnBoundary(DoubleLieError):
    def __init__(self, k_value: float):
        self.k_value = float(k_value)
        super().__init__(f"|k[n+1,n+1]| = {abs(self.k_value):.3e} is within tolerance of 0")
