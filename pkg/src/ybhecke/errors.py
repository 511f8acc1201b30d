"""Exception hierarchy.

``InputError`` subclasses describe bad user input (the CLI maps them to exit
code 2); ``VerificationError`` signals a failed internal consistency check.
"""


class YBHeckeError(Exception):
    pass


class InputError(YBHeckeError, ValueError):
    pass


class VerificationError(YBHeckeError):
    pass


class RowNotBijective(InputError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"row {row} of the star table is not a permutation")


class CycleLawViolation(InputError):
    def __init__(self, i: int, j: int, k: int):
        self.triple = (i, j, k)
        super().__init__(
            f"cycle-set law fails at (i, j, k) = ({i}, {j}, {k}): "
            f"(i*j)*(i*k) != (j*i)*(j*k)"
        )


class InducedTableAmbiguous(VerificationError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"retraction table depends on representatives at ({i}, {j})")


class CapExceeded(VerificationError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"no Dehornoy class found below the cap {cap}")


class DegreesNotOrbitConstant(InputError):
    pass


class LaurentSyntaxError(InputError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos} in {text!r}")


class UnknownParameter(InputError):
    def __init__(self, name: str, params):
        self.name = name
        super().__init__(f"unknown parameter {name!r} (declared: {', '.join(params) or 'none'})")


class ParameterMismatch(InputError):
    pass


class NotAUnit(InputError):
    pass


class NotExactDivision(YBHeckeError, ArithmeticError):
    pass


class ZeroAssignedToInvertedParameter(InputError, ZeroDivisionError):
    pass


class LeadingCoefficientNotUnit(NotAUnit):
    pass


class ConstantCoefficientNotUnit(NotAUnit):
    pass


class DegreeMismatch(InputError):
    pass


class PolynomialNotSplit(InputError):
    pass


class InvolutionRootMismatch(InputError):
    pass


class NotGroupAlgebraPoint(InputError):
    pass


class OrderTooLarge(InputError):
    def __init__(self, order: int, limit: int):
        self.order = order
        self.limit = limit
        super().__init__(f"order {order} exceeds the limit {limit}")


class RelationFailure(VerificationError):
    pass


class KOutOfRange(InputError):
    pass
