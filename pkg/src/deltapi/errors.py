"""Exception hierarchy.

Every error carries a short machine-readable ``code`` and the name of the
module that raised it, which the command-line front end turns into its JSON
error object.
"""


class DeltaPiError(Exception):
    code = "error"
    module = "deltapi"

    def __init__(self, message="", *, module=None):
        super().__init__(message)
        if module is not None:
            self.module = module

    def to_dict(self):
        return {"code": self.code, "module": self.module, "message": str(self)}


class NonDivisible(DeltaPiError, ArithmeticError):
    """An exact division by the uniformizer was requested on a unit."""

    code = "non_divisible"
    module = "padic"


class DivisionByZero(DeltaPiError, ZeroDivisionError):
    code = "division_by_zero"
    module = "padic"


class PrecisionExhausted(DeltaPiError):
    code = "precision_exhausted"


class OrderOverflow(DeltaPiError):
    code = "order_overflow"
    module = "jets"


class NotAUnit(DeltaPiError, ValueError):
    code = "not_a_unit"


class OutOfDomain(DeltaPiError, ValueError):
    code = "out_of_domain"
    module = "formal_group"


class BadReduction(DeltaPiError, ValueError):
    code = "bad_reduction"


class DegenerateWeight(DeltaPiError, ValueError):
    code = "degenerate_weight"
    module = "characters"


class DenominatorNotUnit(DeltaPiError, ArithmeticError):
    code = "denominator_not_unit"
    module = "qexp"


class InsufficientCoefficients(DeltaPiError, ValueError):
    code = "insufficient_coefficients"
    module = "qexp"


class NotEtale(DeltaPiError, ValueError):
    """Newton lifting was asked for at a point where f' is not a unit."""

    code = "not_etale"
    module = "qexp"


class Inconclusive(DeltaPiError):
    code = "inconclusive"
    module = "sharp"
