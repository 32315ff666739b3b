"""Exception hierarchy shared by every module of the package."""


class QHError(Exception):
    """Base class. ``kind`` is the invariant name reported by the CLI."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class ParseError(QHError, ValueError):
    pass


class ZeroElement(QHError, ValueError):
    pass


class MixedDegrees(QHError, ValueError):
    pass


class NonUnimodularPairing(QHError, ValueError):
    pass


class MonotonicityViolation(QHError, ValueError):
    pass


class AsphericalViolation(QHError, ValueError):
    pass


class ModelMismatch(QHError, ValueError):
    pass


class UnknownClass(QHError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown class"


class IncompleteTable(QHError, RuntimeError):
    pass


class NotAUnit(QHError, ArithmeticError):
    pass


class NonHomogeneous(QHError, ValueError):
    pass


class MonotonicityMismatch(QHError, ValueError):
    pass


class DegreeContractViolation(QHError, ValueError):
    pass


class ActionDataError(QHError, ValueError):
    """Circle-action data violating a structural invariant."""


class AsphericalRequired(QHError, ValueError):
    pass
