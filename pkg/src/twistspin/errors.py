"""Exception hierarchy.  Every domain error derives from ``TwistSpinError``."""


class TwistSpinError(ValueError):
    pass


class InvalidIndex(TwistSpinError):
    """A pair (m, n) outside the branched-twist-spin index domain."""


class NonPositiveN(InvalidIndex):
    pass


class NotCoprime(InvalidIndex):
    pass


class ZeroMNotSpun(InvalidIndex):
    pass


class SpunKnotHasNoPartner(TwistSpinError):
    pass


class InvalidState(TwistSpinError):
    pass


class NotUnimodular(TwistSpinError):
    pass


class DegreeTooLarge(TwistSpinError):
    pass


class MissingPeripheral(TwistSpinError):
    pass


class WrongLabel(TwistSpinError):
    pass


class DisconnectedComplex(TwistSpinError):
    pass


class ParseError(TwistSpinError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
