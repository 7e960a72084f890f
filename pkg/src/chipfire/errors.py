"""Exception hierarchy.

Exit-code classes used by the CLI: ``InvalidInput`` -> 1, ``LimitError`` -> 2,
``InternalError`` -> 3.
"""


class ChipfireError(Exception):
    pass


class InvalidInput(ChipfireError):
    pass


class LimitError(ChipfireError):
    pass


class InternalError(ChipfireError):
    pass


class BadName(InvalidInput):
    pass


class LoopEdge(InvalidInput):
    pass


class NegativeMultiplicity(InvalidInput):
    pass


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotStronglyConnected(InvalidInput):
    pass


class IllegalFire(InvalidInput):
    pass


class NotPrimitive(InvalidInput):
    pass


class CapExceeded(LimitError):
    pass


class LimitExceeded(LimitError):
    pass


class KernelDegenerate(InternalError):
    pass


class VerificationFailed(InternalError):
    pass
