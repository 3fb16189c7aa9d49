"""Exception hierarchy.

Everything raised on bad input derives from :class:`InvalidInput` so the CLI
can map it to exit code 2; bounded searches that run out of budget raise
:class:`CapExhausted` (exit code 4).
"""


class HilbGenusError(Exception):
    pass


class InvalidInput(HilbGenusError, ValueError):
    pass


class NotSquarefree(InvalidInput):
    def __init__(self, a: int):
        super().__init__(f"{a} is not squarefree")
        self.a = a


class InvalidP(InvalidInput):
    pass


class InvalidA(InvalidInput):
    pass


class MismatchedField(InvalidInput):
    pass


class NotIntegral(InvalidInput):
    pass


class NotOdd(InvalidInput):
    pass


class NotSplit(InvalidInput):
    pass


class NotRepresentable(InvalidInput):
    pass


class MalformedStandardForm(InvalidInput):
    pass


class ZeroElement(InvalidInput):
    pass


class CapExhausted(HilbGenusError):
    pass


class SearchExhausted(CapExhausted):
    """A bounded search found nothing although a solution is guaranteed."""


class NormalizationFailed(HilbGenusError):
    pass


class PrimitivityViolated(HilbGenusError):
    pass
