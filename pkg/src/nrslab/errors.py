"""Exception types raised by nrslab."""


class NrsLabError(Exception):
    """Base class for all nrslab errors."""


class ZeroRoot(NrsLabError, ValueError):
    pass


class ZeroLeading(NrsLabError, ValueError):
    pass


class ZeroCoefficient(NrsLabError, ValueError):
    """A coefficient a_k required to be nonzero vanished."""

    def __init__(self, index: int):
        super().__init__(f"coefficient a_{index} must be nonzero")
        self.index = index


class IndexOutOfRange(NrsLabError, IndexError):
    pass


class SizeMismatch(NrsLabError, ValueError):
    pass


class NotSurjective(NrsLabError, ValueError):
    pass


class NotInB(NrsLabError, ValueError):
    pass


class SumMismatch(NrsLabError, ValueError):
    pass


class SingularJacobian(NrsLabError, ArithmeticError):
    pass


class SingularStep(NrsLabError, ArithmeticError):
    pass


class AmbiguousMatch(NrsLabError, LookupError):
    def __init__(self, candidates):
        super().__init__(f"limit matches several pairwise sums: {candidates}")
        self.candidates = candidates


class UnknownSuite(NrsLabError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class ConfigInvalid(NrsLabError, ValueError):
    pass


class ZeroA1(ZeroCoefficient):
    def __init__(self):
        super().__init__(1)


class ZeroA2(ZeroCoefficient):
    def __init__(self):
        super().__init__(2)


class ZeroAd(ZeroCoefficient):
    pass


def zero_coefficient(index: int, d: int | None = None) -> ZeroCoefficient:
    """The most specific error for a vanishing a_index."""
    if index == 1:
        return ZeroA1()
    if index == 2:
        return ZeroA2()
    if d is not None and index == d:
        return ZeroAd(index)
    return ZeroCoefficient(index)
