"""Exception types raised across the package."""


class FitsetError(Exception):
    """Base class for every error raised by this package."""


class ParseError(FitsetError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos} in {text!r}"
        super().__init__(message)


class OrderBoundExceeded(FitsetError):
    def __init__(self, bound: int, reached: int):
        self.bound = bound
        self.reached = reached
        super().__init__(f"group order exceeds bound {bound} (closure reached {reached} elements)")


class SubgroupCapExceeded(FitsetError):
    def __init__(self, cap: int, reached: int):
        self.cap = cap
        self.reached = reached
        super().__init__(f"subgroup enumeration exceeded cap {cap} (found {reached} so far)")


class NotAGroupError(FitsetError):
    """A Cayley table failed validation."""


class NotNormalError(FitsetError):
    pass


class RefusedShape(FitsetError):
    """A class expression lacks the flag an operation needs (Fitting or formation)."""


class ConsistencyError(FitsetError):
    """An internal postcondition failed; indicates a bug or an input that is not what it claims."""


class HypothesisRefused(FitsetError):
    """A theorem-backed operation was asked to run outside its hypotheses."""
