"""Exception hierarchy shared by all modules."""


class DiophError(Exception):
    """Base class. The CLI maps these to exit code 2."""


class ParseError(DiophError, ValueError):
    def __init__(self, message: str, token: str = ""):
        super().__init__(f"{message}: {token!r}" if token else message)
        self.token = token


class DomainError(DiophError, ValueError):
    pass


class DepthError(DiophError):
    """The quotient stream ran out before the requested accuracy."""

    def __init__(self, message: str, depth: int = -1):
        super().__init__(f"insufficient stream depth: {message} (depth reached {depth})")
        self.depth = depth


class Undecided(DiophError):
    """An interval comparison could not be settled at the current precision."""


class PrecisionError(DiophError):
    def __init__(self, message: str, bits: int):
        super().__init__(f"undecided at cap ({bits} bits): {message}")
        self.bits = bits


class DegenerateError(DiophError):
    """n*alpha - gamma is an integer, so the norm vanishes."""

    def __init__(self, n: int):
        super().__init__(f"n={n} hits gamma exactly (norm is zero)")
        self.n = n


class DigitError(DiophError, ValueError):
    pass


class IdentityError(DiophError, AssertionError):
    """An identity that must hold exactly was violated by its enclosures."""


class ConstructionError(DiophError):
    pass


class ResourceError(DiophError):
    pass
