"""Exception hierarchy shared by the library and the command line."""


class DomainError(ValueError):
    """An input outside the mathematical domain of an operation."""


class MixedRadicand(DomainError):
    pass


class NegativeRadicand(DomainError):
    pass


class SquareInput(DomainError):
    pass


class DegreeTooSmall(DomainError):
    pass


class OddDegree(DomainError):
    pass
