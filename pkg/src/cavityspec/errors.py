"""Exception hierarchy shared by the numerical kernels, models and CLI."""


class CavitySpecError(Exception):
    """Base class for all errors raised by cavityspec."""


class DomainError(CavitySpecError, ValueError):
    """An argument lies outside the supported domain (pole, range, geometry)."""


class AccuracyError(CavitySpecError, ArithmeticError):
    """A series or iteration did not reach its tolerance within budget."""

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class RangeError(CavitySpecError, OverflowError):
    """A value cannot be represented even in scaled form."""


class DataError(CavitySpecError, ValueError):
    """Input data violates a structural precondition (zero profile, crossing branches)."""


class BranchLostError(CavitySpecError):
    """Continuation could not find the branch again at some grid index."""

    def __init__(self, message, index, partial=None):
        super().__init__(message)
        self.index = index
        self.partial = partial


class ConfigError(CavitySpecError, ValueError):
    """Invalid run configuration; carries every problem found."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
