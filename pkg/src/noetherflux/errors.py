"""Exception hierarchy shared by all modules."""


class NoetherFluxError(Exception):
    """Base class for every error raised by the package."""


class PointOutsideDomain(NoetherFluxError, ValueError):
    pass


class BasePointMismatch(NoetherFluxError, ValueError):
    pass


class InvalidSymmetry(NoetherFluxError, ValueError):
    pass


class BranchMismatch(NoetherFluxError, ValueError):
    """A formula was requested for a (kappa, tau) case it does not cover."""


class DegenerateImmersion(NoetherFluxError, ArithmeticError):
    pass


class ParamOutsideDomain(NoetherFluxError, ValueError):
    pass


class PotentialUnavailable(NoetherFluxError):
    pass


class NumericalFailure(NoetherFluxError, ArithmeticError):
    """Base for failures of an iterative numerical method."""


class NonConvergent(NumericalFailure):
    pass


class SolverFailure(NumericalFailure):
    pass


class NoBracket(NumericalFailure):
    pass


class PeriodNotFound(NumericalFailure):
    pass


class NonPositiveNeck(NoetherFluxError, ValueError):
    pass


class MissingBaseFlux(NoetherFluxError, KeyError):
    pass


class TableRowUnavailable(NoetherFluxError):
    pass


class ConfigError(NoetherFluxError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
