"""Exception hierarchy shared by every module of the workbench."""


class YoungBenchError(Exception):
    """Base class for all errors raised by youngbench."""


class NotSquare(YoungBenchError, ValueError):
    pass


class NotHermitian(YoungBenchError, ValueError):
    pass


class NotPSD(YoungBenchError, ValueError):
    pass


class NoConvergence(YoungBenchError, ArithmeticError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DimensionMismatch(YoungBenchError, ValueError):
    pass


class BadExponent(YoungBenchError, ValueError):
    pass


class BadDimension(YoungBenchError, ValueError):
    pass


class NegativeEntry(YoungBenchError, ValueError):
    pass


class DominanceViolated(YoungBenchError, ValueError):
    pass


class NotContraction(YoungBenchError, ValueError):
    pass


class NotUnit(YoungBenchError, ValueError):
    pass


class NotProjection(YoungBenchError, ValueError):
    pass


class NotRankOne(YoungBenchError, ValueError):
    pass


class PremiseNotMet(YoungBenchError, ValueError):
    pass


class DegenerateCluster(YoungBenchError, ValueError):
    pass


class ParseError(YoungBenchError, ValueError):
    pass


class UnknownSuite(YoungBenchError, ValueError):
    pass
