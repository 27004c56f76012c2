"""Exception hierarchy shared by every layer of the prover."""


class PlaneProverError(Exception):
    """Base class for all prover errors."""


# kernel
class MalformedScalarError(PlaneProverError):
    pass


class ScalarDivisionError(PlaneProverError, ZeroDivisionError):
    pass


class UnsupportedRadicalDivisionError(PlaneProverError):
    pass


class NotPolynomialError(PlaneProverError):
    pass


class NonlinearSystemError(PlaneProverError):
    pass


class ShapeError(PlaneProverError, ValueError):
    pass


class NotDivisibleError(PlaneProverError):
    pass


class EvaluationError(PlaneProverError):
    """Pole (or undefined radical) at the requested evaluation point."""


class ResourceError(PlaneProverError):
    """An expansion exceeded the configured term budget."""


# geometry
class DegenerateError(PlaneProverError):
    """An intermediate construction is identically degenerate."""


class DegenerateIntersectionError(DegenerateError):
    pass


class DegenerateCircleError(DegenerateError):
    pass


class NoCommonPointError(DegenerateError):
    pass


class NotIncidentError(DegenerateError):
    pass


class UnsupportedOrientationError(DegenerateError):
    pass


class PoleError(DegenerateError, ZeroDivisionError):
    pass


class InternalInconsistencyError(PlaneProverError):
    pass


# theorems / cli
class UnknownTheoremError(PlaneProverError, KeyError):
    pass


class UnableToSampleError(PlaneProverError):
    pass


class ProofTimeoutError(PlaneProverError):
    pass


class ScriptError(PlaneProverError):
    """Problem in a theorem script, located by line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0, expected: tuple = ()):
        self.message, self.line, self.column, self.expected = message, line, column, tuple(expected)
        where = f"line {line}, column {column}: " if line else ""
        hint = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{where}{message}{hint}")


class ScriptSyntaxError(ScriptError):
    pass


class ScriptValidationError(ScriptError):
    pass
