"""Exception hierarchy.

Three families map onto CLI exit codes: input problems (3), failed balance
validation (2) and numerical failures (4).
"""


class GvcError(Exception):
    exit_code = 1


class InputError(GvcError, ValueError):
    exit_code = 3


class ValidationError(GvcError):
    exit_code = 2


class NumericalError(GvcError, ArithmeticError):
    exit_code = 4


# input
class DimensionMismatch(InputError):
    pass


class UnmappedCode(InputError):
    pass


class MissingFile(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, row=None, col=None, path=None):
        where = []
        if path is not None:
            where.append(str(path))
        if row is not None:
            where.append(f"row {row}")
        if col is not None:
            where.append(f"col {col}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.row = row
        self.col = col
        self.path = path


class NegativeEntries(InputError):
    pass


class MissingVector(InputError):
    pass


class NoManufacturingSectors(InputError):
    pass


class SchemeMismatch(InputError):
    pass


class UnknownFormat(InputError):
    pass


class UnknownVariable(InputError):
    pass


class EmptyFlow(InputError):
    pass


class EmptySeries(InputError):
    pass


class IoError(InputError):
    pass


class TooFewObservations(InputError):
    pass


class NoVariation(InputError):
    pass


# validation
class Imbalanced(ValidationError):
    def __init__(self, report):
        super().__init__(
            f"table fails balance check: worst row residual {report.worst_row_residual:.3g}, "
            f"worst column residual {report.worst_col_residual:.3g}"
        )
        self.report = report


# numerical
class NonProductive(NumericalError):
    pass


class ZeroOutput(NumericalError):
    pass


class ZeroExports(NumericalError):
    pass


class ZeroVariance(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class RankDeficient(NumericalError):
    def __init__(self, column):
        super().__init__(f"design matrix is rank deficient; collinear column: {column!r}")
        self.column = column


class Separation(NumericalError):
    pass


class DisconnectedAllZero(UserWarning):
    """Issued (not raised) when a flow matrix has no off-diagonal mass."""
