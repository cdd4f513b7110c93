"""Exception hierarchy shared by every module."""


class ParalleloError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(ParalleloError, ValueError):
    pass


class NotFullDimensionalError(ParalleloError, ValueError):
    """Point set spans an affine subspace of lower dimension."""

    def __init__(self, affine_dim, ambient_dim):
        self.affine_dim = affine_dim
        self.ambient_dim = ambient_dim
        super().__init__(
            f"not full-dimensional: affine hull has dimension {affine_dim} "
            f"in ambient dimension {ambient_dim}"
        )


class NotSublatticeError(ParalleloError, ValueError):
    """A lattice passed as a sublattice has a basis row outside the parent."""


class NotParallelohedronError(ParalleloError, ValueError):
    """Input fails the Minkowski-Venkov conditions; the report is attached."""

    def __init__(self, report):
        self.report = report
        super().__init__("polytope is not a parallelohedron")


class SplitPreconditionError(ParalleloError, ValueError):
    """Partition of the Venkov vertices cannot be used for a split."""


class GainError(ParalleloError, ValueError):
    """Raised on missing cell values or a gain assignment that cannot be integrated."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class InternalConsistencyError(ParalleloError, RuntimeError):
    """A verified postcondition failed; a bug rather than bad input."""


class FormatError(ParalleloError, ValueError):
    """Malformed input file, carrying a line/column position."""

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = source or "<input>"
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")
