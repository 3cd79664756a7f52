"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands have incompatible lengths or shapes."""


class DegenerateInputError(ValueError):
    """Input is excluded by the operation's precondition (e.g. the zero vector)."""


class InvalidInputError(ValueError):
    """Arguments violate a structural precondition (e.g. equal points)."""


class SingularMatrixError(ValueError):
    """Matrix inversion was requested for a non-invertible matrix."""


class InequivalentFormsError(ValueError):
    """The two quadratic forms have different types and cannot be congruent."""


class NoSolutionError(ValueError):
    """A linear system has no solution."""


class NotFoundError(ValueError):
    """An exhaustive search finished without finding the required object."""


class IllDefinedMoveError(ValueError):
    """An elementary move is ill-defined because a point would get two images."""


class ScaleError(ValueError):
    """The requested computation exceeds the supported desk scale."""


class ValidationError(ValueError):
    """A design failed validation."""
