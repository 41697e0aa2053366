"""Exception hierarchy.

Input problems derive from :class:`ValidationError`; failures that only show
up once the numerics run derive from :class:`NumericalError`.  The CLI maps
the two families to exit codes 2 and 3.
"""


class ValidationError(ValueError):
    """Malformed or structurally inadmissible input."""


class DimensionError(ValidationError):
    pass


class RankDeficiencyError(ValidationError):
    pass


class NotSymmetricError(ValidationError):
    """A symmetric state-space realization was required."""


class NotPositiveDefiniteError(ValidationError):
    pass


class RepeatedPolesError(ValidationError):
    pass


class NotZipError(ValidationError):
    """Pole/residue data that cannot come from a ZIP function."""


class NumericalError(ArithmeticError):
    """A computation failed or produced a result that violates theory."""


class ImaginaryAxisError(NumericalError):
    """An eigenvalue sits inside the imaginary-axis guard band."""


class SingularMatrixError(NumericalError):
    pass


class NotStrictlyPassiveError(NumericalError):
    pass
