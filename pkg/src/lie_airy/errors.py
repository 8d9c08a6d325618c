"""Exception hierarchy."""


class LieAiryError(Exception):
    """Base class for all package errors."""


class PolynomialParseError(LieAiryError, ValueError):
    pass


class DimensionError(LieAiryError, ValueError):
    pass


class DegreeError(LieAiryError, ValueError):
    pass


class UnusableCycleError(LieAiryError, RuntimeError):
    """The majorant fit found no positive leading coefficient on the cycle."""


class TruncationError(LieAiryError, RuntimeError):
    """The tail bound could not be pushed below tolerance before the radius cap."""


class QuadratureError(LieAiryError, RuntimeError):
    """Adaptive quadrature did not reach tolerance within the panel budget."""


class NotAiryError(LieAiryError, ValueError):
    """The polynomial could not be certified to have the Airy property."""


class NotHermitianError(LieAiryError, ValueError):
    pass


class CoincidenceError(LieAiryError, ValueError):
    """Eigenvalues are too close for the requested operation."""
