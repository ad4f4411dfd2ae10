"""Exception types shared across the package."""


class GalresError(Exception):
    """Base class for all package-specific errors."""


class ParseError(GalresError):
    """Polynomial expression could not be parsed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.message = message
        self.offset = offset


class DivisionByZeroPolynomial(GalresError):
    """Polynomial division by the zero polynomial."""


class BothZero(GalresError):
    """gcd of two zero polynomials is undefined."""


class NotInvertible(GalresError):
    """Residue shares a factor with the modulus (or modulus not squarefree)."""


class NonMonicInput(GalresError):
    """Operation requires a monic polynomial."""


class NotSquarefree(GalresError):
    """Polynomial has a repeated root."""


class PrecisionExhausted(GalresError):
    """Certification failed at the configured maximum working precision."""


class SearchExhausted(GalresError):
    """Weight search hit the configured magnitude bound without success."""


class CertificateFailed(GalresError):
    """An exact post-certificate did not hold; signals an upstream bug."""


class MatchAmbiguous(GalresError):
    """A numeric value could not be matched to a unique certified ball."""


class ClosureFailed(GalresError):
    """Composition of two substitutions left the extracted system."""


class UnrecognizedOrder(GalresError):
    """Group order outside the classification table for the degree."""


class NotInvariant(GalresError):
    """Field element is not fixed by the substitution group."""


class DegenerateTheta(GalresError):
    """A coset-difference polynomial vanished identically."""


class InternalError(GalresError):
    """Invariant violated; indicates a bug, not bad input."""
