"""Exception types raised across the package."""


class GrassCliqueError(Exception):
    """Base class for all library errors."""


class FieldConstructionError(GrassCliqueError):
    """A field could not be built from the given parameters."""


class NotPrimeError(FieldConstructionError):
    """The base-field order q is not a prime."""


class WrongDegreeError(FieldConstructionError):
    """The modulus polynomial does not have degree n."""


class NotMonicError(FieldConstructionError):
    """The modulus polynomial is not monic."""


class NotPrimitiveError(FieldConstructionError):
    """x does not generate the full multiplicative group modulo the polynomial."""


class NoDefaultPolynomialError(FieldConstructionError):
    """No shipped primitive polynomial for this (q, n); supply one explicitly."""


class PolynomialSyntaxError(FieldConstructionError):
    """Unparseable polynomial text."""


class ExponentOutOfRangeError(GrassCliqueError):
    """An exponent lies outside [0, q^n - 1)."""


class ZeroVectorError(GrassCliqueError):
    """The zero vector has no discrete logarithm."""


class MixedFieldsError(GrassCliqueError):
    """Operands belong to different field contexts."""


class ResourceCapError(GrassCliqueError):
    """The requested Grassmannian exceeds the configured subspace ceiling."""


class SingletonOrbitError(GrassCliqueError):
    """A single-subspace orbit has no internal distance."""


class SameOrbitError(GrassCliqueError):
    """Inter-orbit distance requires two distinct orbits."""


class FixedNotCliqueError(GrassCliqueError):
    """The fixed vertex set is not a clique."""


class CertificateFormatError(GrassCliqueError):
    """A certificate file or dict does not match the expected schema."""
