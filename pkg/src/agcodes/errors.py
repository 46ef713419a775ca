"""Exception types shared across the package."""


class AgcError(Exception):
    """Base class for all package errors."""


class ReducibleModulus(AgcError):
    """The supplied modulus polynomial is not irreducible over the prime field."""


class OddDegree(AgcError):
    """Hermitian machinery requested but the extension degree m is odd."""


class DivisionByZero(AgcError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class MixedAmbient(AgcError):
    """Operands live in different group algebras."""


class LengthMismatch(AgcError):
    """Coordinate vector has the wrong length for the ambient."""


class TooLarge(AgcError):
    """Construction exceeds the supported desk-scale size caps."""


class TooLargeToEnumerate(AgcError):
    """Exhaustive enumeration would exceed the configured cap."""

    def __init__(self, size, cap=None):
        self.size = size
        self.cap = cap
        msg = f"enumeration of {size} items exceeds the cap"
        if cap is not None:
            msg += f" of {cap}"
        super().__init__(msg)


class NotComplementary(AgcError):
    """The given subspaces do not decompose the ambient as a direct sum."""


class NotSubmodule(AgcError):
    """Operation requires a left FG-submodule."""


class NotProjector(AgcError):
    """Operation requires an idempotent operator."""


class NotIdempotent(AgcError):
    """Operation requires an idempotent algebra element."""


class NotKLinear(AgcError):
    """Operation requires a K-linear code (a left ideal)."""


class ParseError(AgcError):
    """A field/group/element/form specification string could not be parsed."""


class ConsistencyError(AgcError):
    """Two provably equivalent computations disagreed (internal invariant)."""
