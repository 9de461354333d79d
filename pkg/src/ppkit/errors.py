"""Exception hierarchy shared by all ppkit modules."""


class PPKitError(Exception):
    """Base class for all ppkit errors."""


class NotPrime(PPKitError):
    """Characteristic argument is not a prime number."""


class DegreeTooLarge(PPKitError):
    """Requested field exceeds the configured size bound."""


class NoIrreducibleFound(PPKitError):
    """Internal modulus search failed; indicates a bug, not bad input."""


class DivisionByZero(PPKitError):
    """Inverse or division requested for the zero element."""


class MixedContexts(PPKitError):
    """Operands belong to different field contexts."""


class InvalidSubfield(PPKitError):
    """Subfield order is not p^j with j dividing the extension degree."""


class UnsupportedK(PPKitError):
    """power_class only supports k in {2, 4}."""


class WrongCharacteristic(PPKitError):
    """Operation requires the other parity of characteristic."""


class DependentBasis(PPKitError):
    """Supplied basis vectors are linearly dependent."""


class SingularGram(PPKitError):
    """Trace Gram matrix is singular (cannot happen for a true basis)."""


class ImageOutOfDomain(PPKitError):
    """An evaluator produced an encoding outside the codomain."""


class DomainTooLarge(PPKitError):
    """Domain exceeds the oracle's enumeration bound."""


class NotAdditive(PPKitError):
    """Sampled additivity check failed for a claimed linearized map."""


class ExponentOutOfRange(PPKitError):
    """Instantiated exponent falls outside (0, q^2 - 1)."""


class KindContextMismatch(PPKitError):
    """Family kind does not match the supplied field context."""


class UnknownTheorem(PPKitError):
    """No theorem with the given identifier."""


class MissingParam(PPKitError):
    """A theorem-specific parameter (i, d, ...) was not supplied."""


class GammaNotInSubfield(PPKitError):
    """Operation requires gamma to lie in the base field."""


class SingularMatrix(PPKitError):
    """Decomposition twist matrix is not invertible."""


class DegreeOverflow(PPKitError):
    """Interpolated degree reaches q; coefficient form is ambiguous."""
