"""Exception hierarchy for the toolkit.

Every error is a ``ValueError`` so callers that only care about "bad input"
can keep catching that, while the CLI maps the precise subclasses onto its
exit codes.
"""
from typing import Optional


class UnitsToolkitError(ValueError):
    """Base class of all errors raised by the toolkit."""


class OutOfRange(UnitsToolkitError):
    """A numeric argument lies outside the range an operation accepts."""


class NotInvertible(UnitsToolkitError):
    """gcd(a, m) != 1, so a has no inverse modulo m."""


class ModuliNotCoprime(UnitsToolkitError):
    """Two moduli handed to the CRT solver share a factor."""


class NotInSubgroup(UnitsToolkitError):
    """The target of a discrete log is not a power of the base."""


class NotPrime(UnitsToolkitError):
    pass


class NotCyclic(UnitsToolkitError):
    """U(Z_n) is not cyclic, so it has no primitive root."""


class TowerNotCyclic(UnitsToolkitError):
    """One level of the totient tower has a non-cyclic unit group.

    Attributes:
        level: Name of the failing level ("n", "φ(n)" or "φ²(n)").
        modulus: The modulus at that level.
    """

    def __init__(self, level: str, modulus: int, message: Optional[str] = None):
        self.level = level
        self.modulus = modulus
        super().__init__(message or f"U(Z_{modulus}) is not cyclic at tower level {level}")


class EnumerationTooLarge(UnitsToolkitError):
    pass


class NotInU2(UnitsToolkitError):
    pass


class NotInU3(UnitsToolkitError):
    pass


class DegenerateGroup(UnitsToolkitError):
    """The group is too small to carry keys or messages."""


class InvalidCase2Modulus(UnitsToolkitError):
    pass


class MessageOutOfRange(UnitsToolkitError):
    """The plaintext is not in the scheme's message space."""


class MessageNotInU2(MessageOutOfRange, NotInU2):
    pass


class MessageNotInU3(MessageOutOfRange, NotInU3):
    pass


class ComponentOutOfRange(UnitsToolkitError):
    """A ciphertext component is malformed for the key it is decrypted with."""


class ComponentNotInU3(ComponentOutOfRange, NotInU3):
    pass


class NoPairFound(UnitsToolkitError):
    pass


class EmptyInput(UnitsToolkitError):
    pass


class KeyFileError(UnitsToolkitError):
    """A key file is malformed or inconsistent with its own parameters."""
