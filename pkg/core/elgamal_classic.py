import logging
import secrets
from dataclasses import dataclass
from typing import Optional

from algorithm.number_theory import find_primitive_root, is_prime
from core.errors import ComponentOutOfRange, MessageOutOfRange, NotPrime, OutOfRange

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassicPublicKey:
    p: int
    alpha: int
    alpha_a: int


@dataclass(frozen=True)
class ClassicKeyPair:
    """ElGamal key over Z_p*: alpha generates Z_p*, alpha_a = alpha^a mod p."""
    p: int
    alpha: int
    alpha_a: int
    a: int

    @property
    def public(self) -> ClassicPublicKey:
        return ClassicPublicKey(self.p, self.alpha, self.alpha_a)


@dataclass(frozen=True)
class ClassicCiphertext:
    gamma: int
    delta: int


def classic_keygen(p: int, rng=None, a: Optional[int] = None) -> ClassicKeyPair:
    """
    Generates a key for prime p.

    Args:
        p: Prime modulus >= 5.
        rng: random.Random-like source; defaults to secrets.SystemRandom().
        a: Private exponent in [1, p-2]; drawn from rng when None.

    Returns:
        ClassicKeyPair: The key with the smallest generator of Z_p* as alpha.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p < 5:
        raise OutOfRange(f"classic ElGamal needs p >= 5, got {p}")
    rng = rng or secrets.SystemRandom()
    if a is None:
        a = rng.randint(1, p - 2)
    elif not 1 <= a <= p - 2:
        raise OutOfRange(f"private exponent must lie in [1, {p - 2}], got {a}")

    alpha = find_primitive_root(p)
    key = ClassicKeyPair(p, alpha, pow(alpha, a, p), a)
    logger.info(f"Classic key generated: p={p}, alpha={alpha}")
    return key


def classic_encrypt(pub: ClassicPublicKey, m: int, rng=None, k: Optional[int] = None) -> ClassicCiphertext:
    """gamma = alpha^k, delta = m * (alpha^a)^k mod p with k in [1, p-2]."""
    if not 0 <= m <= pub.p - 1:
        raise MessageOutOfRange(f"message must lie in [0, {pub.p - 1}], got {m}")
    if m == 0:
        logger.warning("Encrypting m = 0: delta will be 0 and reveals the message")
    rng = rng or secrets.SystemRandom()
    if k is None:
        k = rng.randint(1, pub.p - 2)
    elif not 1 <= k <= pub.p - 2:
        raise OutOfRange(f"nonce must lie in [1, {pub.p - 2}], got {k}")
    gamma = pow(pub.alpha, k, pub.p)
    delta = m * pow(pub.alpha_a, k, pub.p) % pub.p
    return ClassicCiphertext(gamma, delta)


def classic_decrypt(key: ClassicKeyPair, c: ClassicCiphertext) -> int:
    """
    Recovers m = gamma^(p-1-a) * delta mod p.

    Raises:
        ComponentOutOfRange: if gamma is outside [1, p) or delta outside [0, p).
    """
    if not 1 <= c.gamma < key.p:
        raise ComponentOutOfRange(f"gamma must lie in [1, {key.p}), got {c.gamma}")
    if not 0 <= c.delta < key.p:
        raise ComponentOutOfRange(f"delta must lie in [0, {key.p}), got {c.delta}")
    return pow(c.gamma, key.p - 1 - key.a, key.p) * c.delta % key.p
