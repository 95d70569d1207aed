"""
ElGamal over the third group of units U³(Z_n).

All ⊗-arithmetic runs on the residue side of the isomorphism f: exponents
are added or multiplied mod φ³(n) and only the final residue is mapped back
to U³(Z_n).
"""
import logging
import secrets
from dataclasses import dataclass
from typing import List, Optional, Union

from algorithm.unit_groups import GroupElement, UnitGroupTower, op_inverse, op_otimes, op_pow
from core.errors import ComponentNotInU3, ComponentOutOfRange, DegenerateGroup, MessageNotInU3, NotInU3, OutOfRange

logger = logging.getLogger(__name__)

# Prepended to every byte string before digit encoding so leading zero bytes survive.
BYTES_SENTINEL = 0x01


@dataclass(frozen=True)
class U3PublicKey:
    tower: UnitGroupTower
    g: GroupElement
    B: GroupElement

    @property
    def n(self) -> int:
        return self.tower.n


@dataclass(frozen=True)
class U3KeyPair(U3PublicKey):
    b: int = 0

    @property
    def public(self) -> U3PublicKey:
        return U3PublicKey(self.tower, self.g, self.B)


@dataclass(frozen=True)
class U3Ciphertext:
    A: GroupElement
    X: GroupElement


def u3_keygen(tower: UnitGroupTower, rng=None, b: Optional[int] = None) -> U3KeyPair:
    """
    Generates a key (g, B = g^b) with b in [1, φ³(n)].

    Args:
        tower: Validated tower of n.
        rng: random.Random-like source; defaults to secrets.SystemRandom().
        b: Private exponent; drawn from rng when None.

    Returns:
        U3KeyPair: The key.

    Raises:
        DegenerateGroup: if φ³(n) < 2.
    """
    if tower.phi3 < 2:
        raise DegenerateGroup(f"U³(Z_{tower.n}) has order {tower.phi3}; nothing can be encrypted")
    rng = rng or secrets.SystemRandom()
    if b is None:
        b = rng.randint(1, tower.phi3)
    elif not 1 <= b <= tower.phi3:
        raise OutOfRange(f"private exponent must lie in [1, {tower.phi3}], got {b}")
    if b == tower.phi3:
        logger.warning(f"Weak U3 key: b = φ³({tower.n}) makes B the identity")

    g = tower.generator
    B = op_pow(tower, g, b)
    logger.info(f"U3 key generated: n={tower.n}, g={g.value}, B={B.value}")
    return U3KeyPair(tower, g, B, b)


def u3_encrypt(pub: U3PublicKey, m: Union[int, GroupElement], rng=None,
               a: Optional[int] = None) -> U3Ciphertext:
    """
    A = g^a, X = m ⊗ B^a for a fresh a in [1, φ³(n)].

    Raises:
        MessageNotInU3: if m is not in U³(Z_n).
    """
    tower = pub.tower
    try:
        m = tower.element(m)
    except NotInU3 as e:
        raise MessageNotInU3(str(e)) from e
    rng = rng or secrets.SystemRandom()
    if a is None:
        a = rng.randint(1, tower.phi3)
    elif not 1 <= a <= tower.phi3:
        raise OutOfRange(f"nonce must lie in [1, {tower.phi3}], got {a}")

    shared = op_pow(tower, pub.B, a)
    A = op_pow(tower, pub.g, a)
    logger.debug(f"U3 encrypt: a={a}, s={shared.value}, A={A.value}")
    return U3Ciphertext(A, op_otimes(tower, m, shared))


def u3_decrypt(key: U3KeyPair, c: U3Ciphertext) -> GroupElement:
    """m = X ⊗ s⁻¹ with s = A^b."""
    tower = key.tower
    try:
        A = tower.element(c.A)
        X = tower.element(c.X)
    except NotInU3 as e:
        raise ComponentNotInU3(str(e)) from e
    shared = op_pow(tower, A, key.b)
    return op_otimes(tower, X, op_inverse(tower, shared))


def u3_combine(tower: UnitGroupTower, c1: U3Ciphertext, c2: U3Ciphertext) -> U3Ciphertext:
    """
    Component-wise ⊗ of two ciphertexts under the same key.

    The result decrypts to m1 ⊗ m2.
    """
    try:
        return U3Ciphertext(op_otimes(tower, c1.A, c2.A), op_otimes(tower, c1.X, c2.X))
    except NotInU3 as e:
        raise ComponentNotInU3(str(e)) from e


def u3_encode_message(tower: UnitGroupTower, t: int) -> GroupElement:
    if not 0 <= t < tower.phi3:
        raise OutOfRange(f"message index must lie in [0, {tower.phi3}), got {t}")
    return tower.from_residue(t)


def u3_decode_message(tower: UnitGroupTower, m: Union[int, GroupElement]) -> int:
    return tower.element(m).residue


def _to_digits(data: bytes, base: int) -> List[int]:
    value = int.from_bytes(bytes([BYTES_SENTINEL]) + data, "big")
    digits = []
    while value:
        value, d = divmod(value, base)
        digits.append(d)
    return digits[::-1]


def _from_digits(digits: List[int], base: int) -> bytes:
    value = 0
    for d in digits:
        value = value * base + d
    raw = value.to_bytes((value.bit_length() + 7) // 8, "big")
    if not raw or raw[0] != BYTES_SENTINEL:
        raise ComponentOutOfRange("decrypted blocks do not carry the byte-string sentinel")
    return raw[1:]


def u3_encrypt_bytes(pub: U3PublicKey, data: bytes, rng=None) -> List[U3Ciphertext]:
    """
    Encrypts a byte string as base-φ³(n) digits, one ciphertext per digit,
    each with a fresh nonce.
    """
    tower = pub.tower
    rng = rng or secrets.SystemRandom()
    return [u3_encrypt(pub, u3_encode_message(tower, d), rng) for d in _to_digits(data, tower.phi3)]


def u3_decrypt_bytes(key: U3KeyPair, blocks: List[U3Ciphertext]) -> bytes:
    digits = [u3_decode_message(key.tower, u3_decrypt(key, c)) for c in blocks]
    return _from_digits(digits, key.tower.phi3)
