"""
ElGamal over the second group of units U²(Z_n).

Case 1 takes a modulus n for which U(Z_n) and U(Z_φ(n)) are both cyclic.
Case 2 takes n = 3p for an odd prime p > 3: U(Z_n) is then not cyclic, so all
exponent arithmetic runs in the prime component with φ(p), and messages are
the CRT lifts x = 2 (mod 3), x = primitive root (mod p).
"""
import bisect
import logging
import secrets
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from math import gcd
from typing import Optional, Tuple

from algorithm.number_theory import (
    crt_solve,
    euler_phi,
    factorize,
    find_primitive_root,
    is_cyclic_unit_group,
    is_prime,
    is_primitive_root,
    multiplicative_order,
)
from algorithm.unit_groups import DEFAULT_ENUMERATION_LIMIT, enumerate_u_k
from core.errors import (
    ComponentOutOfRange,
    DegenerateGroup,
    InvalidCase2Modulus,
    MessageNotInU2,
    OutOfRange,
    TowerNotCyclic,
)

logger = logging.getLogger(__name__)


class U2Case(Enum):
    CASE1 = "u2-case1"
    CASE2 = "u2-case2"


@dataclass(frozen=True)
class U2PublicKey:
    n: int
    theta1: int
    s: int
    f: int
    case: U2Case = U2Case.CASE1
    p: Optional[int] = None

    @property
    def prime_modulus(self) -> int:
        """Modulus the exponents live over: n in case 1, p in case 2."""
        return self.n if self.case is U2Case.CASE1 else self.p

    @cached_property
    def phi(self) -> int:
        return euler_phi(self.prime_modulus)

    @cached_property
    def phi2(self) -> int:
        return euler_phi(self.phi)

    @property
    def theta(self) -> int:
        """Generator theta1^s of the message group, lifted to Z_n in case 2."""
        return u2_generator_power(self, 1)


@dataclass(frozen=True)
class U2KeyPair(U2PublicKey):
    a: int = 0

    @property
    def public(self) -> U2PublicKey:
        return U2PublicKey(self.n, self.theta1, self.s, self.f, self.case, self.p)


@dataclass(frozen=True)
class U2Ciphertext:
    q: int
    delta: int


def validate_case2_modulus(n: int) -> int:
    """
    Checks that n = 3p with p an odd prime greater than 3.

    Returns:
        int: The prime p.

    Raises:
        InvalidCase2Modulus: for any other shape.
    """
    if n % 3 != 0 or not is_prime(n // 3) or n // 3 <= 3:
        raise InvalidCase2Modulus(f"case 2 needs n = 3p with p an odd prime > 3, got {n}")
    return n // 3


def _check_two_levels(modulus: int) -> int:
    if modulus < 3:
        raise OutOfRange(f"modulus must be >= 3, got {modulus}")
    if not is_cyclic_unit_group(modulus):
        raise TowerNotCyclic("n", modulus)
    phi = euler_phi(modulus)
    if not is_cyclic_unit_group(phi):
        raise TowerNotCyclic("φ(n)", phi)
    return phi


def u2_find_generator_exponent(n: int, rng=None) -> Tuple[int, int]:
    """
    Finds theta1 generating U(Z_n) and s such that theta1^s generates U²(Z_n).

    s is drawn at random among the units of Z_φ(n) and rejected while
    theta1^(s^(N/q)) == theta1 for some prime q dividing N = φ²(n).

    Args:
        n: Modulus with cyclic U(Z_n) and U(Z_φ(n)).
        rng: random.Random-like source.

    Returns:
        Tuple[int, int]: (theta1, s).
    """
    phi = _check_two_levels(n)
    rng = rng or secrets.SystemRandom()
    theta1 = find_primitive_root(n)
    order = euler_phi(phi)
    primes = factorize(order).primes if order > 1 else ()

    attempts = 0
    while True:
        attempts += 1
        s = rng.randint(1, phi - 1)
        if gcd(s, phi) != 1:
            continue
        if any(pow(theta1, pow(s, order // q, phi), n) == theta1 for q in primes):
            continue
        logger.debug(f"Generator exponent s={s} for n={n} after {attempts} draws")
        return theta1, s


def u2_keygen(n: int, case: U2Case = U2Case.CASE1, rng=None,
              a: Optional[int] = None, s: Optional[int] = None) -> U2KeyPair:
    """
    Generates a U² key.

    Args:
        n: Modulus; case 2 requires n = 3p.
        case: Which construction to use.
        rng: random.Random-like source.
        a: Private exponent in [2, φ²-1]; drawn when None.
        s: Generator exponent; found by u2_find_generator_exponent when None.

    Returns:
        U2KeyPair: Key with f = s^a mod φ.

    Raises:
        DegenerateGroup: if φ² < 3 leaves no room for a.
    """
    case = U2Case(case)
    rng = rng or secrets.SystemRandom()
    p = validate_case2_modulus(n) if case is U2Case.CASE2 else None
    modulus = p if p is not None else n

    if s is None:
        theta1, s = u2_find_generator_exponent(modulus, rng)
    else:
        phi = _check_two_levels(modulus)
        theta1 = find_primitive_root(modulus)
        if gcd(s, phi) != 1 or multiplicative_order(s, phi) != euler_phi(phi):
            raise OutOfRange(f"s={s} does not generate U(Z_{phi})")

    phi = euler_phi(modulus)
    phi2 = euler_phi(phi)
    if phi2 < 3:
        raise DegenerateGroup(f"φ²({modulus}) = {phi2} leaves no private exponent in [2, φ² - 1]")
    if a is None:
        a = rng.randint(2, phi2 - 1)
    elif not 2 <= a <= phi2 - 1:
        raise OutOfRange(f"private exponent must lie in [2, {phi2 - 1}], got {a}")

    key = U2KeyPair(n, theta1, s, pow(s, a, phi), case, p, a)
    logger.info(f"U2 key generated ({case.value}): n={n}, theta1={theta1}, s={s}")
    return key


def check_u2_public(pub: U2PublicKey) -> None:
    """Raises OutOfRange if the public parameters are inconsistent."""
    modulus = pub.prime_modulus
    if pub.case is U2Case.CASE2 and validate_case2_modulus(pub.n) != pub.p:
        raise OutOfRange(f"p={pub.p} does not match n={pub.n}")
    phi = _check_two_levels(modulus)
    if not is_primitive_root(pub.theta1, modulus):
        raise OutOfRange(f"theta1={pub.theta1} does not generate U(Z_{modulus})")
    if not 0 < pub.s < phi or gcd(pub.s, phi) != 1:
        raise OutOfRange(f"s={pub.s} is not a unit modulo {phi}")
    if not 0 <= pub.f < phi:
        raise OutOfRange(f"f={pub.f} is outside Z_{phi}")


def is_u2_message(pub: U2PublicKey, m: int) -> bool:
    if not 0 <= m < pub.n:
        return False
    if pub.case is U2Case.CASE1:
        return gcd(m, pub.n) == 1 and is_primitive_root(m, pub.n)
    return m % 3 == 2 and is_primitive_root(m % pub.p, pub.p)


def u2_encrypt(pub: U2PublicKey, m: int, rng=None, k: Optional[int] = None) -> U2Ciphertext:
    """
    q = s^k mod φ, r = f^k mod φ, delta = m^r mod n with k in [2, φ²-1].

    Raises:
        MessageNotInU2: if m is not in the message group.
    """
    if not is_u2_message(pub, m):
        raise MessageNotInU2(f"{m} is not in U²(Z_{pub.n})")
    phi, phi2 = pub.phi, pub.phi2
    if phi2 < 3:
        raise DegenerateGroup(f"φ² = {phi2} leaves no nonce in [2, φ² - 1]")
    rng = rng or secrets.SystemRandom()
    if k is None:
        k = rng.randint(2, phi2 - 1)
    elif not 2 <= k <= phi2 - 1:
        raise OutOfRange(f"nonce must lie in [2, {phi2 - 1}], got {k}")

    q = pow(pub.s, k, phi)
    r = pow(pub.f, k, phi)
    if logger.isEnabledFor(logging.DEBUG):
        # gamma = theta^k is never transmitted
        gamma = pow(pub.theta1, q, pub.prime_modulus)
        logger.debug(f"U2 encrypt: k={k}, q={q}, r={r}, gamma={gamma}")
    return U2Ciphertext(q, pow(m, r, pub.n))


def u2_decrypt(key: U2KeyPair, c: U2Ciphertext) -> int:
    """Recovers m = delta^t mod n with t = q^(φ² - a) mod φ."""
    phi = key.phi
    if not 0 <= c.q < phi or gcd(c.q, phi) != 1:
        raise ComponentOutOfRange(f"q={c.q} is not a unit modulo {phi}")
    if not 0 <= c.delta < key.n or gcd(c.delta, key.n) != 1:
        raise ComponentOutOfRange(f"delta={c.delta} is not a unit modulo {key.n}")
    b = key.phi2 - key.a
    t = pow(c.q, b, phi)
    return pow(c.delta, t, key.n)


def u2_generator_power(pub: U2PublicKey, i: int) -> int:
    """The ⊕-power theta^i = theta1^(s^i mod φ), lifted by CRT in case 2."""
    if i < 0:
        raise OutOfRange(f"exponent must be non-negative, got {i}")
    modulus = pub.prime_modulus
    x = pow(pub.theta1, pow(pub.s, i, pub.phi), modulus)
    if pub.case is U2Case.CASE1:
        return x
    return crt_solve([(2, 3), (x, pub.p)])


@lru_cache(maxsize=64)
def _message_space(n: int, case: U2Case, p: Optional[int], limit: int) -> Tuple[int, ...]:
    if case is U2Case.CASE1:
        return tuple(sorted(enumerate_u_k(n, 2, limit)))
    return tuple(sorted(crt_solve([(2, 3), (x, p)]) for x in enumerate_u_k(p, 2, limit)))


def u2_message_space(pub: U2PublicKey, limit: int = DEFAULT_ENUMERATION_LIMIT) -> Tuple[int, ...]:
    """Sorted message group; an integer message is carried as its index here."""
    return _message_space(pub.n, pub.case, pub.p, limit)


def u2_encode_message(pub: U2PublicKey, index: int) -> int:
    space = u2_message_space(pub)
    if not 0 <= index < len(space):
        raise OutOfRange(f"message index must lie in [0, {len(space)}), got {index}")
    return space[index]


def u2_decode_message(pub: U2PublicKey, m: int) -> int:
    space = u2_message_space(pub)
    i = bisect.bisect_left(space, m)
    if i == len(space) or space[i] != m:
        raise MessageNotInU2(f"{m} is not in U²(Z_{pub.n})")
    return i
