import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from core.errors import ModuliNotCoprime, NotCyclic, NotInvertible, OutOfRange

logger = logging.getLogger(__name__)

DEFAULT_TRIAL_DIVISION_BOUND = 10**6

# Deterministic for n < 3.3 * 10**24. Above that the longer list makes the
# test probabilistic, with a false-positive rate below 4**-25 per composite.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_BASES_WIDE = _MR_BASES + (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True)
class Factorization:
    """
    Prime factorization of an integer as ordered (prime, exponent) pairs.

    Primes are strictly increasing and every exponent is at least 1.
    """
    pairs: Tuple[Tuple[int, int], ...]

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def value(self) -> int:
        result = 1
        for p, e in self.pairs:
            result *= p**e
        return result


def is_prime(n: int) -> bool:
    """
    Miller-Rabin primality test with fixed bases.

    Args:
        n: Integer to test.

    Returns:
        bool: True if n is prime.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    bases = _MR_BASES if n < _MR_DETERMINISTIC_LIMIT else _MR_BASES_WIDE
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Returns a nontrivial factor of the odd composite n (Brent's variant)."""
    c = 1
    while True:
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        batch = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += batch
            r *= 2
        if g == n:
            # Batched gcd overshot; replay one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1
        logger.debug(f"Pollard rho retry on {n} with c={c}")


def _split_large(n: int, out: List[int]) -> None:
    if n == 1:
        return
    if n % 2 == 0:
        out.append(2)
        _split_large(n // 2, out)
        return
    if is_prime(n):
        out.append(n)
        return
    d = _pollard_rho(n)
    _split_large(d, out)
    _split_large(n // d, out)


@lru_cache(maxsize=8192)
def factorize(n: int, trial_bound: int = DEFAULT_TRIAL_DIVISION_BOUND) -> Factorization:
    """
    Factorizes n by trial division up to ``trial_bound`` and Pollard's rho
    for whatever cofactor remains.

    Args:
        n: Integer >= 2.
        trial_bound: Largest trial divisor.

    Returns:
        Factorization: The prime factorization of n.
    """
    if n < 2:
        raise OutOfRange(f"factorize needs n >= 2, got {n}")

    found: List[int] = []
    rest = n
    if rest > trial_bound and is_prime(rest):
        return Factorization(((rest, 1),))

    d = 2
    while d <= trial_bound and d * d <= rest:
        if rest % d == 0:
            while rest % d == 0:
                found.append(d)
                rest //= d
            if rest > trial_bound and is_prime(rest):
                break
        d += 1 if d == 2 else 2
    if rest > 1:
        _split_large(rest, found)

    counts: dict = {}
    for p in found:
        counts[p] = counts.get(p, 0) + 1
    return Factorization(tuple(sorted(counts.items())))


def euler_phi(n: int) -> int:
    """Order of U(Z_n); euler_phi(1) == 1."""
    if n < 1:
        raise OutOfRange(f"euler_phi needs n >= 1, got {n}")
    if n == 1:
        return 1
    result = 1
    for p, e in factorize(n):
        result *= (p - 1) * p ** (e - 1)
    return result


def iterated_phi(n: int, k: int) -> int:
    """Applies euler_phi k times; k == 0 returns n unchanged."""
    if n < 1:
        raise OutOfRange(f"iterated_phi needs n >= 1, got {n}")
    if k < 0:
        raise OutOfRange(f"iteration count must be non-negative, got {k}")
    for _ in range(k):
        n = euler_phi(n)
    return n


def mod_pow(base: int, exp: int, m: int) -> int:
    """base**exp mod m by square-and-multiply, result in [0, m)."""
    if m < 2:
        raise OutOfRange(f"modulus must be >= 2, got {m}")
    if exp < 0:
        raise OutOfRange(f"exponent must be non-negative, got {exp}")
    return pow(base, exp, m)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Returns (g, x, y) with a*x + b*y == g == gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def mod_inverse(a: int, m: int) -> int:
    """
    Inverse of a modulo m via the extended Euclidean algorithm.

    Raises:
        NotInvertible: if gcd(a, m) != 1.
    """
    if m < 2:
        raise OutOfRange(f"modulus must be >= 2, got {m}")
    g, x, _ = extended_gcd(a % m, m)
    if g != 1:
        raise NotInvertible(f"{a} has no inverse modulo {m} (gcd {g})")
    return x % m


def crt_solve(congruences: Sequence[Tuple[int, int]]) -> int:
    """
    Solves x = r_i (mod m_i) for pairwise coprime moduli.

    Args:
        congruences: (residue, modulus) pairs, every modulus >= 2.

    Returns:
        int: The unique solution in [0, prod(m_i)).
    """
    if not congruences:
        raise OutOfRange("crt_solve needs at least one congruence")
    moduli = [m for _, m in congruences]
    for m in moduli:
        if m < 2:
            raise OutOfRange(f"CRT modulus must be >= 2, got {m}")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if gcd(moduli[i], moduli[j]) != 1:
                raise ModuliNotCoprime(f"moduli {moduli[i]} and {moduli[j]} are not coprime")

    product = 1
    for m in moduli:
        product *= m
    x = 0
    for r, m in congruences:
        partial = product // m
        x += r * partial * mod_inverse(partial, m)
    return x % product


def is_cyclic_unit_group(n: int) -> bool:
    """True iff n is 1, 2, 4, p**k or 2*p**k for an odd prime p."""
    if n < 1:
        return False
    if n in (1, 2, 4):
        return True
    if n % 4 == 0:
        return False
    odd = n // 2 if n % 2 == 0 else n
    if odd == 1:
        return False
    return len(factorize(odd)) == 1


def multiplicative_order(a: int, m: int) -> int:
    """
    Order of a in U(Z_m).

    Raises:
        NotInvertible: if a is not a unit modulo m.
    """
    if m < 1:
        raise OutOfRange(f"modulus must be >= 1, got {m}")
    if m == 1:
        return 1
    if gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not a unit modulo {m}")
    order = euler_phi(m)
    if order == 1:
        return 1
    for q, _ in factorize(order):
        while order % q == 0 and pow(a, order // q, m) == 1:
            order //= q
    return order


def is_primitive_root(g: int, n: int) -> bool:
    if n <= 2:
        return g % n == 1 % n
    if gcd(g, n) != 1:
        return False
    phi = euler_phi(n)
    return all(pow(g, phi // q, n) != 1 for q in factorize(phi).primes)


def find_primitive_root(n: int) -> int:
    """
    Smallest generator of the cyclic group U(Z_n).

    Args:
        n: Modulus whose unit group is cyclic.

    Returns:
        int: The smallest g in [2, n) of order φ(n), or 1 for n in {1, 2}.

    Raises:
        NotCyclic: if U(Z_n) is not cyclic.
    """
    if not is_cyclic_unit_group(n):
        raise NotCyclic(f"U(Z_{n}) is not cyclic")
    if n <= 2:
        return 1
    phi = euler_phi(n)
    prime_divisors = factorize(phi).primes if phi > 1 else ()
    for g in range(2, n):
        if gcd(g, n) != 1:
            continue
        if all(pow(g, phi // q, n) != 1 for q in prime_divisors):
            return g
    raise NotCyclic(f"no primitive root found modulo {n}")


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean numpy mask of primes in [0, limit]."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for i in range(2, isqrt(limit) + 1):
        if mask[i]:
            mask[i * i::i] = False
    return mask


def totient_sieve(limit: int) -> np.ndarray:
    """
    φ(k) for every k in [0, limit] as an int64 numpy array (phi[0] == 0).

    Args:
        limit: Largest argument to tabulate.

    Returns:
        np.ndarray: The totient table.
    """
    if limit < 1:
        raise OutOfRange(f"sieve limit must be >= 1, got {limit}")
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in np.nonzero(prime_sieve(limit))[0]:
        phi[p::p] -= phi[p::p] // p
    return phi


def cyclic_unit_group_mask(limit: int) -> np.ndarray:
    """Vectorized is_cyclic_unit_group over [0, limit]."""
    primes = np.nonzero(prime_sieve(limit))[0]
    smallest = np.zeros(limit + 1, dtype=np.int64)
    largest = np.zeros(limit + 1, dtype=np.int64)
    for p in primes[::-1]:
        smallest[p::p] = p
    for p in primes:
        largest[p::p] = p
    prime_power = (smallest == largest) & (smallest > 0)

    k = np.arange(limit + 1)
    mask = np.zeros(limit + 1, dtype=bool)
    odd = (k % 2 == 1) & (k >= 3)
    mask[odd] = prime_power[odd]
    twice_odd = (k % 4 == 2) & (k >= 6)
    mask[twice_odd] = prime_power[k[twice_odd] // 2]
    for small in (1, 2, 4):
        if small <= limit:
            mask[small] = True
    return mask
