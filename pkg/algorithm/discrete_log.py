import logging
from enum import Enum
from math import isqrt
from typing import Dict, List, Optional, Tuple, Union

from core.errors import NotInSubgroup, OutOfRange
from .number_theory import crt_solve, factorize

logger = logging.getLogger(__name__)

# Orders below this are solved by scanning; larger ones by Pohlig-Hellman.
DEFAULT_BRUTE_FORCE_LIMIT = 2**16


class DlogMethod(Enum):
    BRUTE_FORCE = "brute-force"
    BSGS = "bsgs"
    POHLIG_HELLMAN = "pohlig-hellman"


def _brute_force(g: int, target: int, m: int, order: int) -> int:
    x = 1 % m
    for e in range(order):
        if x == target:
            return e
        x = x * g % m
    raise NotInSubgroup(f"{target} is not a power of {g} modulo {m}")


def _baby_step_giant_step(g: int, target: int, m: int, order: int) -> int:
    """
    Shanks' meet-in-the-middle search with a table of ceil(sqrt(order)) baby steps.
    """
    k = isqrt(order - 1) + 1
    table: Dict[int, int] = {}
    x = 1 % m
    for j in range(k):
        table.setdefault(x, j)
        x = x * g % m

    giant = pow(g, (-k) % order, m)
    y = target
    for i in range(k):
        j = table.get(y)
        if j is not None:
            return (i * k + j) % order
        y = y * giant % m
    raise NotInSubgroup(f"{target} is not a power of {g} modulo {m}")


def _prime_power_log(g: int, target: int, m: int, q: int, e: int) -> int:
    """Log of target in the subgroup of order q**e generated by g, digit by digit."""
    qe = q**e
    gamma = pow(g, q ** (e - 1), m)
    x = 0
    for k in range(e):
        h = pow(pow(g, (-x) % qe, m) * target % m, q ** (e - 1 - k), m)
        if q < DEFAULT_BRUTE_FORCE_LIMIT:
            d = _brute_force(gamma, h, m, q)
        else:
            d = _baby_step_giant_step(gamma, h, m, q)
        x += d * q**k
    return x


def _pohlig_hellman(g: int, target: int, m: int, order: int) -> int:
    congruences: List[Tuple[int, int]] = []
    for q, e in factorize(order):
        qe = q**e
        cofactor = order // qe
        x = _prime_power_log(pow(g, cofactor, m), pow(target, cofactor, m), m, q, e)
        congruences.append((x, qe))
    x = crt_solve(congruences)
    if pow(g, x, m) != target:
        raise NotInSubgroup(f"{target} is not a power of {g} modulo {m}")
    return x


_SOLVERS = {
    DlogMethod.BRUTE_FORCE: _brute_force,
    DlogMethod.BSGS: _baby_step_giant_step,
    DlogMethod.POHLIG_HELLMAN: _pohlig_hellman,
}


def discrete_log(g: int, target: int, m: int, order: int,
                 method: Optional[Union[DlogMethod, str]] = None,
                 brute_force_limit: int = DEFAULT_BRUTE_FORCE_LIMIT) -> int:
    """
    Solves g**e == target (mod m) for e in [0, order).

    Args:
        g: Base, a unit of multiplicative order ``order`` modulo m.
        target: Element of the cyclic group generated by g.
        m: Modulus (>= 1).
        order: Multiplicative order of g.
        method: A DlogMethod (or its string value); None picks brute force
                below ``brute_force_limit`` and Pohlig-Hellman above.
        brute_force_limit: Switch-over order for the automatic choice.

    Returns:
        int: The canonical exponent in [0, order).

    Raises:
        NotInSubgroup: if target is not a power of g.
    """
    if m < 1:
        raise OutOfRange(f"modulus must be >= 1, got {m}")
    if order < 1:
        raise OutOfRange(f"order must be >= 1, got {order}")
    g %= m
    target %= m
    if pow(g, order, m) != 1 % m:
        raise OutOfRange(f"{g}^{order} is not 1 modulo {m}")

    if method is None:
        method = DlogMethod.BRUTE_FORCE if order < brute_force_limit else DlogMethod.POHLIG_HELLMAN
    elif isinstance(method, str):
        method = DlogMethod(method)

    if order == 1:
        if target != 1 % m:
            raise NotInSubgroup(f"{target} is not a power of {g} modulo {m}")
        return 0

    logger.debug(f"discrete_log({g}, {target}, {m}, order={order}) via {method.value}")
    return _SOLVERS[method](g, target, m, order)
