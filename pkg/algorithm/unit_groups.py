import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from core.errors import EnumerationTooLarge, NotInSubgroup, NotInU2, NotInU3, OutOfRange, TowerNotCyclic
from .discrete_log import discrete_log
from .number_theory import euler_phi, find_primitive_root, is_cyclic_unit_group

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_LIMIT = 2**20
# Levels whose group order is at most this get a full log table at build time.
DEFAULT_LOG_TABLE_LIMIT = 2**17

LEVEL_NAMES = ("n", "φ(n)", "φ²(n)")


@dataclass(frozen=True)
class GroupElement:
    """
    An element of U³(Z_n) together with its image under the isomorphism f.

    Obtain instances from ``UnitGroupTower.element`` or ``UnitGroupTower.from_residue``;
    ``residue`` is f(value) in Z_{φ³(n)}.
    """
    value: int
    tower: "UnitGroupTower" = field(compare=False, repr=False)
    residue: int = field(compare=False, repr=False)
    modulus: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "modulus", self.tower.n)

    def __int__(self) -> int:
        return self.value


class UnitGroupTower:
    """
    A modulus n whose unit groups U(Z_n), U(Z_φ(n)) and U(Z_φ²(n)) are all
    cyclic, with the smallest generator g1, g2, g3 of each level and the
    generator g of U³(Z_n).

    Instances are immutable after ``build_tower`` returns; the per-level log
    tables are filled there and only read afterwards.
    """

    def __init__(self, n: int, log_table_limit: int = DEFAULT_LOG_TABLE_LIMIT):
        if n < 5:
            raise OutOfRange(f"a tower needs n >= 5, got {n}")
        self.n = n
        self.phi1 = euler_phi(n)
        self.phi2 = euler_phi(self.phi1)
        self.phi3 = euler_phi(self.phi2)

        for name, modulus in zip(LEVEL_NAMES, (n, self.phi1, self.phi2)):
            if not is_cyclic_unit_group(modulus):
                raise TowerNotCyclic(name, modulus)

        self.g1 = find_primitive_root(n)
        self.g2 = find_primitive_root(self.phi1)
        self.g3 = find_primitive_root(self.phi2)
        self.g = pow(self.g1, pow(self.g2, self.g3, self.phi1), n)

        # (base, modulus, order) per level
        self._levels: Tuple[Tuple[int, int, int], ...] = (
            (self.g1, n, self.phi1),
            (self.g2, self.phi1, self.phi2),
            (self.g3, self.phi2, self.phi3),
        )
        self._log_tables: List[Optional[Dict[int, int]]] = [
            self._power_table(base, modulus, order) if order <= log_table_limit else None
            for base, modulus, order in self._levels
        ]
        self.identity = self.from_residue(0)
        self.generator = self.from_residue(1 % self.phi3)

        logger.info(f"Built tower n={n}: phi={self.phi1}, phi2={self.phi2}, phi3={self.phi3}, "
                    f"g1={self.g1}, g2={self.g2}, g3={self.g3}, g={self.g}")

    @staticmethod
    def _power_table(base: int, modulus: int, order: int) -> Dict[int, int]:
        table = {}
        x = 1 % modulus
        for e in range(order):
            table[x] = e
            x = x * base % modulus
        return table

    def __eq__(self, other) -> bool:
        return isinstance(other, UnitGroupTower) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("UnitGroupTower", self.n))

    def __repr__(self) -> str:
        return (f"UnitGroupTower(n={self.n}, phi=({self.phi1}, {self.phi2}, {self.phi3}), "
                f"g1={self.g1}, g2={self.g2}, g3={self.g3}, g={self.g})")

    def level_log(self, level: int, value: int) -> int:
        """
        Discrete log of ``value`` to the generator of tower level 0, 1 or 2.

        Raises:
            NotInSubgroup: if value is not a unit at that level.
        """
        base, modulus, order = self._levels[level]
        table = self._log_tables[level]
        if table is not None:
            try:
                return table[value % modulus]
            except KeyError:
                raise NotInSubgroup(f"{value} is not a unit modulo {modulus}") from None
        if gcd(value, modulus) != 1:
            raise NotInSubgroup(f"{value} is not a unit modulo {modulus}")
        return discrete_log(base, value, modulus, order)

    def from_residue(self, t: int) -> GroupElement:
        """f⁻¹(t) as an element, for t already reduced into [0, φ³(n))."""
        e2 = pow(self.g3, t, self.phi2)
        e1 = pow(self.g2, e2, self.phi1)
        return GroupElement(pow(self.g1, e1, self.n), self, t)

    def element(self, value: Union[int, GroupElement]) -> GroupElement:
        """Validates value as a member of U³(Z_n) and wraps it."""
        if isinstance(value, GroupElement):
            if value.modulus != self.n:
                raise NotInU3(f"element of U³(Z_{value.modulus}) used with tower n={self.n}")
            return value
        return GroupElement(value, self, iso_f(self, value))


@lru_cache(maxsize=512)
def build_tower(n: int, log_table_limit: int = DEFAULT_LOG_TABLE_LIMIT) -> UnitGroupTower:
    """
    Builds and validates the totient tower of n.

    Args:
        n: Modulus >= 5.
        log_table_limit: Levels with order up to this get precomputed log tables.

    Returns:
        UnitGroupTower: The validated tower.

    Raises:
        TowerNotCyclic: naming the first level whose unit group is not cyclic.
    """
    return UnitGroupTower(n, log_table_limit)


def enumerate_u_k(n: int, k: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> FrozenSet[int]:
    """
    Lists U^k(Z_n) for k in {1, 2, 3}.

    U² is {g1^i : gcd(i, φ(n)) = 1} and U³ is
    {g1^(g2^i mod φ(n)) : gcd(i, φ²(n)) = 1}.

    Raises:
        TowerNotCyclic: if a level up to k is not cyclic.
        EnumerationTooLarge: if φ(n) exceeds ``limit``.
    """
    if k not in (1, 2, 3):
        raise OutOfRange(f"k must be 1, 2 or 3, got {k}")
    if n < 2:
        raise OutOfRange(f"enumeration needs n >= 2, got {n}")
    moduli = [n]
    for _ in range(k - 1):
        moduli.append(euler_phi(moduli[-1]))
    for name, modulus in zip(LEVEL_NAMES, moduli):
        if not is_cyclic_unit_group(modulus):
            raise TowerNotCyclic(name, modulus)

    phi = euler_phi(n)
    if phi > limit:
        raise EnumerationTooLarge(f"φ({n}) = {phi} exceeds the enumeration limit {limit}")

    if k == 1:
        return frozenset(a for a in range(1, n) if gcd(a, n) == 1)
    g1 = find_primitive_root(n)
    if k == 2:
        return frozenset(pow(g1, i, n) for i in range(phi) if gcd(i, phi) == 1)
    phi2 = euler_phi(phi)
    g2 = find_primitive_root(phi)
    return frozenset(pow(g1, pow(g2, i, phi), n) for i in range(phi2) if gcd(i, phi2) == 1)


def is_u2_member(tower: UnitGroupTower, x: int) -> bool:
    if not 0 <= x < tower.n or gcd(x, tower.n) != 1:
        return False
    return gcd(tower.level_log(0, x), tower.phi1) == 1


def iso_f(tower: UnitGroupTower, a: int) -> int:
    """
    f(a) = log_g3(log_g2(log_g1(a) mod n) mod φ(n)) mod φ²(n).

    Args:
        tower: The tower of n.
        a: Element of U³(Z_n).

    Returns:
        int: f(a) in [0, φ³(n)).

    Raises:
        NotInU3: if any inner log leaves the next unit group.
    """
    a = int(a)
    if not 0 <= a < tower.n or gcd(a, tower.n) != 1:
        raise NotInU3(f"{a} is not a unit modulo {tower.n}")
    e1 = tower.level_log(0, a)
    if gcd(e1, tower.phi1) != 1:
        raise NotInU3(f"{a} is not in U²(Z_{tower.n})")
    e2 = tower.level_log(1, e1)
    if gcd(e2, tower.phi2) != 1:
        raise NotInU3(f"{a} is in U²(Z_{tower.n}) but not in U³(Z_{tower.n})")
    return tower.level_log(2, e2)


def is_u3_member(tower: UnitGroupTower, x: int) -> bool:
    try:
        iso_f(tower, x)
    except NotInU3:
        return False
    return True


def iso_f_inv(tower: UnitGroupTower, t: int) -> int:
    """g1^(g2^(g3^t mod φ²(n)) mod φ(n)) mod n for t in [0, φ³(n))."""
    if not 0 <= t < tower.phi3:
        raise OutOfRange(f"{t} is outside Z_{tower.phi3}")
    return tower.from_residue(t).value


def u3_generator(tower: UnitGroupTower) -> int:
    """The generator g1^(g2^g3 mod φ(n)) mod n of U³(Z_n); f maps it to 1."""
    return tower.g


def iso_table(tower: UnitGroupTower, limit: int = DEFAULT_ENUMERATION_LIMIT) -> List[Tuple[int, int]]:
    """(element, f(element)) for all of U³(Z_n), sorted by element."""
    if tower.phi3 > limit:
        raise EnumerationTooLarge(f"|U³(Z_{tower.n})| = {tower.phi3} exceeds the limit {limit}")
    return sorted((tower.from_residue(t).value, t) for t in range(tower.phi3))


def op_oplus(tower: UnitGroupTower, x: int, y: int) -> int:
    """
    x ⊕ y = x^(log_g1 y) mod n on U²(Z_n).

    Raises:
        NotInU2: if x or y is outside U²(Z_n).
    """
    x, y = int(x), int(y)
    for v in (x, y):
        if not is_u2_member(tower, v):
            raise NotInU2(f"{v} is not in U²(Z_{tower.n})")
    return pow(x, tower.level_log(0, y), tower.n)


def op_otimes(tower: UnitGroupTower, x: Union[int, GroupElement],
              y: Union[int, GroupElement]) -> GroupElement:
    """x ⊗ y = f⁻¹(f(x) + f(y))."""
    x, y = tower.element(x), tower.element(y)
    return tower.from_residue((x.residue + y.residue) % tower.phi3)


def op_pow(tower: UnitGroupTower, x: Union[int, GroupElement], e: int) -> GroupElement:
    """x^e = f⁻¹(e·f(x)) for e >= 0."""
    if e < 0:
        raise OutOfRange(f"exponent must be non-negative, got {e}")
    x = tower.element(x)
    return tower.from_residue(e * x.residue % tower.phi3)


def op_inverse(tower: UnitGroupTower, x: Union[int, GroupElement]) -> GroupElement:
    """⊗-inverse: f⁻¹(-f(x) mod φ³(n))."""
    x = tower.element(x)
    return tower.from_residue(-x.residue % tower.phi3)
