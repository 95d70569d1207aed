import random
from math import gcd

import pytest

from algorithm.discrete_log import DlogMethod, discrete_log
from algorithm.number_theory import multiplicative_order
from core.errors import NotInSubgroup, OutOfRange

ALL_METHODS = list(DlogMethod)


@pytest.mark.parametrize("method", ALL_METHODS + [None])
@pytest.mark.parametrize("g, target, m, order, expected", [
    (2, 7, 11, 10, 7),
    (3, 7, 10, 4, 3),
    (2, 1, 11, 10, 0),
    (5, 1, 54, 18, 0),
])
def test_known_logs(method, g, target, m, order, expected):
    assert discrete_log(g, target, m, order, method) == expected


@pytest.mark.parametrize("method", ALL_METHODS)
def test_target_outside_subgroup(method):
    # 2 has order 3 modulo 7: its powers are 1, 2, 4
    with pytest.raises(NotInSubgroup):
        discrete_log(2, 3, 7, 3, method)


def test_wrong_order_rejected():
    with pytest.raises(OutOfRange):
        discrete_log(3, 1, 7, 2)


def test_trivial_group():
    assert discrete_log(1, 1, 7, 1) == 0
    with pytest.raises(NotInSubgroup):
        discrete_log(1, 2, 7, 1)


def test_method_by_name():
    assert discrete_log(2, 7, 11, 10, "bsgs") == 7
    assert discrete_log(2, 7, 11, 10, "pohlig-hellman") == 7


def test_methods_agree_on_random_instances():
    rng = random.Random(7)
    for _ in range(200):
        m = rng.randrange(3, 10**5)
        g = rng.randrange(2, m)
        while gcd(g, m) != 1:
            g = rng.randrange(2, m)
        order = multiplicative_order(g, m)
        e = rng.randrange(order)
        target = pow(g, e, m)
        expected = discrete_log(g, target, m, order, DlogMethod.BRUTE_FORCE)
        assert expected == e
        assert discrete_log(g, target, m, order, DlogMethod.BSGS) == expected
        assert discrete_log(g, target, m, order, DlogMethod.POHLIG_HELLMAN) == expected


def test_prime_power_order():
    # 2 generates U(Z_{3^10}), whose order is 2 * 3^9
    m = 3**10
    order = 2 * 3**9
    target = pow(2, 12345, m)
    for method in ALL_METHODS:
        assert discrete_log(2, target, m, order, method) == 12345


def test_pohlig_hellman_on_smooth_large_group():
    p = 2**61 - 1
    g = 37
    order = multiplicative_order(g, p)
    e = 1234567890123456789 % order
    assert discrete_log(g, pow(g, e, p), p, order) == e
