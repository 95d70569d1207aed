import logging
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from core.elgamal_classic import (
    ClassicCiphertext,
    classic_decrypt,
    classic_encrypt,
    classic_keygen,
)
from core.errors import ComponentOutOfRange, MessageOutOfRange, NotPrime, OutOfRange


def test_worked_example():
    key = classic_keygen(11, a=3)
    assert (key.alpha, key.alpha_a) == (2, 8)
    c = classic_encrypt(key.public, 9, k=4)
    assert (c.gamma, c.delta) == (5, 3)
    assert classic_decrypt(key, c) == 9


def test_zero_message_warns(caplog):
    key = classic_keygen(11, a=3)
    with caplog.at_level(logging.WARNING, logger="core.elgamal_classic"):
        c = classic_encrypt(key.public, 0, k=4)
    assert c.delta == 0
    assert "m = 0" in caplog.text
    assert classic_decrypt(key, c) == 0


@pytest.mark.parametrize("p", [1, 9, 15, 100])
def test_rejects_composite(p):
    with pytest.raises(NotPrime):
        classic_keygen(p)


@pytest.mark.parametrize("p", [2, 3])
def test_rejects_tiny_prime(p):
    with pytest.raises(OutOfRange):
        classic_keygen(p)


def test_parameter_ranges():
    key = classic_keygen(11, a=3)
    with pytest.raises(OutOfRange):
        classic_keygen(11, a=10)
    with pytest.raises(MessageOutOfRange):
        classic_encrypt(key.public, 11)
    with pytest.raises(MessageOutOfRange):
        classic_encrypt(key.public, -1)
    with pytest.raises(OutOfRange):
        classic_encrypt(key.public, 5, k=0)


@pytest.mark.parametrize("c", [ClassicCiphertext(0, 3), ClassicCiphertext(11, 3), ClassicCiphertext(5, 11)])
def test_decrypt_rejects_components(c):
    with pytest.raises(ComponentOutOfRange):
        classic_decrypt(classic_keygen(11, a=3), c)


def test_exhaustive_small_prime():
    p = 13
    for a in range(1, p - 1):
        key = classic_keygen(p, a=a)
        for k in range(1, p - 1):
            for m in range(p):
                assert classic_decrypt(key, classic_encrypt(key.public, m, k=k)) == m


@pytest.mark.slow
def test_random_keys_for_primes_below_500(rng):
    for p in sympy.primerange(5, 500):
        for _ in range(20):
            key = classic_keygen(p, rng)
            m = rng.randrange(p)
            assert classic_decrypt(key, classic_encrypt(key.public, m, rng)) == m


@given(st.sampled_from([5, 7, 101, 7919, 2**31 - 1, 2**61 - 1]), st.data())
@settings(max_examples=100, deadline=None)
def test_round_trip(p, data):
    a = data.draw(st.integers(1, p - 2))
    k = data.draw(st.integers(1, p - 2))
    m = data.draw(st.integers(0, p - 1))
    key = classic_keygen(p, random.Random(0), a=a)
    assert classic_decrypt(key, classic_encrypt(key.public, m, k=k)) == m
