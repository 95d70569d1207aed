import logging
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from core.elgamal_u2 import (
    U2Case,
    U2Ciphertext,
    U2PublicKey,
    check_u2_public,
    is_u2_message,
    u2_decode_message,
    u2_decrypt,
    u2_encode_message,
    u2_encrypt,
    u2_find_generator_exponent,
    u2_generator_power,
    u2_keygen,
    u2_message_space,
    validate_case2_modulus,
)
from core.errors import (
    ComponentOutOfRange,
    DegenerateGroup,
    InvalidCase2Modulus,
    MessageNotInU2,
    MessageOutOfRange,
    OutOfRange,
    TowerNotCyclic,
)


KEYS_PER_MODULUS = 10
MESSAGE_SAMPLE = 100


def _keys_for(moduli, case, rng, per_modulus):
    keys = []
    for n in moduli:
        try:
            keys.extend(u2_keygen(n, case, rng) for _ in range(per_modulus))
        except (TowerNotCyclic, DegenerateGroup):
            continue
    return keys


def case1_keys(limit, rng, per_modulus=KEYS_PER_MODULUS):
    return _keys_for(range(3, limit + 1), U2Case.CASE1, rng, per_modulus)


def case2_keys(max_p, rng, per_modulus=KEYS_PER_MODULUS):
    return _keys_for((3 * p for p in sympy.primerange(5, max_p + 1)), U2Case.CASE2, rng, per_modulus)


def sample_messages(pub, rng):
    space = u2_message_space(pub)
    return space if len(space) <= MESSAGE_SAMPLE else rng.sample(space, MESSAGE_SAMPLE)


class TestKeygen:
    def test_generator_exponent_for_11(self):
        seen = set()
        for seed in range(40):
            theta1, s = u2_find_generator_exponent(11, random.Random(seed))
            assert theta1 == 2
            seen.add(s)
        assert seen == {3, 7}

    def test_worked_example(self):
        key = u2_keygen(11, s=3, a=3)
        assert (key.n, key.theta1, key.s, key.f) == (11, 2, 3, 7)
        assert key.theta == 8

    def test_private_exponent_range(self, rng):
        for _ in range(20):
            key = u2_keygen(11, rng=rng)
            assert 2 <= key.a <= key.phi2 - 1
        with pytest.raises(OutOfRange):
            u2_keygen(11, s=3, a=4)
        with pytest.raises(OutOfRange):
            u2_keygen(11, s=9, a=3)

    def test_non_cyclic_levels(self):
        with pytest.raises(TowerNotCyclic) as info:
            u2_keygen(8)
        assert info.value.level == "n"
        with pytest.raises(TowerNotCyclic) as info:
            u2_keygen(13)
        assert info.value.level == "φ(n)"

    def test_degenerate_group(self):
        # φ²(5) = 2 leaves [2, φ² - 1] empty
        with pytest.raises(DegenerateGroup):
            u2_keygen(5)

    @pytest.mark.parametrize("n, p", [(15, 5), (21, 7), (33, 11), (3 * 101, 101)])
    def test_case2_modulus_accepted(self, n, p):
        assert validate_case2_modulus(n) == p

    @pytest.mark.parametrize("n", [9, 35, 45, 3 * 25, 6])
    def test_case2_modulus_rejected(self, n):
        with pytest.raises(InvalidCase2Modulus):
            validate_case2_modulus(n)
        with pytest.raises(InvalidCase2Modulus):
            u2_keygen(n, U2Case.CASE2)

    @pytest.mark.parametrize("n", [15, 21])
    def test_case2_degenerate(self, n):
        with pytest.raises(DegenerateGroup):
            u2_keygen(n, U2Case.CASE2)

    def test_case2_key(self):
        key = u2_keygen(33, U2Case.CASE2, s=3, a=3)
        assert (key.p, key.prime_modulus, key.phi, key.phi2) == (11, 11, 10, 4)
        assert key.case is U2Case.CASE2
        check_u2_public(key.public)

    def test_check_public_rejects_bad_theta1(self):
        with pytest.raises(OutOfRange):
            check_u2_public(U2PublicKey(11, 3, 3, 7))
        with pytest.raises(OutOfRange):
            check_u2_public(U2PublicKey(11, 2, 5, 7))


class TestEncryption:
    def test_worked_example(self):
        key = u2_keygen(11, s=3, a=3)
        c = u2_encrypt(key.public, 7, k=3)
        assert (c.q, c.delta) == (7, 2)
        assert u2_decrypt(key, c) == 7

    def test_nonce_range(self):
        key = u2_keygen(11, s=3, a=3)
        with pytest.raises(OutOfRange):
            u2_encrypt(key.public, 7, k=1)
        with pytest.raises(OutOfRange):
            u2_encrypt(key.public, 7, k=4)

    @pytest.mark.parametrize("m", [3, 10, 0, 11, -2])
    def test_message_outside_group(self, m):
        key = u2_keygen(11, s=3, a=3)
        with pytest.raises(MessageNotInU2):
            u2_encrypt(key.public, m)
        with pytest.raises(MessageOutOfRange):
            u2_encrypt(key.public, m)

    @pytest.mark.parametrize("c", [U2Ciphertext(2, 7), U2Ciphertext(10, 7), U2Ciphertext(7, 0), U2Ciphertext(7, 11)])
    def test_decrypt_rejects_components(self, c):
        with pytest.raises(ComponentOutOfRange):
            u2_decrypt(u2_keygen(11, s=3, a=3), c)

    def test_gamma_only_logged(self, caplog):
        key = u2_keygen(11, s=3, a=3)
        with caplog.at_level(logging.DEBUG, logger="core.elgamal_u2"):
            c = u2_encrypt(key.public, 7, k=3)
        assert "gamma=" in caplog.text
        assert not hasattr(c, "gamma")

    def test_case1_round_trips(self, rng):
        for key in case1_keys(200, rng):
            pub = key.public
            for m in sample_messages(pub, rng):
                assert u2_decrypt(key, u2_encrypt(pub, m, rng)) == m, (key.n, m)

    def test_case2_round_trips(self, rng):
        keys = case2_keys(61, rng)
        assert sorted({key.p for key in keys})[:3] == [11, 19, 23]
        assert len(keys) % KEYS_PER_MODULUS == 0
        for key in keys:
            pub = key.public
            for m in sample_messages(pub, rng):
                assert u2_decrypt(key, u2_encrypt(pub, m, rng)) == m, (key.n, m)

    @given(st.sampled_from([11, 23, 47, 81, 83, 162, 1459]), st.data())
    @settings(max_examples=60, deadline=None)
    def test_round_trip_any_nonce(self, n, data):
        key = u2_keygen(n, rng=random.Random(n))
        pub = key.public
        space = u2_message_space(pub)
        m = space[data.draw(st.integers(0, len(space) - 1))]
        k = data.draw(st.integers(2, pub.phi2 - 1))
        assert u2_decrypt(key, u2_encrypt(pub, m, k=k)) == m


class TestMessageSpace:
    def test_case1_example(self):
        pub = u2_keygen(11, s=3, a=3).public
        assert u2_message_space(pub) == (2, 6, 7, 8)
        assert [u2_encode_message(pub, i) for i in range(4)] == [2, 6, 7, 8]
        assert u2_decode_message(pub, 7) == 2

    def test_case2_example(self):
        pub = u2_keygen(33, U2Case.CASE2, s=3, a=3).public
        assert u2_message_space(pub) == (2, 8, 17, 29)
        for m in u2_message_space(pub):
            assert m % 3 == 2
            assert is_u2_message(pub, m)
        assert not is_u2_message(pub, 13)

    def test_encode_range(self):
        pub = u2_keygen(11, s=3, a=3).public
        with pytest.raises(OutOfRange):
            u2_encode_message(pub, 4)
        with pytest.raises(MessageNotInU2):
            u2_decode_message(pub, 3)

    def test_generator_powers_cover_message_space(self, rng):
        for key in case1_keys(150, rng, 1) + case2_keys(61, rng, 1):
            pub = key.public
            powers = {u2_generator_power(pub, i) for i in range(pub.phi2)}
            assert powers == set(u2_message_space(pub)), pub.n

    def test_generator_power_rejects_negative(self):
        with pytest.raises(OutOfRange):
            u2_generator_power(u2_keygen(11, s=3, a=3), -1)
