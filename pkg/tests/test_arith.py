import math
import random

import pytest

from carmichael.arith import gcd, invmod, iroot, lcm, mulmod, powmod

# The independent schoolbook/shift-subtract oracle lives in support.py and
# was written before mulmod; see its module docstring.
from support import oracle_mulmod


def test_mulmod_zero_absorbs():
    assert mulmod(0, 561, 10**9) == 0


def test_mulmod_identity():
    assert mulmod(561, 1, 10**9) == 561


def test_mulmod_against_frozen_oracle_value():
    # Computed by oracle_mulmod above before mulmod existed.
    assert oracle_mulmod(10**15 + 7, 10**15 + 9, 10**16 + 61) == 9900000000000063
    assert mulmod(10**15 + 7, 10**15 + 9, 10**16 + 61) == 9900000000000063


@pytest.mark.parametrize("m", [0, 1])
def test_mulmod_rejects_degenerate_modulus(m):
    with pytest.raises(ValueError):
        mulmod(1, 1, m)


def test_mulmod_matches_oracle_100k_random_trials():
    rng = random.Random(0xC0FFEE)
    for _ in range(100_000):
        m = rng.randrange(2, 1 << 126)
        a = rng.randrange(m)
        b = rng.randrange(m)
        assert mulmod(a, b, m) == oracle_mulmod(a, b, m)


def test_powmod_carmichael_definition_cases():
    assert powmod(2, 560, 561) == 1  # gcd(2, 561) = 1
    assert powmod(3, 1104, 1105) == 1  # gcd(3, 1105) = 1
    assert powmod(7, 0, 13) == 1
    assert powmod(0, 0, 13) == 1


def test_powmod_is_multiplicative_in_the_exponent():
    rng = random.Random(7)
    for _ in range(500):
        m = rng.randrange(2, 1 << 64)
        b = rng.randrange(m)
        e1 = rng.randrange(1 << 30)
        e2 = rng.randrange(1 << 30)
        assert powmod(b, e1 + e2, m) == mulmod(
            powmod(b, e1, m), powmod(b, e2, m), m
        )


def test_gcd_lcm_small_cases():
    assert gcd(2, 10) == 2
    assert lcm(2, 10) == 10
    assert gcd(0, 7) == 7
    # lcm over the p-1 values of 561 = 3*11*17, and the Korselt condition
    l = lcm(lcm(2, 10), 16)
    assert l == 80
    assert 560 % l == 0


def test_invmod_examples():
    assert invmod(3, 10) == 7
    assert invmod(33 % 10, 10) == 7  # prefix {3,11} of 561: P = 33
    assert invmod(4, 10) is None


def test_invmod_by_exhaustive_scan():
    for m in (10, 12, 97, 561):
        for a in range(m):
            expected = None
            for x in range(1, m):
                if a * x % m == 1:
                    expected = x
                    break
            assert invmod(a, m) == expected


def test_invmod_property_random():
    rng = random.Random(11)
    for _ in range(5_000):
        m = rng.randrange(2, 1 << 80)
        a = rng.randrange(1, m)
        x = invmod(a, m)
        if x is None:
            assert math.gcd(a, m) != 1
        else:
            assert 0 < x < m
            assert mulmod(a % m, x, m) == 1


def test_iroot_examples():
    assert iroot(10**16, 2) == 10**8
    assert iroot(9463098235353841, 2) == 97278457
    assert 97278457**2 <= 9463098235353841 < 97278458**2
    assert iroot(7, 3) == 1
    assert iroot(1000, 3) == 10
    assert iroot(999, 3) == 9


def test_iroot_rejects_zero_index():
    with pytest.raises(ValueError):
        iroot(5, 0)


def test_iroot_bracketing_100k_random():
    rng = random.Random(31337)
    for _ in range(100_000):
        n = rng.randrange(1 << 120)
        k = rng.randrange(1, 40)
        r = iroot(n, k)
        assert r**k <= n < (r + 1) ** k


def test_quotient_remainder_identity():
    rng = random.Random(5)
    for _ in range(20_000):
        a = rng.randrange(1 << 126)
        b = rng.randrange(1, 1 << 126)
        q, r = divmod(a, b)
        assert a == q * b + r
        assert 0 <= r < b
