"""Shared test oracles, independent of the package under test.

The multiplication oracle works on 16-bit limbs with shift-and-subtract
reduction: no single big-integer multiply or divide anywhere, so it cannot
share a failure mode with the arithmetic it checks.
"""

_BASE = 1 << 16


def _limbs(n):
    out = []
    while n:
        out.append(n % _BASE)
        n //= _BASE
    return out or [0]


def schoolbook_mul(a, b):
    xs, ys = _limbs(a), _limbs(b)
    out = [0] * (len(xs) + len(ys))
    for i, x in enumerate(xs):
        carry = 0
        for j, y in enumerate(ys):
            cur = out[i + j] + x * y + carry
            out[i + j] = cur % _BASE
            carry = cur // _BASE
        k = i + len(ys)
        while carry:
            cur = out[k] + carry
            out[k] = cur % _BASE
            carry = cur // _BASE
            k += 1
    value = 0
    for d in reversed(out):
        value = value * _BASE + d
    return value


def shift_subtract_mod(n, m):
    if n < m:
        return n
    shifted = m
    while shifted <= n - shifted:
        shifted += shifted
    while n >= m:
        if n >= shifted:
            n -= shifted
        shifted >>= 1
    return n


def oracle_mulmod(a, b, m):
    return shift_subtract_mod(schoolbook_mul(a, b), m)
