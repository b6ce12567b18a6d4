"""Prime generation, primality testing, factorization, divisors.

Primality policy
----------------
* n < 2**64: Miller-Rabin with the published deterministic base ladder
  (smallest proven base set for each threshold, ending with the first
  twelve primes which are proven correct up to 3.18e23 > 2**64).  These
  answers are unconditionally correct.
* n >= 2**64: Baillie-PSW (strong base-2 Miller-Rabin plus a strong Lucas
  test with Selfridge's parameters).  No BPSW pseudoprime is known; all
  results in this range are flagged as BPSW-attested by callers that
  report them.

Every primality decision on the main enumeration path (numbers below
10**16) falls in the deterministic range.

Factorization is deterministic: trial division by a fixed table of small
primes, then Brent-cycle Pollard rho with polynomial offsets c = 1, 2, 3,
... tried in order, so repeated runs always split composites the same way.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Factorization",
    "prime_sieve",
    "is_prime",
    "factorize",
    "divisors",
    "DivisorCapError",
]

# Segment size for the sieve (odd numbers per block); keeps peak memory
# around tens of MiB no matter how large the limit is.
_SEGMENT_SPAN = 1 << 25

# Deterministic Miller-Rabin base ladder: (bound, bases) means the bases
# are proven sufficient for every n < bound.
_MR_LADDER: tuple[tuple[int, tuple[int, ...]], ...] = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (4_759_123_141, (2, 7, 61)),
    (1_122_004_669_633, (2, 13, 23, 1662803)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)
_BPSW_FLOOR = 1 << 64


def _simple_sieve_array(limit: int) -> np.ndarray:
    """Boolean primality table for 0..limit inclusive."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def prime_sieve(limit: int) -> list[int]:
    """All primes <= limit, ascending.  Segmented above _SEGMENT_SPAN."""
    if limit < 2:
        return []
    if limit <= _SEGMENT_SPAN:
        return np.flatnonzero(_simple_sieve_array(limit)).tolist()

    base = prime_sieve(math.isqrt(limit))
    odd_base = np.array([p for p in base if p > 2], dtype=np.int64)
    primes: list[int] = [2]
    # Sieve odd numbers only, one block at a time.
    for low in range(3, limit + 1, 2 * _SEGMENT_SPAN):
        high = min(low + 2 * _SEGMENT_SPAN, limit + 1)
        count = (high - low + 1) // 2
        mask = np.ones(count, dtype=bool)
        for p in odd_base:
            p = int(p)
            start = max(p * p, ((low + p - 1) // p) * p)
            if start >= high:
                continue
            if start % 2 == 0:
                start += p
            mask[(start - low) // 2 :: p] = False
        primes.extend((low + 2 * np.flatnonzero(mask)).tolist())
    return primes


def smallest_factor_table(limit: int) -> array:
    """Smallest-prime-factor table for odd numbers.

    Entry i describes the odd number 2*i + 1; the value is its smallest
    prime factor, or 0 when 2*i + 1 is prime (or 1).  Built with strided
    numpy writes, largest prime first, so the smallest factor wins.
    """
    size = limit // 2 + 1
    spf = np.zeros(size, dtype=np.int32)
    for p in range(math.isqrt(limit), 2, -1):
        if p % 2 and _is_small_prime(p):
            spf[(p * p) // 2 :: p] = p
    out = array("i")
    out.frombytes(spf.tobytes())
    return out


def _is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if p % q == 0:
            return p == q
    d = 17
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _miller_rabin(n: int, bases: tuple[int, ...]) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge's parameters."""
    if math.isqrt(n) ** 2 == n:
        return False
    d = 5
    while True:
        j = _jacobi(d % n, n)
        if j == 0 and abs(d) != n:
            return False
        if j == -1:
            break
        d = -(d + 2) if d > 0 else -(d - 2)
    p, q = 1, (1 - d) // 4

    k = n + 1
    s = 0
    while k % 2 == 0:
        k //= 2
        s += 1
    # Compute U_k, V_k, Q^k by the binary chain.
    u, v, qk = 1, p, q % n
    for bit in bin(k)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = u * p + v, v * p + u * d
            if u % 2:
                u += n
            if v % 2:
                v += n
            u = u // 2 % n
            v = v // 2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


_TINY_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Primality per the module policy (deterministic below 2**64)."""
    if n < 2:
        return False
    for p in _TINY_PRIMES:
        if n % p == 0:
            return n == p
    if n < _BPSW_FLOOR:
        for bound, bases in _MR_LADDER:
            if n < bound:
                return _miller_rabin(n, bases)
        raise AssertionError("unreachable: ladder covers 2**64")
    return _miller_rabin(n, (2,)) and _strong_lucas(n)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending (prime, exponent) pairs."""

    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p**e
        return n

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def divisor_count(self) -> int:
        c = 1
        for _, e in self.factors:
            c *= e + 1
        return c


# Trial-division table used by factorize(); small enough that a full scan
# is cheap, large enough that rho only ever sees hard cofactors.
_TRIAL_PRIMES: tuple[int, ...] = tuple(
    p for p in range(2, 1024) if _is_small_prime(p)
)


def _brent_rho(n: int) -> int:
    """A nontrivial factor of odd composite n, deterministically.

    Brent's cycle-finding variant of Pollard rho with batched gcds; the
    polynomial offset c walks 1, 2, 3, ... so the split sequence is fixed.
    """
    for c in range(1, 1000):
        y, r, q = 2, 1, 1
        g = 1
        ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            # Batch overshot: redo the last block one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    # Unsplittable by rho across 999 offsets: only plausible for perfect
    # powers of a single prime; peel those off exactly.
    for k in range(2, n.bit_length() + 1):
        r = _iroot_local(n, k)
        if r**k == n:
            return r
    raise ArithmeticError(f"failed to split composite {n}")


def _iroot_local(n: int, k: int) -> int:
    if k == 2:
        return math.isqrt(n)
    r = 1 << -(-n.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r**k > n:
        r -= 1
    return r


def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 2, deterministic."""
    if n < 2:
        raise ValueError(f"cannot factorize {n}")
    found: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        if d in (1, m):  # pragma: no cover - rho always splits composites
            raise ArithmeticError(f"rho returned trivial factor for {m}")
        stack.append(d)
        stack.append(m // d)
    return Factorization(tuple(sorted(found.items())))


class DivisorCapError(Exception):
    """Divisor enumeration would exceed the configured cap."""

    def __init__(self, n: int, count: int, cap: int):
        super().__init__(
            f"{n} has {count} divisors, more than the cap of {cap}"
        )
        self.n = n
        self.count = count
        self.cap = cap


def divisors(f: Factorization, cap: int = 1 << 24) -> list[int]:
    """All positive divisors, ascending."""
    count = f.divisor_count()
    if count > cap:
        raise DivisorCapError(f.value(), count, cap)
    divs = [1]
    for p, e in f.factors:
        powers = [p**i for i in range(1, e + 1)]
        divs += [d * pe for pe in powers for d in divs]
    divs.sort()
    return divs
