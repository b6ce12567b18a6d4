"""Backtracking enumeration of Carmichael numbers below a bound.

Search structure
----------------
Carmichael numbers are built as ascending products of odd primes
p1 < p2 < ... < pd satisfying Korselt's criterion.  A search node is a
prefix (p1, ..., pk) with product P and L = lcm(pi - 1).  Two facts drive
the search:

* Bounding.  The remaining d - k primes all exceed the next prime chosen,
  so the next prime cannot exceed iroot((limit-1)/P, d-k) without forcing
  N >= limit.  This bound never excludes a viable prefix, which is what
  makes the tree exhaustive.

* Pruning.  If any prime s divides both P and L then s divides both N and
  N - 1 for every completion N of the prefix, which is impossible; those
  subtrees are dropped.  Concretely a child prime p is rejected when p
  divides L or when gcd(P, p - 1) > 1, keeping gcd(P, L) = 1 invariant.

Completing a prefix of d - 1 primes means finding every final prime q
with N = P * q < limit Carmichael.  Korselt forces two conditions, each
sufficient to enumerate candidates exhaustively:

* q = P^-1 (mod L), because L must divide N - 1.  Walking that arithmetic
  progression and keeping q with (q - 1) | (P - 1), q prime covers all
  solutions ("basic" completion).

* (q - 1) | (P - 1), because q - 1 divides N - 1 = P(q - 1) + (P - 1).
  Enumerating divisors e of P - 1 and keeping q = e + 1 in the right
  residue class covers all solutions (the large-prime variation,
  `final_primes`).

Either route alone is complete; the default engine picks per node
whichever is cheaper (the progression when it is short, divisors
otherwise) and re-verifies every emitted value against Korselt's
criterion, so a bookkeeping bug cannot silently inflate the catalog.
The "last-two" completion closes a prefix of d - 2 primes with a prime
pair (q, r) via the cofactor identity described at
`last_two_completions`.

Work is partitioned into subtree tasks seeded by the first one or two
prefix primes; results are merged, sorted and checked for duplicates, so
output is identical for any worker count.
"""

from __future__ import annotations

import math
import os
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import ClassVar
from multiprocessing import get_context

from .arith import invmod, iroot
from .catalog import Catalog
from .korselt import CarmichaelEntry
from .primes import factorize, is_prime, prime_sieve, smallest_factor_table

__all__ = [
    "PrefixState",
    "EnumerationConfig",
    "max_factor_count",
    "child_bound",
    "final_primes",
    "last_two_completions",
    "enumerate_carmichael",
    "MODES",
]

MODES = ("basic", "last-prime", "last-two")

# Completion-route tuning: walk the residue progression when it has at
# most this many terms, otherwise enumerate divisors of P - 1.
_SHORT_PROGRESSION = 24
_LONG_PROGRESSION = 512
# Smallest-factor table size for fast divisor-route factorizations.
_SPF_CAP = 1 << 23


def max_factor_count(limit: int) -> int:
    """Largest d with the product of the d smallest odd primes < limit."""
    if limit < 561:
        raise ValueError(f"limit must be at least 561, got {limit}")
    product, d = 1, 0
    p = 3
    while True:
        if product * p >= limit:
            return d
        product *= p
        d += 1
        p = _next_odd_prime(p)


def _next_odd_prime(p: int) -> int:
    q = p + 2
    while not is_prime(q):
        q += 2
    return q


def min_odd_prime_product(count: int) -> int:
    """Product of the `count` smallest odd primes (1 for count <= 0)."""
    product, p = 1, 3
    for _ in range(count):
        product *= p
        p = _next_odd_prime(p)
    return product


@dataclass(frozen=True)
class PrefixState:
    """A partial factorization p1 < ... < pk with cached P and L."""

    primes: tuple[int, ...]
    product: int
    carry_lcm: int
    limit: int
    target_d: int | None = None

    @classmethod
    def make(
        cls, primes: tuple[int, ...], limit: int, target_d: int | None = None
    ) -> "PrefixState":
        if any(p % 2 == 0 for p in primes):
            raise ValueError("prefix primes must be odd")
        if list(primes) != sorted(set(primes)):
            raise ValueError("prefix primes must be strictly ascending")
        product = math.prod(primes)
        if product > limit:
            raise ValueError("prefix product exceeds the limit")
        carry = math.lcm(*(p - 1 for p in primes)) if primes else 1
        return cls(primes, product, carry, limit, target_d)

    @property
    def last(self) -> int:
        return self.primes[-1] if self.primes else 2


def child_bound(prefix: PrefixState, d: int) -> int:
    """Largest admissible next prefix prime for a target of d factors.

    The d - k primes still to be chosen are all at least as large as the
    next one, so the next prime p must satisfy P * p**(d-k) < limit.
    """
    k = len(prefix.primes)
    if not k < d:
        raise ValueError(f"prefix already has {k} primes, target {d}")
    return iroot((prefix.limit - 1) // prefix.product, d - k)


def final_primes(prefix: PrefixState) -> list[int]:
    """All primes q completing the prefix to a Carmichael number < limit.

    The prefix holds d - 1 primes with product P and L = lcm(pi - 1).
    Korselt's criterion forces L | Pq - 1, hence q = P^-1 (mod L), and
    (q - 1) | (P - 1) since Pq - 1 = P(q - 1) + (P - 1); so every valid q
    appears among the divisors e = q - 1 of P - 1 in the right residue
    class.  Each survivor is re-verified before being returned.
    """
    p_product, carry = prefix.product, prefix.carry_lcm
    if math.gcd(p_product, carry) != 1:
        return []
    t = invmod(p_product % carry, carry)
    if t is None:
        return []
    qmax = (prefix.limit - 1) // p_product
    out = []
    for e in _bounded_divisors(factorize(p_product - 1).factors, qmax - 1):
        q = e + 1
        if q <= prefix.last or q % carry != t:
            continue
        if not is_prime(q):
            continue
        if _verified(p_product * q, prefix.primes + (q,)):
            out.append(q)
    out.sort()
    return out


def last_two_completions(prefix: PrefixState) -> list[tuple[int, int]]:
    """All prime pairs q < r completing a prefix of d - 2 primes.

    For N = P*q*r Korselt forces (r - 1) | (Pq - 1); writing the cofactor
    e = (Pq - 1)/(r - 1) and using r > q gives e < Pq/(q - 1), a small
    bound to iterate.  Eliminating r shows (q - 1) must divide
    (P - 1)(P + e), so for each cofactor e the candidates q come from the
    divisors of that product; r follows as (Pq - 1)/e + 1.  When the
    cofactor range is wider than the prime range the roles flip: iterate
    q over primes and take r - 1 from the divisors of Pq - 1.  Both sides
    verify every候 candidate against Korselt before emitting.
    """
    tables = _Tables.for_limit(prefix.limit, len(prefix.primes) + 2)
    return _complete_last_two(
        prefix.primes,
        prefix.product,
        prefix.carry_lcm,
        prefix.limit,
        tables,
        collect_pairs=True,
    )


@dataclass(frozen=True)
class EnumerationConfig:
    limit: int
    d_min: int = 3
    d_max: int | None = None
    completion_mode: str = "last-prime"
    worker_count: int = 1

    def resolved_d_max(self) -> int:
        cap = max_factor_count(self.limit) if self.limit > 561 else 3
        if self.d_max is None:
            return cap
        return self.d_max

    def validate(self) -> None:
        if self.limit < 2:
            raise ValueError("limit must be at least 2")
        if self.completion_mode not in MODES:
            raise ValueError(
                f"completion mode {self.completion_mode!r} not one of {MODES}"
            )
        if self.worker_count < 1:
            raise ValueError("worker count must be positive")
        d_max = self.resolved_d_max()
        if not 3 <= self.d_min <= d_max:
            raise ValueError(
                f"need 3 <= d_min <= d_max, got [{self.d_min}, {d_max}]"
            )
        if self.limit > 561 and d_max > max_factor_count(self.limit):
            raise ValueError(
                f"d_max {d_max} exceeds max_factor_count(limit) ="
                f" {max_factor_count(self.limit)}"
            )


@dataclass
class _Tables:
    """Shared immutable lookup tables for one enumeration run."""

    sieve: list[int]
    sieve_top: int
    spf: object  # array('i'); smallest factor of odd numbers
    spf_limit: int

    _cache: ClassVar[dict[tuple[int, int], "_Tables"]] = {}

    @classmethod
    def for_limit(cls, limit: int, d_min: int = 3) -> "_Tables":
        # The largest sieve-drawn prime is the (d-1)-th, bounded by
        # iroot(limit/P, 2) with P at least the product of the d_min - 2
        # smallest odd primes; every shallower position is bounded lower.
        floor_product = min_odd_prime_product(max(d_min - 2, 1))
        sieve_top = max(iroot(max(limit - 1, 8) // floor_product, 2), 64)
        # Round up to a power of two so nearby limits share tables.
        sieve_top = 1 << sieve_top.bit_length()
        spf_limit = 1 << int(min(_SPF_CAP, max(4096, limit))).bit_length()
        spf_limit = min(spf_limit, _SPF_CAP)
        key = (sieve_top, spf_limit)
        hit = cls._cache.get(key)
        if hit is not None:
            return hit
        tables = cls(
            sieve=prime_sieve(sieve_top),
            sieve_top=sieve_top,
            spf=smallest_factor_table(spf_limit),
            spf_limit=spf_limit,
        )
        if len(cls._cache) > 3:
            cls._cache.clear()
        cls._cache[key] = tables
        return tables


def _spf_factor(n: int, tables: _Tables) -> list[tuple[int, int]]:
    """Factor n via the smallest-factor table (n below its limit)."""
    fac = []
    if n % 2 == 0:
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        fac.append((2, e))
    spf = tables.spf
    while n > 1:
        p = spf[n >> 1] or n
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        fac.append((p, e))
    return fac


def _factor_fast(n: int, tables: _Tables) -> list[tuple[int, int]]:
    if n < tables.spf_limit:
        return _spf_factor(n, tables)
    return list(factorize(n).factors)


def _bounded_divisors(fac, hi: int) -> list[int]:
    """All divisors <= hi of the factorization `fac` (unsorted)."""
    divs = [1] if hi >= 1 else []
    for p, e in fac:
        extra = []
        for d in divs:
            v = d
            for _ in range(e):
                v *= p
                if v > hi:
                    break
                extra.append(v)
        divs += extra
    return divs


def _verified(n: int, primes: tuple[int, ...]) -> bool:
    """Final Korselt re-check on an emission candidate."""
    nm1 = n - 1
    return all(nm1 % (p - 1) == 0 for p in primes)


def _complete_final(
    primes: tuple[int, ...],
    product: int,
    carry: int,
    limit: int,
    tables: _Tables,
    out: list,
    mode: str,
) -> None:
    """Emit every Carmichael P*q < limit extending a d-1 prime prefix.

    gcd(P, L) = 1 holds by construction (pruned during descent), so the
    inverse below always exists.
    """
    rmax = (limit - 1) // product
    p_last = primes[-1]
    if rmax <= p_last:
        return
    t = invmod(product % carry, carry)
    if t is None:
        return
    span = (rmax - t) // carry + 1 if rmax >= t else 0
    if span <= 0:
        return

    if mode == "basic":
        use_progression = True
    elif span <= _SHORT_PROGRESSION:
        use_progression = True
    elif product - 1 < tables.spf_limit:
        use_progression = False
    else:
        use_progression = span <= _LONG_PROGRESSION

    pm1 = product - 1
    if use_progression:
        r = t if t > p_last else t + ((p_last - t) // carry + 1) * carry
        while r <= rmax:
            if pm1 % (r - 1) == 0 and is_prime(r):
                n = product * r
                if _verified(n, primes + (r,)):
                    out.append((n, primes + (r,)))
            r += carry
    else:
        for e in _bounded_divisors(_factor_fast(pm1, tables), rmax - 1):
            q = e + 1
            if q <= p_last or q % carry != t % carry:
                continue
            if not is_prime(q):
                continue
            n = product * q
            if _verified(n, primes + (q,)):
                out.append((n, primes + (q,)))


def _complete_last_two(
    primes: tuple[int, ...],
    product: int,
    carry: int,
    limit: int,
    tables: _Tables,
    out: list | None = None,
    collect_pairs: bool = False,
):
    """Emit every Carmichael P*q*r < limit extending a d-2 prime prefix."""
    pairs: list[tuple[int, int]] = []
    p_last = primes[-1]
    qmax = iroot((limit - 1) // product, 2)
    if qmax <= p_last:
        return pairs if collect_pairs else None
    sieve = tables.sieve
    lo = bisect_right(sieve, p_last)
    hi = bisect_right(sieve, qmax)
    q0 = sieve[lo] if lo < hi else 0

    def emit(q: int, r: int) -> None:
        n = product * q * r
        if _verified(n, primes + (q, r)):
            if collect_pairs:
                pairs.append((q, r))
            else:
                out.append((n, primes + (q, r)))

    bound_e = (product * q0 - 1) // (q0 - 1) if q0 else 0
    # Cofactor-first costs ~bound_e steps, prime-first ~3x the prime count.
    if q0 and product + bound_e < tables.spf_limit and bound_e < 3 * (hi - lo):
        fac_pm1 = _factor_fast(product - 1, tables)
        for e in range(2, bound_e + 1):
            if math.gcd(e, product) != 1:
                continue
            fac = _merge_factorizations(fac_pm1, _factor_fast(product + e, tables))
            for f in _bounded_divisors(fac, qmax - 1):
                q = f + 1
                if q <= p_last:
                    continue
                pq1 = product * q - 1
                if pq1 % e:
                    continue
                rm1 = pq1 // e
                r = rm1 + 1
                if r <= q or product * q * r >= limit:
                    continue
                n = product * q * r
                nm1 = n - 1
                if nm1 % carry or nm1 % (q - 1) or nm1 % rm1:
                    continue
                if is_prime(q) and is_prime(r):
                    emit(q, r)
    else:
        for q in sieve[lo:hi]:
            if carry % q == 0 or math.gcd(product, q - 1) != 1:
                continue
            carry2 = math.lcm(carry, q - 1)
            inner: list = []
            _complete_final(
                primes + (q,), product * q, carry2, limit, tables, inner,
                mode="hybrid",
            )
            for n, fs in inner:
                if collect_pairs:
                    pairs.append((fs[-2], fs[-1]))
                else:
                    out.append((n, fs))
    if collect_pairs:
        pairs.sort()
        return pairs
    return None


def _merge_factorizations(a, b) -> list[tuple[int, int]]:
    merged = dict(a)
    for p, e in b:
        merged[p] = merged.get(p, 0) + e
    return sorted(merged.items())


def _descend(
    primes: tuple[int, ...],
    product: int,
    carry: int,
    d: int,
    limit: int,
    mode: str,
    tables: _Tables,
    out: list,
) -> None:
    k = len(primes)
    stop = d - 2 if mode == "last-two" else d - 1
    if k == stop:
        if mode == "last-two":
            _complete_last_two(primes, product, carry, limit, tables, out)
        else:
            _complete_final(primes, product, carry, limit, tables, out, mode)
        return
    bound = iroot((limit - 1) // product, d - k)
    sieve = tables.sieve
    lo = bisect_right(sieve, primes[-1]) if primes else bisect_left(sieve, 3)
    hi = bisect_right(sieve, bound)
    for p in sieve[lo:hi]:
        if carry % p == 0 or math.gcd(product, p - 1) != 1:
            continue
        _descend(
            primes + (p,),
            product * p,
            math.lcm(carry, p - 1),
            d,
            limit,
            mode,
            tables,
            out,
        )


# ---------------------------------------------------------------------------
# Task partitioning and the public entry point.

_WORKER_STATE: dict = {}


def _seed_tasks(config: EnumerationConfig, tables: _Tables) -> list[tuple]:
    """Subtree roots: (d, p1) for d = 3, (d, p1, p2) for deeper targets."""
    limit = config.limit
    tasks: list[tuple] = []
    for d in range(config.d_min, config.resolved_d_max() + 1):
        root = PrefixState((), 1, 1, limit, d)
        b1 = child_bound(root, d)
        i1 = bisect_left(tables.sieve, 3)
        for p1 in tables.sieve[i1 : bisect_right(tables.sieve, b1)]:
            if d == 3:
                tasks.append((d, p1))
                continue
            pre1 = PrefixState((p1,), p1, p1 - 1, limit, d)
            b2 = child_bound(pre1, d)
            j = bisect_right(tables.sieve, p1)
            for p2 in tables.sieve[j : bisect_right(tables.sieve, b2)]:
                if (p1 - 1) % p2 == 0 or (p2 - 1) % p1 == 0:
                    continue
                tasks.append((d, p1, p2))
    return tasks


def _run_task_impl(task: tuple, limit: int, mode: str, tables: _Tables) -> list:
    d = task[0]
    primes = tuple(task[1:])
    product = math.prod(primes)
    carry = math.lcm(*(p - 1 for p in primes))
    out: list = []
    _descend(primes, product, carry, d, limit, mode, tables, out)
    return out


def _worker_init(limit: int, d_min: int, mode: str) -> None:
    _WORKER_STATE["tables"] = _Tables.for_limit(limit, d_min)
    _WORKER_STATE["limit"] = limit
    _WORKER_STATE["mode"] = mode


def _worker_run(batch: list[tuple]) -> list:
    tables = _WORKER_STATE["tables"]
    limit = _WORKER_STATE["limit"]
    mode = _WORKER_STATE["mode"]
    out: list = []
    for task in batch:
        out.extend(_run_task_impl(task, limit, mode, tables))
    return out


def enumerate_carmichael(
    config: EnumerationConfig, progress=None
) -> Catalog:
    """The complete ascending catalog of Carmichael numbers < limit.

    Output is independent of completion mode and worker count; both only
    steer how the same search space is covered.
    """
    config.validate()
    tables = _Tables.for_limit(config.limit, config.d_min)
    tasks = _seed_tasks(config, tables)
    mode = config.completion_mode
    raw: list = []

    if config.worker_count == 1 or len(tasks) < 2:
        for i, task in enumerate(tasks):
            raw.extend(_run_task_impl(task, config.limit, mode, tables))
            if progress is not None:
                progress(i + 1, len(tasks))
    else:
        batches = _chunk(tasks, config.worker_count)
        ctx = get_context("fork")
        with ctx.Pool(
            processes=config.worker_count,
            initializer=_worker_init,
            initargs=(config.limit, config.d_min, mode),
        ) as pool:
            done = 0
            for part in pool.imap_unordered(_worker_run, batches):
                raw.extend(part)
                done += 1
                if progress is not None:
                    progress(done, len(batches))

    raw.sort()
    entries = []
    previous = 0
    for n, fs in raw:
        if n == previous:
            raise AssertionError(f"duplicate emission for {n}")
        previous = n
        entry = CarmichaelEntry(n, fs)
        entry.validate()
        entries.append(entry)
    # No completion mode or worker count here: they provably do not affect
    # the content, and equal catalogs must serialize byte-identically.
    provenance = {
        "generator": "carmichael 0.1.0",
        "limit": str(config.limit),
        "d_min": str(config.d_min),
        "d_max": str(config.resolved_d_max()),
        "count": str(len(entries)),
    }
    return Catalog(entries, provenance)


def _chunk(tasks: list, workers: int) -> list[list]:
    # Aim for several batches per worker so stragglers even out.
    per = max(1, len(tasks) // (workers * 8))
    return [tasks[i : i + per] for i in range(0, len(tasks), per)]


def default_worker_count() -> int:
    env = os.environ.get("CARMICHAEL_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1
