"""Segmented sieving of Omega(n) (prime factors with multiplicity) and mu(n).

The sieve walks prime powers p^k up to sqrt(hi) over a window [lo, hi),
adding one to Omega per dividing power and dividing the power out of a
residual array.  Whatever残 survives with value > 1 is a single prime factor
above sqrt(hi), so one final increment finishes Omega exactly.  Squarefree
status falls out of the k = 2 pass, and mu = (-1)^Omega on squarefree n.

Windows are pure value computations with no shared state, so callers may
sieve them in any order or in parallel and own the ordering themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

DEFAULT_SEGMENT_SIZE = 1 << 20
_MAX_N = (1 << 63) - 1


@dataclass(frozen=True)
class PrimeList:
    """Ascending primes up to ``limit`` (inclusive)."""

    limit: int
    primes: np.ndarray  # int64, strictly increasing


@dataclass(frozen=True)
class Segment:
    """Exact Omega and mu values for the window [lo, hi).

    ``omega[i]`` and ``mu[i]`` describe n = lo + i.  Omega is stored in
    uint8 (Omega(n) < 64 for every n below 2^63) and mu in int8.
    """

    lo: int
    hi: int
    omega: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        assert len(self.omega) == len(self.mu) == self.hi - self.lo


def primes_up_to(limit: int) -> PrimeList:
    """All primes <= limit, ascending, by a plain Eratosthenes sieve."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    if limit < 2:
        return PrimeList(limit, np.empty(0, dtype=np.int64))
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return PrimeList(limit, np.nonzero(flags)[0].astype(np.int64))


def sieve_segment(lo: int, hi: int, primes: PrimeList | None = None,
                  max_size: int = DEFAULT_SEGMENT_SIZE) -> Segment:
    """Sieve exact Omega(n) and mu(n) for all n in [lo, hi).

    ``primes`` may carry a prime table covering sqrt(hi - 1); one is built
    on the fly otherwise.  The window size is capped (``max_size``) to keep
    memory proportional to the segment, not the range.
    """
    if not 1 <= lo < hi:
        raise ValueError(f"invalid range [{lo}, {hi})")
    if hi - 1 > _MAX_N:
        raise ValueError("range exceeds 63-bit sieve capacity")
    if hi - lo > max_size:
        raise ValueError(f"segment of {hi - lo} exceeds max_size={max_size}")

    n = hi - lo
    root = isqrt(hi - 1)
    if primes is None or primes.limit < root:
        primes = primes_up_to(root)

    omega = np.zeros(n, dtype=np.uint8)
    squarefree = np.ones(n, dtype=bool)
    residual = np.arange(lo, hi, dtype=np.int64)

    for p in primes.primes:
        p = int(p)
        if p > root:
            break
        pk = p
        k = 1
        while pk < hi:
            start = ((lo + pk - 1) // pk) * pk
            if start >= hi:
                break
            window = slice(start - lo, n, pk)
            omega[window] += 1
            residual[window] //= p
            if k == 2:
                squarefree[window] = False
            pk *= p
            k += 1

    # Any residual above 1 is a single prime factor beyond sqrt(hi).
    omega[residual > 1] += 1
    mu = np.where(squarefree, np.where(omega & 1, -1, 1), 0).astype(np.int8)
    return Segment(lo, hi, omega, mu)


def iter_segments(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE,
                  primes: PrimeList | None = None, threads: int = 1):
    """Yield consecutive sieved segments covering [lo, hi).

    With ``threads`` > 1, upcoming segments are sieved on a bounded-width
    thread pool while the current one is consumed; results still arrive in
    ascending order.
    """
    if lo >= hi:
        return
    root = isqrt(hi - 1)
    if primes is None or primes.limit < root:
        primes = primes_up_to(root)
    bounds = [(a, min(a + segment_size, hi)) for a in range(lo, hi, segment_size)]
    if threads <= 1 or len(bounds) == 1:
        for a, b in bounds:
            yield sieve_segment(a, b, primes, max_size=segment_size)
        return

    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        window: list = []
        idx = 0
        while idx < len(bounds) or window:
            while idx < len(bounds) and len(window) < threads + 1:
                a, b = bounds[idx]
                window.append(pool.submit(sieve_segment, a, b, primes, segment_size))
                idx += 1
            yield window.pop(0).result()


def _factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization, (prime, exponent) pairs ascending."""
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def omega_single(n: int) -> int:
    """Omega(n) by trial division; the test oracle for the sieve."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return sum(e for _, e in _factorize(n))


def mu_single(n: int) -> int:
    """mu(n) by trial division; the test oracle for the sieve."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    fac = _factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) & 1 else 1
