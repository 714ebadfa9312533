"""Euler products, zeta brackets, prime sums, and closed-form limsup bounds.

Everything here is a pure function.  Quantities used as certified upper
bounds are rounded outward by one part in 1e12 at the final combination
step, which stands in for full interval arithmetic at the tolerances this
package works to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from omegasum.sieve import primes_up_to

LOG2_OVER_LOG3 = math.log(2) / math.log(3)

_EPS = float(np.finfo(np.float64).eps)
_OUTWARD = 1.0 + 1e-12

# Bernoulli numbers B_2, B_4, B_6, B_8 for the zeta tail expansion.
_BERNOULLI = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30)


@dataclass(frozen=True)
class SeriesCoefficient:
    """Coefficient a(k) of the p^{-ks} expansion of each odd Euler factor."""

    k: int
    a_k: int


@dataclass(frozen=True)
class EulerProductBound:
    """Certified upper bound on the positive-coefficient majorant at sigma.

    total = finite_product * tail_factor dominates the true product; the
    tail factor exponentiates an integer-tail overcount of the omitted
    primes, so it is always >= 1.
    """

    sigma: float
    truncation_index_m: int
    finite_product: float
    tail_factor: float
    total: float


@dataclass(frozen=True)
class LimsupBound:
    """Closed-form bounds for limsup |W_a(x)| / x^{log2 a} when a > 2."""

    a: float
    v_a: float
    r_a: float
    upper: float
    lower: float = 0.5


@dataclass(frozen=True)
class PrimeSumCheck:
    total: float
    bound: float
    ok: bool


def coefficient_a(k: int) -> SeriesCoefficient:
    """Exact a(k) = sum_{j=0}^{k} (-1)^{k-j} 2^{k-j} (j+1).

    These are the coefficients of each odd-prime Euler factor after the
    (1 - 2^{1-s} + 2^{-2s}) zeta-squared correction; a(0)=1, a(1)=0, and
    |a(k)| <= 3*2^{k-2} for k >= 2.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    total = 0
    for j in range(k + 1):
        total += (-1) ** (k - j) * (1 << (k - j)) * (j + 1)
    return SeriesCoefficient(k, total)


@lru_cache(maxsize=None)
def zeta_bracket(s: float, n_terms: int = 10000) -> tuple[float, float]:
    """A certified bracket [lo, hi] around zeta(s) for real s > 1.

    Direct summation to n_terms plus the Euler-Maclaurin tail through the
    sixth Bernoulli correction; the remainder is absorbed by doubling the
    first omitted term, which for this completely monotone integrand is a
    safe overcount.  The bracket width is far below 1e-10 on s >= 1.05.
    """
    s = float(s)
    if s <= 1:
        raise ValueError("zeta bracket requires s > 1")
    n = float(n_terms)
    partial = math.fsum((k + 1.0) ** (-s) for k in range(n_terms))
    tail = n ** (1 - s) / (s - 1) - 0.5 * n**-s
    rising = s
    power = n ** (-s - 1)
    two_j = 2.0
    factorial = 2.0
    for i, b in enumerate(_BERNOULLI[:-1]):
        tail += b / factorial * rising * power
        rising *= (s + 2 * i + 1) * (s + 2 * i + 2)
        power /= n * n
        two_j += 2.0
        factorial *= (two_j - 1.0) * two_j
    remainder = 2.0 * abs(_BERNOULLI[-1]) / factorial * rising * power
    mid = partial + tail
    # fsum is exactly rounded; 32 eps absorbs the handful of tail roundings
    pad = remainder + 32 * _EPS * abs(mid)
    return mid - pad, mid + pad


def zeta_real(s: float) -> float:
    """zeta(s) for real s > 1; the returned value is the upper bracket end."""
    return zeta_bracket(float(s))[1]


@lru_cache(maxsize=8)
def _nth_primes(m: int) -> np.ndarray:
    """The first m primes."""
    bound = 32
    if m >= 6:
        fm = float(m)
        bound = int(fm * (math.log(fm) + math.log(math.log(fm)))) + 10
    while True:
        primes = primes_up_to(bound).primes
        if len(primes) >= m:
            return primes[:m]
        bound *= 2


def fstar_bound(theta: float, m: int = 10**4) -> EulerProductBound:
    """Certified upper bound on the odd-prime majorant product at sigma = 1 - theta.

    Each retained factor uses the coefficient envelope 3*2^{k-2}, giving
    1 + 3 / (p^{2 sigma} (1 - 2 p^{-sigma})); the primes beyond the m-th are
    overcounted through an integer zeta tail inside an exponential.
    """
    theta = float(theta)
    if not 0 <= theta < 1 - LOG2_OVER_LOG3:
        raise ValueError("theta out of range [0, 1 - log2/log3)")
    if m < 3:
        raise ValueError("need at least three retained primes")
    sigma = 1.0 - theta
    primes = _nth_primes(m)
    p_m = float(primes[-1])
    odd = primes[1:].astype(np.float64)

    factors = 1.0 + 3.0 / (odd**(2 * sigma) * (1.0 - 2.0 * odd**-sigma))
    # sequential product: relative rounding below len(factors) * eps
    finite = float(np.prod(factors)) * (1.0 + len(factors) * _EPS)

    zeta_up = zeta_real(2 * sigma)
    ns = np.arange(1, int(p_m) + 1, dtype=np.float64)
    partial_low = math.fsum(ns**(-2 * sigma)) * (1.0 - 1e-14)
    coeff = 3.0 / (1.0 - 2.0 * p_m**-sigma)
    tail_factor = math.exp(coeff * max(zeta_up - partial_low, 0.0)) * _OUTWARD
    total = finite * tail_factor * _OUTWARD
    return EulerProductBound(sigma, m, finite, tail_factor, total)


def gstar_denominator(sigma: float) -> float:
    """1 - 2^{1-s} + 2^{-2s} at real s, which factors as (1 - 2^{-s})^2."""
    y = 2.0**-sigma
    return (1.0 - y) ** 2


def gstar_bound(theta: float, m: int = 10**4) -> float:
    """Upper bound on the majorant divided by its exact power-of-two factor."""
    sigma = 1.0 - float(theta)
    denom = gstar_denominator(sigma)
    if denom <= 0:
        raise ValueError("non-positive denominator")
    return fstar_bound(theta, m).total / denom * _OUTWARD


def limsup_upper(a: float) -> LimsupBound:
    """Closed-form upper bound for limsup |W_a| / x^{log2 a}, a > 2.

    upper = (a-1)/(a+1) * (3^v - 1)/(3^v - a) * zeta(v) with v = log2 a;
    the lower bound 1/2 is forced by the dyadic jumps.  The formula
    diverges as a -> 2+, so a = 2 is rejected.
    """
    a = float(a)
    if a <= 2:
        raise ValueError("closed-form bound requires a > 2")
    v = math.log2(a)
    three_v = 3.0**v
    upper = (a - 1) / (a + 1) * (three_v - 1) / (three_v - a) * zeta_real(v)
    r_a = 0.0 if a < 3 else math.log(a) / math.log(3)
    return LimsupBound(a, v, r_a, upper * _OUTWARD)


def positive_sum_bound(a: float) -> float:
    """Leading coefficient of the x^{log2 a} bound for sum_{n<=x} a^Omega(n), a > 2."""
    a = float(a)
    if a <= 2:
        raise ValueError("requires a > 2")
    v = math.log2(a)
    three_v = 3.0**v
    return (three_v - 1) / (three_v - a) * zeta_real(v) * _OUTWARD


def mertens_prime_sum_check(x: int) -> PrimeSumCheck:
    """Check sum over primes in [5, x] of 1/p against log log x (x >= 5)."""
    if x < 5:
        raise ValueError("x must be at least 5")
    primes = primes_up_to(int(x)).primes
    ps = primes[primes >= 5].astype(np.float64)
    total = math.fsum(1.0 / p for p in ps)
    bound = math.log(math.log(x))
    return PrimeSumCheck(total, bound, total < bound)


def fstar_partial_lower(theta: float, k_terms: int = 200,
                        prime_limit: int = 1000) -> float:
    """A partial-product lower estimate of the majorant from exact coefficients.

    Truncates both the coefficient sums (k <= k_terms, exact |a(k)|) and the
    prime product (p <= prime_limit), so it never exceeds the true value.
    """
    sigma = 1.0 - float(theta)
    coeffs = [abs(coefficient_a(k).a_k) for k in range(k_terms + 1)]
    primes = primes_up_to(prime_limit).primes
    total = 1.0
    for p in primes[1:]:
        p = float(p)
        total *= math.fsum(c * p ** (-k * sigma) for k, c in enumerate(coeffs))
    return total
