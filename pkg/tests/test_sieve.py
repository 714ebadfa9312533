import math

import numpy as np
import pytest

from omegasum.sieve import (
    iter_segments,
    mu_single,
    omega_single,
    primes_up_to,
    sieve_segment,
)


def trial_is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def test_primes_small():
    assert primes_up_to(10).primes.tolist() == [2, 3, 5, 7]
    assert primes_up_to(1).primes.tolist() == []
    assert primes_up_to(2).primes.tolist() == [2]


def test_primes_against_trial_division():
    plist = primes_up_to(10**4)
    assert len(plist.primes) == 1229
    expected = [n for n in range(2, 10**4 + 1) if trial_is_prime(n)]
    assert plist.primes.tolist() == expected


def test_primes_negative_limit():
    with pytest.raises(ValueError):
        primes_up_to(-1)


def test_segment_unit_and_twelve():
    seg = sieve_segment(1, 16)
    assert seg.omega[0] == 0 and seg.mu[0] == 1  # n = 1
    assert seg.omega[11] == 3 and seg.mu[11] == 0  # 12 = 2^2 * 3


def test_segment_matches_trial_division_high():
    lo = 10**6
    seg = sieve_segment(lo, lo + 10**4)
    for i in range(10**4):
        n = lo + i
        assert seg.omega[i] == omega_single(n), n
        assert seg.mu[i] == mu_single(n), n


def test_segment_invalid_ranges():
    with pytest.raises(ValueError):
        sieve_segment(0, 10)
    with pytest.raises(ValueError):
        sieve_segment(10, 10)
    with pytest.raises(ValueError):
        sieve_segment(1, 2 + (1 << 21))  # beyond max_size


def test_omega_single_examples():
    assert omega_single(1) == 0
    assert omega_single(2**20) == 20
    with pytest.raises(ValueError):
        omega_single(0)
    with pytest.raises(ValueError):
        mu_single(0)


def test_omega_at_first_positive_liouville_point():
    # the first x with positive (-1)^Omega partial sums; its Omega is even
    x = 906150257
    from sympy import factorint

    fac = factorint(x)
    om = sum(fac.values())
    assert omega_single(x) == om
    assert om % 2 == 0


def test_complete_additivity(rng):
    for _ in range(200):
        m = rng.randrange(1, 10**5)
        n = rng.randrange(1, 10**5)
        assert omega_single(m * n) == omega_single(m) + omega_single(n)


def test_moebius_divisor_identity():
    # sum of mu over divisors picks out n = 1
    limit = 10**4
    seg = sieve_segment(1, limit + 1)
    mu = seg.mu.astype(np.int64)
    acc = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        acc[d::d] += mu[d - 1]
    assert acc[1] == 1
    assert not acc[2:].any()


def test_mu_matches_omega_parity_on_squarefree():
    seg = sieve_segment(1, 5001)
    sf = seg.mu != 0
    expect = np.where(seg.omega[sf] & 1, -1, 1)
    assert (seg.mu[sf] == expect).all()


def test_omega_le_log2():
    seg = sieve_segment(2, 4096)
    ns = np.arange(2, 4096)
    assert (seg.omega <= np.log2(ns)).all()


def test_segmentation_independence():
    n = 30000
    whole = sieve_segment(1, n + 1)
    oms, mus = [], []
    for seg in iter_segments(1, n + 1, segment_size=7777):
        oms.append(seg.omega)
        mus.append(seg.mu)
    assert (np.concatenate(oms) == whole.omega).all()
    assert (np.concatenate(mus) == whole.mu).all()


def test_iter_segments_threaded_order():
    seq = [s.lo for s in iter_segments(1, 10**6, segment_size=2**17, threads=4)]
    assert seq == sorted(seq)
    a = np.concatenate(
        [s.omega for s in iter_segments(1, 200001, segment_size=2**16, threads=3)]
    )
    b = sieve_segment(1, 200001, max_size=2**20).omega
    assert (a[: len(b)] == b).all()
