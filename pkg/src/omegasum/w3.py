"""The a = 3 limsup machinery: oscillating kernel, exact inner sums, tails.

The normalized series W_3(x)/x^{v} with v = log2(3) approaches a sum of
kernel values f(log2(x/m)) over integers m coprime to 6.  The kernel is
antiperiodic, f(t + 1) = -f(t), which transfers the supremum over all large
x down to one dyadic window; inside the window the series itself is scanned
exactly and explicit remainder plus tail terms give certified error bars.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from omegasum import analytic
from omegasum.sieve import iter_segments
from omegasum.summatory import SeriesKind, scan_extrema

V3 = math.log2(3.0)

#: sup of |f|: the geometric envelope 3^{v-1} / (3^{v-1} - 1)
KERNEL_SUP = 3.0 ** (V3 - 1.0) / (3.0 ** (V3 - 1.0) - 1.0)


@dataclass(frozen=True)
class KernelEval:
    theta: float
    terms: int
    value: float
    truncation_error: float


@dataclass(frozen=True)
class Coprime6Check:
    weighted: float
    bound: float
    ok: bool


@dataclass(frozen=True)
class S3Estimate:
    """Center and certified halfwidth for the a = 3 normalized supremum."""

    x_lo: int
    x_hi: int
    main_max: float
    arg_max: int
    error_budget: dict
    s3_center: float
    s3_halfwidth: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "x_lo": self.x_lo,
                "x_hi": self.x_hi,
                "main_max": self.main_max,
                "arg_max": self.arg_max,
                "remainder": self.error_budget["remainder_132"],
                "tail": self.error_budget["tail"],
                "s3_center": self.s3_center,
                "s3_halfwidth": self.s3_halfwidth,
            },
            sort_keys=True,
        )


def kernel_f(theta: float, terms: int = 64) -> KernelEval:
    """Partial sum of the oscillating kernel with a certified truncation error.

    f(t) = sum over alpha >= 0 of (-1)^{alpha + floor(t - v alpha)}
           * 3^{-(v-1) alpha - frac(t - v alpha)},
    summed here for alpha <= terms.  The omitted geometric tail is below
    3^{-(v-1) terms} / (3^{v-1} - 1).
    """
    if terms < 1:
        raise ValueError("terms must be at least 1")
    total = 0.0
    for alpha in range(terms + 1):
        t = theta - V3 * alpha
        fl = math.floor(t)
        frac = t - fl
        mag = 3.0 ** (-(V3 - 1.0) * alpha - frac)
        total += -mag if (alpha + fl) & 1 else mag
    trunc = 3.0 ** (-(V3 - 1.0) * terms) / (3.0 ** (V3 - 1.0) - 1.0)
    return KernelEval(theta, terms, total, trunc)


def inner_sum_23(z: float) -> int:
    """Exact sum of (-3)^{a1+a2} over 2^{a1} 3^{a2} <= z (arbitrary precision)."""
    if z < 1:
        raise ValueError("z must be at least 1")
    zi = math.floor(z)
    total = 0
    p3 = 1
    a2 = 0
    while p3 <= zi:
        # geometric sum over a1 with 2^{a1} <= z / 3^{a2}
        cap = zi // p3
        a1_max = cap.bit_length() - 1
        geo = (1 - (-3) ** (a1_max + 1)) // 4
        total += (-3) ** a2 * geo
        p3 *= 3
        a2 += 1
    return total


def coprime6_sum(x: int) -> Coprime6Check:
    """Exact weighted sum of 3^Omega(m)/m over m <= x with (m, 6) = 1,
    compared against the 1.32 (log x)^3 envelope (x >= 5)."""
    if x < 5:
        raise ValueError("x must be at least 5")
    total = 0.0
    pw = np.power(3.0, np.arange(64, dtype=np.float64))
    for seg in iter_segments(1, int(x) + 1):
        ns = np.arange(seg.lo, seg.hi, dtype=np.int64)
        mask = (ns % 2 != 0) & (ns % 3 != 0)
        total += float((pw[seg.omega[mask]] / ns[mask]).sum())
    bound = 1.32 * math.log(x) ** 3
    return Coprime6Check(total, bound, total <= bound)


def tail_bound(x: float, epsilon: float) -> float:
    """Certified bound on the kernel-series tail beyond x.

    Shape: kernel sup * (5^{1+e} - 1)/(5^{1+e} - 3) * zeta(1+e) * x^{1+e-v},
    for 0 < e < v - 1 so the x exponent is negative.
    """
    if not 0 < epsilon < V3 - 1.0:
        raise ValueError("epsilon out of range (0, v3 - 1)")
    five = 5.0 ** (1.0 + epsilon)
    value = (
        KERNEL_SUP
        * (five - 1.0)
        / (five - 3.0)
        * analytic.zeta_real(1.0 + epsilon)
        * x ** (1.0 + epsilon - V3)
    )
    return value


def estimate_s3(x_lo: int, x_hi: int, epsilon: float = 0.1,
                compute_resolution: float = 1e-3,
                threads: int = 1) -> S3Estimate:
    """Scan |W_3(x)| / x^{v} exactly on [x_lo, x_hi] and attach certified error bars.

    The center is the exact scan maximum (reported at the stated compute
    resolution); the halfwidth adds the explicit coprime-sum remainder,
    maximal at the left endpoint, and the series tail at x_lo.
    """
    if not 166 <= x_lo < x_hi:
        raise ValueError("need 166 <= x_lo < x_hi")
    rec = scan_extrema(SeriesKind.W(3), x_lo, x_hi, V3, threads=threads)
    # 1.32 x (log x)^3 / x^{v} is decreasing once log x > 3/(v-1), so the
    # range maximum sits at the left endpoint
    remainder = 1.32 * math.log(x_lo) ** 3 * x_lo ** (1.0 - V3)
    tail = tail_bound(float(x_lo), epsilon)
    budget = {
        "compute": compute_resolution,
        "remainder_132": remainder,
        "tail": tail,
    }
    return S3Estimate(
        x_lo=x_lo,
        x_hi=x_hi,
        main_max=rec.max_abs,
        arg_max=rec.arg_max if abs(rec.max) >= abs(rec.min) else rec.arg_min,
        error_budget=budget,
        s3_center=rec.max_abs,
        s3_halfwidth=compute_resolution + remainder + tail,
    )
