"""Streaming evaluation of summatory series, extrema scans, and bound checks.

Supported series (:class:`SeriesKind` tags):

    W (param a)   sum_{n<=x} (-a)^Omega(n)        (W with a=1 is the L series)
    T (param a)   sum_{n<=x} a^Omega(n)           (T with a=2 is the G series)
    U             odd-n restriction of W with a=2
    u             sum over odd n<=x of (-2)^Omega(n)/n
    M             sum_{n<=x} mu(n)
    m             sum_{n<=x} mu(n)/n
    m2            sum_{n<=x} (mu*mu)(n)/n
    L, G          aliases of W(1) and T(2)

Integer-valued series are accumulated exactly: int64 vectors while a
per-segment magnitude bound proves that safe, arbitrary-precision integers
otherwise, so overflow is impossible rather than merely detected.  Weighted
series use float64 with a tracked rounding-error bound: chunk sums are
folded into a compensated running pair, and the bound grows by at most a
unit roundoff per accumulated term.

All series are right-continuous step functions, so extrema of series(x)/x^e
with e > 0 are attained at integer x; scans evaluate at integers only.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Iterator

import numpy as np

from omegasum.sieve import (
    DEFAULT_SEGMENT_SIZE,
    Segment,
    iter_segments,
)

_EPS = float(np.finfo(np.float64).eps)
_INT64_SAFE = 1 << 62
_MAX_OMEGA = 64
_MU_MU_LIMIT = 1 << 25

_TAGS = {"W", "U", "u", "M", "m", "m2", "L", "G", "T"}


@dataclass(frozen=True)
class SeriesKind:
    """A summatory series selector: tag plus the real parameter a where used."""

    tag: str
    a: float | int | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown series tag {self.tag!r}")
        if self.tag in ("W", "T"):
            if self.a is None:
                raise ValueError(f"series {self.tag} requires parameter a")
            if not self.a > 0:
                raise ValueError("parameter a must be positive")
        elif self.a is not None:
            raise ValueError(f"series {self.tag} takes no parameter")

    @classmethod
    def W(cls, a) -> "SeriesKind":
        return cls("W", a)

    @classmethod
    def T(cls, a) -> "SeriesKind":
        return cls("T", a)

    @classmethod
    def U(cls) -> "SeriesKind":
        return cls("U")

    @classmethod
    def u(cls) -> "SeriesKind":
        return cls("u")

    @classmethod
    def M(cls) -> "SeriesKind":
        return cls("M")

    @classmethod
    def m(cls) -> "SeriesKind":
        return cls("m")

    @classmethod
    def m2(cls) -> "SeriesKind":
        return cls("m2")

    @classmethod
    def L(cls) -> "SeriesKind":
        return cls("L")

    @classmethod
    def G(cls) -> "SeriesKind":
        return cls("G")

    def effective(self) -> tuple[str, float | int | None]:
        """Resolve the L and G aliases onto their base series."""
        if self.tag == "L":
            return "W", 1
        if self.tag == "G":
            return "T", 2
        return self.tag, self.a

    @property
    def integer_valued(self) -> bool:
        tag, a = self.effective()
        if tag in ("U", "M"):
            return True
        if tag in ("W", "T"):
            return float(a).is_integer()
        return False

    def label(self) -> str:
        tag, a = self.effective()
        if tag in ("W", "T"):
            return f"{self.tag}({self.a:g})"
        return self.tag


@dataclass(frozen=True)
class SummatoryCheckpoint:
    """Series value at x; err_bound is 0 for exactly accumulated series."""

    x: int
    value: int | float
    err_bound: float = 0.0


@dataclass(frozen=True)
class ExtremaRecord:
    """Extrema of series(x)/x^exponent over integer x in [lo, hi].

    ``arg_max``/``max`` locate the signed maximum, ``arg_min``/``min`` the
    signed minimum, and ``max_abs`` is the supremum of the absolute value
    (attained at one of the two).
    """

    lo: int
    hi: int
    arg_max: int
    max: float
    arg_min: int
    min: float
    max_abs: float
    normalizer: str


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of checking |series(x)| < c * x^exponent on [lo, hi]."""

    ok: bool
    c: float
    exponent: float
    lo: int
    hi: int
    first_x: int | None = None
    first_value: int | float | None = None


@dataclass(frozen=True)
class MuMuTable:
    """values[i] = (mu*mu)(i+1), the Dirichlet square of mu."""

    limit: int
    values: np.ndarray


def mu_mu_table(limit: int) -> MuMuTable:
    """Exact Dirichlet self-convolution of mu up to ``limit``."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    full = _mu_mu_full(limit)
    return MuMuTable(limit, full[1:])


def _mu_full(limit: int) -> np.ndarray:
    mu = np.zeros(limit + 1, dtype=np.int8)
    for seg in iter_segments(1, limit + 1):
        mu[seg.lo : seg.hi] = seg.mu
    return mu


def _mu_mu_full(limit: int) -> np.ndarray:
    """(mu*mu)(n) for n ... limit, index-aligned, via the hyperbola split.

    Each divisor pair (d, n/d) with d < sqrt(n) is counted twice, the
    diagonal d = n/d once; only squarefree d contribute.
    """
    if limit > _MU_MU_LIMIT:
        raise ValueError(f"mu*mu table capped at {_MU_MU_LIMIT}")
    mu = _mu_full(limit)
    mu32 = mu.astype(np.int32)
    out = np.zeros(limit + 1, dtype=np.int32)
    for d in range(1, isqrt(limit) + 1):
        md = int(mu[d])
        if md == 0:
            continue
        out[d * d] += 1
        top = limit // d
        if top > d:
            out[d * (d + 1) :: d] += (2 * md) * mu32[d + 1 : top + 1]
    return out


class _Engine:
    """Per-kind segment accumulator with exact and float paths."""

    def __init__(self, kind: SeriesKind, x_max: int):
        self.kind = kind
        self.tag, a = kind.effective()
        self.exact = kind.integer_valued
        self.a = None if a is None else (int(a) if self.exact else float(a))
        self.pw: list[int] | None = None
        self.abs_pw: list[int] | None = None
        self.pw_obj = None
        self.pw_i64 = None
        self.pw_f = None
        self.mumu = None

        # Omega(n) <= log2(n), so the power tables never need more entries
        k_max = min(max(x_max, 2).bit_length(), _MAX_OMEGA)
        if self.tag in ("W", "T", "U"):
            base = 2 if self.tag == "U" else self.a
            if self.exact:
                sign = -1 if self.tag in ("W", "U") else 1
                self.pw = [(sign * base) ** k for k in range(k_max)]
                self.abs_pw = [abs(v) for v in self.pw]
                self.pw_obj = np.array(self.pw, dtype=object)
                if self.abs_pw[-1] < _INT64_SAFE:
                    self.pw_i64 = np.array(self.pw, dtype=np.int64)
            else:
                self.pw_f = np.power(float(base), np.arange(k_max, dtype=np.float64))
        elif self.tag == "u":
            self.pw_f = np.power(2.0, np.arange(k_max, dtype=np.float64))
        elif self.tag == "m2":
            self.mumu = _mu_mu_full(x_max)

        # running state
        self.total = 0  # exact running value (int) when exact
        self.s = 0.0  # compensated pair when float
        self.comp = 0.0
        self.err = 0.0

    # ---- exact path -------------------------------------------------

    def _counts(self, om: np.ndarray) -> np.ndarray:
        return np.bincount(om, minlength=1)

    def exact_chunk_sum(self, seg: Segment, i0: int, i1: int) -> int:
        """Exact (arbitrary precision) sum of terms for n in [lo+i0, lo+i1)."""
        if self.tag == "M":
            return int(seg.mu[i0:i1].sum(dtype=np.int64))
        om = seg.omega[i0:i1]
        if self.tag == "U":
            start = (seg.lo + i0 + 1) % 2
            om = om[start::2]
        counts = self._counts(om)
        pw = self.pw
        return sum(int(c) * pw[k] for k, c in enumerate(counts) if c)

    def exact_chunk_abs(self, seg: Segment, i0: int, i1: int) -> int:
        if self.tag == "M":
            return i1 - i0
        om = seg.omega[i0:i1]
        if self.tag == "U":
            start = (seg.lo + i0 + 1) % 2
            om = om[start::2]
        counts = self._counts(om)
        apw = self.abs_pw
        return sum(int(c) * apw[k] for k, c in enumerate(counts) if c)

    def add_exact(self, seg: Segment) -> None:
        self.total += self.exact_chunk_sum(seg, 0, seg.hi - seg.lo)

    def exact_values(self, seg: Segment) -> np.ndarray:
        """Exact series values at every n in the segment; updates the running total."""
        n = seg.hi - seg.lo
        safe = (
            self.pw_i64 is not None or self.tag == "M"
        ) and abs(self.total) + self.exact_chunk_abs(seg, 0, n) < _INT64_SAFE
        if safe:
            if self.tag == "M":
                terms = seg.mu.astype(np.int64)
            else:
                terms = self.pw_i64[seg.omega]
                if self.tag == "U":
                    terms[(seg.lo % 2) :: 2] = 0  # zero the even n
            vals = np.cumsum(terms)
            vals += self.total
        else:
            if self.tag == "M":
                terms = seg.mu.astype(object)
            else:
                terms = self.pw_obj[seg.omega]
                if self.tag == "U":
                    terms[(seg.lo % 2) :: 2] = 0
            vals = np.cumsum(terms)
            if self.total:
                vals = vals + self.total
        self.total = int(vals[-1])
        return vals

    # ---- float path -------------------------------------------------

    def float_terms(self, seg: Segment) -> np.ndarray:
        xs = np.arange(seg.lo, seg.hi, dtype=np.float64)
        if self.tag == "m":
            return seg.mu / xs
        if self.tag == "m2":
            return self.mumu[seg.lo : seg.hi] / xs
        pf = self.pw_f[seg.omega]
        if self.tag == "u":
            t = np.where(seg.omega & 1, -pf, pf) / xs
            t[(seg.lo % 2) :: 2] = 0.0
            return t
        if self.tag == "W":
            return np.where(seg.omega & 1, -pf, pf)
        return pf  # T

    def add_float_chunk(self, terms: np.ndarray) -> None:
        """Fold one chunk into the compensated pair, growing the error bound."""
        t = float(terms.sum())
        self.err += _EPS * len(terms) * float(np.abs(terms).sum())
        s = self.s + t
        if abs(self.s) >= abs(t):
            self.comp += (self.s - s) + t
        else:
            self.comp += (t - s) + self.s
        self.s = s

    def float_value(self) -> tuple[float, float]:
        v = self.s + self.comp
        return v, self.err + _EPS * abs(v)

    def float_values(self, seg: Segment) -> np.ndarray:
        """Float series values at every n in the segment (scan precision)."""
        terms = self.float_terms(seg)
        base, _ = self.float_value()
        vals = np.cumsum(terms)
        vals += base
        self.add_float_chunk(terms)
        return vals

    # ---- unified ----------------------------------------------------

    def add_segment(self, seg: Segment) -> None:
        if self.exact:
            self.add_exact(seg)
        else:
            self.add_float_chunk(self.float_terms(seg))

    def values(self, seg: Segment) -> np.ndarray:
        return self.exact_values(seg) if self.exact else self.float_values(seg)


def evaluate(kind: SeriesKind, x_max: int, checkpoint_stride: int = 10**4,
             segment_size: int = DEFAULT_SEGMENT_SIZE,
             threads: int = 1) -> Iterator[SummatoryCheckpoint]:
    """Stream checkpoints of the series at every multiple of the stride plus x_max.

    Integer-valued series yield exact ints; weighted series yield float64
    values with an accumulated rounding-error bound.
    """
    if x_max < 1:
        raise ValueError("x_max must be at least 1")
    if checkpoint_stride < 1:
        raise ValueError("checkpoint_stride must be at least 1")
    eng = _Engine(kind, x_max)
    positions = list(range(checkpoint_stride, x_max + 1, checkpoint_stride))
    if not positions or positions[-1] != x_max:
        positions.append(x_max)
    pos_iter = iter(positions)
    nxt = next(pos_iter)

    for seg in iter_segments(1, x_max + 1, segment_size, threads=threads):
        if nxt is None:
            break
        if nxt >= seg.hi:
            eng.add_segment(seg)
            continue
        terms = None if eng.exact else eng.float_terms(seg)
        prev = seg.lo
        while nxt is not None and nxt < seg.hi:
            i0, i1 = prev - seg.lo, nxt + 1 - seg.lo
            if eng.exact:
                eng.total += eng.exact_chunk_sum(seg, i0, i1)
                yield SummatoryCheckpoint(nxt, eng.total, 0.0)
            else:
                eng.add_float_chunk(terms[i0:i1])
                v, e = eng.float_value()
                yield SummatoryCheckpoint(nxt, v, e)
            prev = nxt + 1
            nxt = next(pos_iter, None)
        if prev < seg.hi:
            if eng.exact:
                eng.total += eng.exact_chunk_sum(seg, prev - seg.lo, seg.hi - seg.lo)
            else:
                eng.add_float_chunk(terms[prev - seg.lo :])


def values_at(kind: SeriesKind, points: Iterable[int],
              segment_size: int = DEFAULT_SEGMENT_SIZE) -> dict[int, int | float]:
    """Series values at an arbitrary set of points, in one streaming pass."""
    pts = sorted(set(int(p) for p in points))
    if pts and pts[0] < 0:
        raise ValueError("points must be non-negative")
    out: dict[int, int | float] = {}
    while pts and pts[0] == 0:
        out[0] = 0
        pts.pop(0)
    if not pts:
        return out
    x_max = pts[-1]
    eng = _Engine(kind, x_max)
    idx = 0
    for seg in iter_segments(1, x_max + 1, segment_size):
        if idx >= len(pts):
            break
        if pts[idx] >= seg.hi:
            eng.add_segment(seg)
            continue
        vals = eng.values(seg)
        while idx < len(pts) and pts[idx] < seg.hi:
            v = vals[pts[idx] - seg.lo]
            out[pts[idx]] = int(v) if eng.exact else float(v)
            idx += 1
    return out


def scan_extrema(kind: SeriesKind, lo: int, hi: int, normalizer_exponent: float,
                 segment_size: int = DEFAULT_SEGMENT_SIZE,
                 threads: int = 1) -> ExtremaRecord:
    """Extrema of series(x)/x^exponent over integer x in [lo, hi]."""
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    if not normalizer_exponent > 0:
        raise ValueError("normalizer exponent must be positive")
    eng = _Engine(kind, hi)
    e = float(normalizer_exponent)
    best_max = -np.inf
    best_min = np.inf
    arg_max = arg_min = lo
    for seg in iter_segments(1, hi + 1, segment_size, threads=threads):
        if seg.hi <= lo:
            eng.add_segment(seg)
            continue
        vals = eng.values(seg)
        i0 = max(lo, seg.lo) - seg.lo
        xs = np.arange(seg.lo + i0, seg.hi, dtype=np.float64)
        normed = vals[i0:].astype(np.float64) / np.power(xs, e)
        k_max = int(np.argmax(normed))
        k_min = int(np.argmin(normed))
        if normed[k_max] > best_max:
            best_max = float(normed[k_max])
            arg_max = seg.lo + i0 + k_max
        if normed[k_min] < best_min:
            best_min = float(normed[k_min])
            arg_min = seg.lo + i0 + k_min
    return ExtremaRecord(
        lo=lo, hi=hi,
        arg_max=arg_max, max=best_max,
        arg_min=arg_min, min=best_min,
        max_abs=max(abs(best_max), abs(best_min)),
        normalizer=f"x^{e:g}",
    )


def verify_linear_bound(kind: SeriesKind, c: float, exponent: float,
                        lo: int, hi: int,
                        segment_size: int = DEFAULT_SEGMENT_SIZE,
                        threads: int = 1) -> VerifyResult:
    """Check |series(x)| < c * x^exponent for all integer x in [lo, hi].

    On failure reports the smallest violating x and the series value there.
    """
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    eng = _Engine(kind, hi)
    c = float(c)
    e = float(exponent)
    for seg in iter_segments(1, hi + 1, segment_size, threads=threads):
        if seg.hi <= lo:
            eng.add_segment(seg)
            continue
        vals = eng.values(seg)
        i0 = max(lo, seg.lo) - seg.lo
        xs = np.arange(seg.lo + i0, seg.hi, dtype=np.float64)
        bad = np.abs(vals[i0:].astype(np.float64)) >= c * np.power(xs, e)
        if bad.any():
            k = int(np.argmax(bad))
            x = seg.lo + i0 + k
            v = vals[i0 + k]
            return VerifyResult(False, c, e, lo, hi, x,
                                int(v) if eng.exact else float(v))
    return VerifyResult(True, c, e, lo, hi)


def dyadic_decompose(x: int, k: int,
                     segment_size: int = DEFAULT_SEGMENT_SIZE) -> int:
    """Evaluate sum_{j<k} (-2)^j U(x/2^j) + (-2)^k W(x/2^k) exactly.

    The halving identity makes this equal W(x) for every x >= 0, k >= 1;
    both sides here come from independent evaluations.
    """
    if x < 0:
        raise ValueError("x must be non-negative")
    if k < 1:
        raise ValueError("k must be at least 1")
    u_points = [x >> j for j in range(k)]
    w_point = x >> k
    u_vals = values_at(SeriesKind.U(), u_points, segment_size)
    w_vals = values_at(SeriesKind.W(2), [w_point], segment_size)
    total = sum((-2) ** j * u_vals[x >> j] for j in range(k))
    return total + (-2) ** k * w_vals[w_point]
