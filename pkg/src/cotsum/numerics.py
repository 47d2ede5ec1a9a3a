"""Shared numerical kernel.

Provides the precision/summation configuration used across the package,
exact-rational Bernoulli numbers, cotangent evaluation with exact integer
argument reduction, and deterministic summation strategies.

Two precision modes are supported: binary64 (the default, 53-bit significand,
evaluated with the ``math`` module) and an extended mode (> 53 bits, evaluated
with ``mpmath`` inside a working-precision context).  All operations are pure
functions of their arguments; the extended mode serialises around the shared
mpmath context with a re-entrant lock so concurrent callers stay safe.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Callable, Iterable, Sequence

import mpmath

__all__ = [
    "CapacityError",
    "ConstantEstimate",
    "NumericalConsistencyError",
    "PoleError",
    "PrecisionConfig",
    "PreconditionError",
    "ReducedFraction",
    "SummationStrategy",
    "DEFAULT_CONFIG",
    "bernoulli",
    "cot_reduced",
    "euler_gamma",
    "log_two_pi",
    "sum_strategy",
]


class PoleError(ValueError):
    """The cotangent was requested at an integer multiple of pi."""


class CapacityError(ValueError):
    """A requested index or size exceeds the configured maximum."""


class PreconditionError(ValueError):
    """The arguments violate a documented precondition."""


class NumericalConsistencyError(ArithmeticError):
    """An internal cross-check left a residue above its tolerance."""


class SummationStrategy(str, Enum):
    NAIVE = "naive"
    COMPENSATED = "compensated"
    PAIRWISE = "pairwise"


# Block size for the pairwise reduction tree when no chunk is configured.
_PAIRWISE_BLOCK = 128

# Extended-precision evaluation shares the global mpmath context; the lock is
# re-entrant because kernel operations call each other.
_MP_LOCK = threading.RLock()


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision and summation policy for all numeric operations.

    ``working_precision`` is in bits of significand; 53 selects the binary64
    fast path.  ``parallel_chunk`` fixes the block size of the pairwise
    reduction tree, making the tree a function of (input length, chunk) only,
    so parallel and sequential execution produce identical bits.
    """

    working_precision: int = 53
    summation: SummationStrategy = SummationStrategy.COMPENSATED
    parallel_chunk: int | None = None

    def __post_init__(self) -> None:
        if self.working_precision < 53:
            raise PreconditionError(
                f"working_precision must be >= 53, got {self.working_precision}"
            )
        if self.parallel_chunk is not None and self.parallel_chunk < 1:
            raise PreconditionError(
                f"parallel_chunk must be positive, got {self.parallel_chunk}"
            )

    @property
    def extended(self) -> bool:
        return self.working_precision > 53


DEFAULT_CONFIG = PrecisionConfig()


@dataclass(frozen=True)
class ReducedFraction:
    """A fraction h/k in lowest terms, the argument of the cotangent sum.

    k = 1 is permitted (with h = 1) only because the value at integer
    arguments has its own closed form; every other use requires k >= 2 and
    1 <= h < k.
    """

    h: int
    k: int

    def __post_init__(self) -> None:
        if self.h < 1 or self.k < 1:
            raise ValueError(f"h and k must be positive, got ({self.h}, {self.k})")
        if self.k == 1:
            if self.h != 1:
                raise ValueError("k = 1 requires h = 1")
            return
        if not self.h < self.k:
            raise ValueError(f"need 1 <= h < k, got ({self.h}, {self.k})")
        if gcd(self.h, self.k) != 1:
            raise ValueError(f"h and k must be coprime, got ({self.h}, {self.k})")


@dataclass(frozen=True)
class ConstantEstimate:
    """A numerically extracted constant with truncation metadata.

    ``tail_bound`` is an a-posteriori estimate (not a certified enclosure) of
    the truncation/extrapolation error; re-estimating with a larger
    ``truncation_K`` shrinks it.
    """

    value: float
    truncation_K: int
    tail_bound: float


def _eval(cfg: PrecisionConfig, body: Callable):
    """Run ``body(mt, pi, real)`` in the numeric context selected by ``cfg``.

    ``mt`` is a math-like module (``math`` or ``mpmath``), ``pi`` the constant
    at working precision, and ``real`` the scalar constructor (``float`` or
    ``mpmath.mpf``).  Extended-precision bodies run entirely inside one
    ``mpmath.workprec`` scope so intermediate arithmetic keeps full precision.
    """
    if cfg.working_precision <= 53:
        return body(math, math.pi, float)
    with _MP_LOCK:
        with mpmath.workprec(cfg.working_precision):
            return body(mpmath, +mpmath.pi, mpmath.mpf)


def euler_gamma(cfg: PrecisionConfig = DEFAULT_CONFIG):
    """Euler-Mascheroni constant gamma = lim (H_n - log n) at working precision."""
    with _MP_LOCK:
        with mpmath.workprec(cfg.working_precision + 8):
            g = +mpmath.euler
    return g if cfg.extended else float(g)


def log_two_pi(cfg: PrecisionConfig = DEFAULT_CONFIG):
    """log(2*pi) at working precision."""
    with _MP_LOCK:
        with mpmath.workprec(cfg.working_precision + 8):
            v = mpmath.log(2 * (+mpmath.pi))
    return v if cfg.extended else float(v)


@lru_cache(maxsize=None)
def _bernoulli_exact(m: int) -> Fraction:
    # Defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m.
    if m == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(m):
        acc += comb(m + 1, j) * _bernoulli_exact(j)
    return -acc / (m + 1)


def bernoulli(m: int, max_index: int = 64) -> Fraction:
    """Exact Bernoulli number B_m (convention B_1 = -1/2) as a Fraction.

    Computed by the defining recurrence in exact rational arithmetic and
    cached.  Indices above ``max_index`` raise :class:`CapacityError`.
    """
    if m < 0:
        raise PreconditionError(f"Bernoulli index must be >= 0, got {m}")
    if m > max_index:
        raise CapacityError(f"Bernoulli index {m} exceeds maximum {max_index}")
    return _bernoulli_exact(m)


def _cot_kernel(r: int, k: int, mt, pi):
    """cot(pi*r/k) for 1 <= r <= k-1, inside an already-entered context.

    The quadrant is chosen from the exact integers r, k so that the tangent is
    only ever evaluated on (0, pi/4]; together with the exact reduction this
    keeps the relative error at a few ulps even when cot is large or near its
    zero crossing.
    """
    two_r = 2 * r
    if two_r == k:
        return 0.0 if mt is math else mpmath.mpf(0)
    if two_r > k:
        return -_cot_kernel(k - r, k, mt, pi)
    if 4 * r <= k:
        return 1 / mt.tan(pi * r / k)
    return mt.tan(pi * (k - two_r) / (2 * k))


def cot_reduced(m: int, h: int, k: int, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """cot(pi*m*h/k) with the angle reduced exactly in integer arithmetic.

    The residue r = (m*h) mod k is formed with Python integers before any
    floating-point work, so the result is accurate even when m*h is
    astronomically large.  Raises :class:`PoleError` when k divides m*h.
    """
    if k < 2:
        raise PreconditionError(f"need k >= 2, got {k}")
    r = (m * h) % k
    if r == 0:
        raise PoleError(f"cot(pi*{m}*{h}/{k}) hits a pole (k divides m*h)")
    return _eval(cfg, lambda mt, pi, real: _cot_kernel(r, k, mt, pi))


@lru_cache(maxsize=32)
def _cot_row(k: int, working_precision: int):
    """Row of cot(pi*r/k) for r = 1..k-1 (index 0 unused).

    Built once per (k, precision) with the antisymmetry cot(pi*(k-r)/k) =
    -cot(pi*r/k) applied exactly, so paired entries are exact negations.
    """
    cfg = PrecisionConfig(working_precision=working_precision)

    def build(mt, pi, real):
        row: list = [None] * k
        for r in range(1, k // 2 + 1):
            row[r] = _cot_kernel(r, k, mt, pi)
        for r in range(1, (k + 1) // 2):
            row[k - r] = -row[r]
        return row

    return _eval(cfg, build)


def _sum_naive(values: Iterable):
    total = 0.0
    for v in values:
        total = total + v
    return total


def _sum_compensated(values: Iterable):
    # Neumaier variant of Kahan summation; also exact enough for mpf inputs.
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def _combine_pairwise(block_sums: list):
    # Fixed binary tree: adjacent pairs per level, odd tail carried through.
    while len(block_sums) > 1:
        nxt = [
            block_sums[i] + block_sums[i + 1]
            for i in range(0, len(block_sums) - 1, 2)
        ]
        if len(block_sums) % 2:
            nxt.append(block_sums[-1])
        block_sums = nxt
    return block_sums[0]


def _sum_pairwise(values: Sequence, chunk: int | None):
    values = values if isinstance(values, (list, tuple)) else list(values)
    if not values:
        return 0.0
    block = chunk or _PAIRWISE_BLOCK
    ranges = [(i, min(i + block, len(values))) for i in range(0, len(values), block)]
    # Worker threads are only used for plain floats; block boundaries and the
    # combination tree are identical either way, so the bits cannot differ.
    if chunk is not None and len(ranges) > 3 and type(values[0]) is float:
        with ThreadPoolExecutor(max_workers=min(8, len(ranges))) as pool:
            block_sums = list(
                pool.map(lambda se: _sum_naive(values[se[0]:se[1]]), ranges)
            )
    else:
        block_sums = [_sum_naive(values[a:b]) for a, b in ranges]
    return _combine_pairwise(block_sums)


def sum_strategy(values, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """Sum a finite sequence under the configured strategy.

    The empty sum is 0.0.  Compensated (the default) and naive sums stream in
    input order; the pairwise sum reduces fixed-size blocks over a binary tree
    determined solely by (input length, ``parallel_chunk``), so repeated runs
    are bit-identical, with or without worker threads.
    """
    if cfg.summation is SummationStrategy.NAIVE:
        return _sum_naive(values)
    if cfg.summation is SummationStrategy.COMPENSATED:
        return _sum_compensated(values)
    return _sum_pairwise(values, cfg.parallel_chunk)
