"""Infinite-series representations of c0(1/b) and harmonic-sum partials.

c0(1/b) has a conditionally convergent series over integers not divisible
by b,

    c0(1/b) = (1/pi) sum_{a>=1, b !| a} b*(1 - 2*{a/b}) / a,

an equivalent floor form whose partial sums define

    G_L(b) = sum_{1<=a<=L, b !| a} [ (b/a)*(1 + 2*floor(a/b)) - 2 ],

and supporting sums: sin(a*theta)/a partials, plain and divisibility-filtered
harmonic partials, and the decomposition check tying G_L(b) to the weighted
floor sum S(L;b).  All series are summed in increasing index order - for the
conditionally convergent ones the order is part of the contract - and all
fractional parts and floors come from exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import asymptotics
from .numerics import (
    DEFAULT_CONFIG,
    PrecisionConfig,
    PreconditionError,
    _eval,
    euler_gamma,
    sum_strategy,
)

__all__ = [
    "SeriesTruncation",
    "c0_series_partial",
    "c0_series_with_truncation",
    "divisible_harmonic_sum",
    "g_lemma_decomposition_check",
    "g_partial",
    "harmonic_sum",
    "sin_series_partial",
]


@dataclass(frozen=True)
class SeriesTruncation:
    """A truncation length plus an a-posteriori tail estimate for it."""

    limit_L: int
    tail_estimate: float


def c0_series_partial(b: int, A: int, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """Partial sum of (1/pi) sum_{a<=A, b !| a} b*(1 - 2*{a/b})/a.

    With {a/b} = (a mod b)/b each term is (b - 2*(a mod b))/a exactly, so the
    only rounding is one division per term plus the final 1/pi scale.
    Convergence should be judged at whole-period truncations A = m*b.
    """
    if b < 2:
        raise PreconditionError(f"need b >= 2, got {b}")
    if A < b:
        raise PreconditionError(f"need A >= b, got A = {A}, b = {b}")

    def body(mt, pi, real):
        def terms():
            rem = 0
            for a in range(1, A + 1):
                rem += 1
                if rem == b:
                    rem = 0
                    continue
                yield real(b - 2 * rem) / a

        return sum_strategy(terms(), cfg) / pi

    return _eval(cfg, body)


def c0_series_with_truncation(
    b: int, A: int, cfg: PrecisionConfig = DEFAULT_CONFIG
) -> tuple[float, SeriesTruncation]:
    """c0_series_partial plus a dyadic tail estimate at period-aligned cuts.

    Requires b | A so both the full and the half partial sums sit on whole
    periods; the tail estimate is the difference between them.
    """
    if A % b != 0:
        raise PreconditionError(f"need b | A for the tail estimate, got ({b}, {A})")
    if A < 2 * b:
        raise PreconditionError(f"need A >= 2*b, got A = {A}, b = {b}")
    half = (A // (2 * b)) * b
    value = c0_series_partial(b, A, cfg)
    value_half = c0_series_partial(b, half, cfg)
    return value, SeriesTruncation(limit_L=A, tail_estimate=abs(value - value_half))


def g_partial(b: int, L: int, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """G_L(b) = sum_{1<=a<=L, b !| a} [ (b/a)*(1 + 2*floor(a/b)) - 2 ].

    Each term equals (b + 2*b*floor(a/b) - 2*a)/a with the floor taken in
    exact integers; pi * c0_series_partial(b, L) agrees with this sum
    term-by-term.
    """
    if b < 2:
        raise PreconditionError(f"need b >= 2, got {b}")
    if L < b:
        raise PreconditionError(f"need L >= b, got L = {L}, b = {b}")

    def body(mt, pi, real):
        def terms():
            q = 0
            rem = 0
            for a in range(1, L + 1):
                rem += 1
                if rem == b:
                    rem = 0
                    q += 1
                    continue
                yield real(b + 2 * b * q - 2 * a) / a

        return sum_strategy(terms(), cfg)

    return _eval(cfg, body)


def sin_series_partial(theta, N: int, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """Partial sum sum_{a<=N} sin(a*theta)/a for 0 < theta < 2*pi.

    Converges (boundedly, oscillating) to (pi - theta)/2 on the open interval;
    arguments on or outside the boundary raise, since the limit jumps there.
    """
    if N < 1:
        raise PreconditionError(f"need N >= 1, got {N}")

    def body(mt, pi, real):
        th = real(theta)
        if not 0 < th < 2 * pi:
            raise PreconditionError(
                f"theta must lie strictly inside (0, 2*pi), got {theta!r}"
            )
        return sum_strategy((mt.sin(a * th) / a for a in range(1, N + 1)), cfg)

    return _eval(cfg, body)


def harmonic_sum(x, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """Exact partial sum sum_{n <= floor(x)} 1/n, summed in increasing n."""
    if x < 1:
        raise PreconditionError(f"need x >= 1, got {x!r}")
    n_max = int(x)

    def body(mt, pi, real):
        return sum_strategy((real(1) / n for n in range(1, n_max + 1)), cfg)

    return _eval(cfg, body)


def divisible_harmonic_sum(b: int, L: int, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """sum of 1/a over multiples of b up to L, i.e. (1/b) * H(floor(L/b))."""
    if b < 2:
        raise PreconditionError(f"need b >= 2, got {b}")
    if L < b:
        raise PreconditionError(
            f"no multiples of {b} up to {L}; need L >= b"
        )
    return _eval(cfg, lambda mt, pi, real: harmonic_sum(L // b, cfg) / b)


def g_lemma_decomposition_check(
    b: int, L: int, cfg: PrecisionConfig = DEFAULT_CONFIG
):
    """Residual of the harmonic decomposition of G_L(b).

    Returns

        G_L(b) - [ -log(L/b) + b*(log L + gamma) - 2L + S(L;b) ].

    The decomposition as displayed drops a bounded additive constant (the
    gamma of the subtracted divisible-index harmonic sum), so the residual
    tends to -gamma plus O(b/L); callers assert boundedness, not vanishing.
    """
    if b < 2:
        raise PreconditionError(f"need b >= 2, got {b}")
    if L % b != 0:
        raise PreconditionError(f"need b | L, got L = {L}, b = {b}")
    if L // b < 10:
        raise PreconditionError(f"need L/b >= 10, got {L // b}")
    g_val = g_partial(b, L, cfg)
    s_val = asymptotics.s_sum_direct(L, b, cfg)
    gamma = euler_gamma(cfg)

    def body(mt, pi, real):
        predicted = (
            -mt.log(real(L) / b) + b * (mt.log(real(L)) + gamma) - 2 * L + s_val
        )
        return g_val - predicted

    return _eval(cfg, body)
