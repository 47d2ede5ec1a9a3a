"""Exact finite-sum evaluation.

The central object is the cotangent sum

    c0(h/k) = -sum_{m=1}^{k-1} (m/k) * cot(pi*m*h/k),

together with the closed forms it feeds (the zeta-type value at the origin for
both parities of the twist order alpha) and a family of finite trigonometric
identities: a floor function written as an exponential sum, the vanishing
cotangent-cosine sum, and the fractional part recovered from a
cotangent-sine sum.  Every divisibility decision is made in exact integer
arithmetic; floating point only enters once angles are reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .numerics import (
    DEFAULT_CONFIG,
    CapacityError,
    NumericalConsistencyError,
    PoleError,
    PrecisionConfig,
    PreconditionError,
    ReducedFraction,
    _cot_kernel,
    _cot_row,
    _eval,
    bernoulli,
    sum_strategy,
)

__all__ = [
    "EstermannValue",
    "FracIdentityResult",
    "MAX_DERIVATIVE_ORDER",
    "c0",
    "cot_cos_identity_residual",
    "cot_derivative",
    "cot_row_sum_zero",
    "estermann_at_zero",
    "floor_via_exponential_sum",
    "frac_via_cot_sin",
]

# Derivative polynomials have integer coefficients that grow like n!, so the
# supported order is capped; raise the cap explicitly if you need more.
MAX_DERIVATIVE_ORDER = 16

# Tolerances for the floor identity's internal cross-checks (binary64 scale;
# the identity doubles as a health check of the whole kernel).
_FLOOR_IMAG_TOL = 1e-9
_FLOOR_ROUND_TOL = 1e-6


@dataclass(frozen=True)
class EstermannValue:
    """Value at the origin for twist order ``alpha``, split into parts.

    For odd ``alpha`` the value is the rational B_{alpha+1}/(2(alpha+1)) and
    ``imag_part`` is exactly zero.  For even ``alpha`` the prefactor
    (-i/2)^(alpha+1) is purely imaginary, so ``real_part`` is 1/4 when
    ``alpha`` is 0 and exactly zero otherwise.
    """

    real_part: float
    imag_part: float
    alpha: int


@dataclass(frozen=True)
class FracIdentityResult:
    """Fractional part {n*a/b} recovered from the cotangent-sine sum."""

    n: int
    a: int
    b: int
    value: float


def c0(frac: ReducedFraction, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """The cotangent sum c0(h/k) = -sum_{m=1}^{k-1} (m/k) cot(pi*m*h/k).

    Cost O(k); terms are summed in increasing m under the configured strategy.
    """
    if frac.k < 2:
        raise ValueError(f"c0 requires k >= 2, got k = {frac.k}")
    h, k = frac.h, frac.k
    row = _cot_row(k, cfg.working_precision)

    def body(mt, pi, real):
        terms = []
        r = 0
        for m in range(1, k):
            r += h
            if r >= k:
                r -= k
            terms.append((row[r] * m) / k)
        return -sum_strategy(terms, cfg)

    return _eval(cfg, body)


@lru_cache(maxsize=None)
def _cot_derivative_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients (low order first) of P_n with cot^(n) = P_n(cot).

    P_0(u) = u and P_{n+1}(u) = -(1 + u^2) * P_n'(u), from cot' = -(1 + cot^2).
    """
    coeffs: tuple[int, ...] = (0, 1)
    for _ in range(n):
        deriv = tuple(i * c for i, c in enumerate(coeffs))[1:]
        out = [0] * (len(deriv) + 2)
        for i, c in enumerate(deriv):
            out[i] -= c
            out[i + 2] -= c
        coeffs = tuple(out)
    return coeffs


def _horner(coeffs: tuple[int, ...], u):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * u + c
    return acc


def cot_derivative(n: int, r: int, k: int, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """n-th derivative of cot at pi*r/k via exact derivative polynomials."""
    if n < 0:
        raise PreconditionError(f"derivative order must be >= 0, got {n}")
    if n > MAX_DERIVATIVE_ORDER:
        raise CapacityError(
            f"derivative order {n} exceeds maximum {MAX_DERIVATIVE_ORDER}"
        )
    if r % k == 0:
        raise PoleError(f"cot derivative at pi*{r}/{k} hits a pole")
    coeffs = _cot_derivative_coeffs(n)

    def body(mt, pi, real):
        u = _cot_kernel(r % k, k, mt, pi)
        return _horner(coeffs, u)

    return _eval(cfg, body)


def estermann_at_zero(
    frac: ReducedFraction, alpha: int, cfg: PrecisionConfig = DEFAULT_CONFIG
) -> EstermannValue:
    """Closed-form value at the origin for twist order ``alpha``.

    k = 1:      (-1)^(alpha+1) * B_{alpha+1} / (2(alpha+1))
    odd alpha:  B_{alpha+1} / (2(alpha+1))
    even alpha: (-i/2)^(alpha+1) sum_{m=1}^{k-1} (m/k) cot^(alpha)(pi*m*h/k)
                + 1/4 when alpha = 0.
    """
    if alpha < 0:
        raise PreconditionError(f"alpha must be >= 0, got {alpha}")

    def as_real(x: float):
        # 0.0 and 0.25 are exact binary values; no context needed.
        return mpmath.mpf(x) if cfg.extended else x

    if frac.k == 1 or alpha % 2 == 1:
        value = bernoulli(alpha + 1) / (2 * (alpha + 1))
        if frac.k == 1 and alpha % 2 == 0:
            value = -value
        num, den = value.numerator, value.denominator
        real = _eval(cfg, lambda mt, pi, R: R(num) / den)
        return EstermannValue(real_part=real, imag_part=as_real(0.0), alpha=alpha)

    if alpha > MAX_DERIVATIVE_ORDER:
        raise CapacityError(
            f"even alpha {alpha} exceeds derivative maximum {MAX_DERIVATIVE_ORDER}"
        )
    h, k = frac.h, frac.k
    coeffs = _cot_derivative_coeffs(alpha)
    row = _cot_row(k, cfg.working_precision)
    # (-i/2)^(alpha+1) with alpha+1 odd is purely imaginary: -i/2^(alpha+1)
    # when alpha = 0 (mod 4) and +i/2^(alpha+1) when alpha = 2 (mod 4).
    sign = -1 if alpha % 4 == 0 else 1
    scale = 2 ** (alpha + 1)

    def body(mt, pi, real):
        terms = []
        r = 0
        for m in range(1, k):
            r += h
            if r >= k:
                r -= k
            terms.append((_horner(coeffs, row[r]) * m) / k)
        s = sum_strategy(terms, cfg)
        return (sign * s) / scale

    imag = _eval(cfg, body)
    return EstermannValue(
        real_part=as_real(0.25) if alpha == 0 else as_real(0.0),
        imag_part=imag,
        alpha=alpha,
    )


@lru_cache(maxsize=32)
def _unit_row(b: int, working_precision: int):
    """cos/sin of 2*pi*j/b for j = 0..b-1, at the requested precision."""
    cfg = PrecisionConfig(working_precision=working_precision)

    def build(mt, pi, real):
        cos_row = [real(1)] * b
        sin_row = [real(0)] * b
        for j in range(1, b):
            theta = (2 * pi * j) / b
            cos_row[j] = mt.cos(theta)
            sin_row[j] = mt.sin(theta)
        return cos_row, sin_row

    return _eval(cfg, build)


def _floor_identity_parts(a: int, b: int, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """Real and imaginary parts of the exponential-sum expression for floor(a/b)."""
    cot = _cot_row(b, cfg.working_precision)
    cos_row, sin_row = _unit_row(b, cfg.working_precision)
    a_mod = a % b

    def body(mt, pi, real):
        re_terms = []
        im_terms = []
        j = 0
        for m in range(1, b):
            j += a_mod
            if j >= b:
                j -= b
            c = cot[m]
            wr = cos_row[j]
            wi = sin_row[j]
            re_terms.append(wr + c * wi)
            im_terms.append(wi - c * wr)
        re = sum_strategy(re_terms, cfg)
        im = sum_strategy(im_terms, cfg)
        half_b = 2 * b
        value_re = real(a) / b + real(1) / half_b - real(1) / 2 + re / half_b
        value_im = im / half_b
        return value_re, value_im

    return _eval(cfg, body)


def floor_via_exponential_sum(
    a: int, b: int, cfg: PrecisionConfig = DEFAULT_CONFIG
) -> int:
    """floor(a/b) evaluated through its finite exponential-sum identity.

        floor(a/b) = a/b + 1/(2b) - 1/2
                     + (1/(2b)) sum_{m=1}^{b-1} (1 - i*cot(pi*m/b)) e^(2*pi*i*m*a/b)

    The complex value is checked before it is trusted: the imaginary residue
    must stay below 1e-9 and the real part within 1e-6 of an integer equal to
    the exact floor, else :class:`NumericalConsistencyError` is raised.
    """
    if a < 1 or b < 2:
        raise PreconditionError(f"need a >= 1 and b >= 2, got ({a}, {b})")
    value_re, value_im = _floor_identity_parts(a, b, cfg)
    if abs(value_im) > _FLOOR_IMAG_TOL:
        raise NumericalConsistencyError(
            f"imaginary residue {float(value_im):.3e} exceeds {_FLOOR_IMAG_TOL:.0e} "
            f"for floor({a}/{b})"
        )
    nearest = int(round(float(value_re)))
    if abs(value_re - nearest) > _FLOOR_ROUND_TOL:
        raise NumericalConsistencyError(
            f"real part {float(value_re)!r} is {abs(float(value_re) - nearest):.3e} "
            f"from the nearest integer for floor({a}/{b})"
        )
    if nearest != a // b:
        raise NumericalConsistencyError(
            f"exponential sum rounded to {nearest}, exact floor({a}/{b}) = {a // b}"
        )
    return nearest


def cot_cos_identity_residual(
    a: int, b: int, n: int, cfg: PrecisionConfig = DEFAULT_CONFIG
):
    """sum_{m=1}^{b-1} cot(pi*m/b) cos(2*pi*m*n*a/b), which vanishes identically.

    The returned value is a pure numerical residue; callers assert on its size.
    """
    if a < 1 or b < 2 or n < 1:
        raise PreconditionError(f"need a, n >= 1 and b >= 2, got ({a}, {b}, {n})")
    cot = _cot_row(b, cfg.working_precision)
    cos_row, _ = _unit_row(b, cfg.working_precision)
    step = (n * a) % b

    def body(mt, pi, real):
        terms = []
        j = 0
        for m in range(1, b):
            j += step
            if j >= b:
                j -= b
            terms.append(cot[m] * cos_row[j])
        return sum_strategy(terms, cfg)

    return _eval(cfg, body)


def frac_via_cot_sin(
    a: int, b: int, n: int, cfg: PrecisionConfig = DEFAULT_CONFIG
) -> FracIdentityResult:
    """Fractional part {n*a/b} from the cotangent-sine sum (requires b !| n*a).

        {n*a/b} = 1/2 - (1/(2b)) sum_{m=1}^{b-1} cot(pi*m/b) sin(2*pi*m*n*a/b)
    """
    if a < 1 or b < 2 or n < 1:
        raise PreconditionError(f"need a, n >= 1 and b >= 2, got ({a}, {b}, {n})")
    step = (n * a) % b
    if step == 0:
        raise PreconditionError(
            f"identity requires b to not divide n*a, got b = {b}, n*a = {n * a}"
        )
    cot = _cot_row(b, cfg.working_precision)
    _, sin_row = _unit_row(b, cfg.working_precision)

    def body(mt, pi, real):
        terms = []
        j = 0
        for m in range(1, b):
            j += step
            if j >= b:
                j -= b
            terms.append(cot[m] * sin_row[j])
        s = sum_strategy(terms, cfg)
        return real(1) / 2 - s / (2 * b)

    return FracIdentityResult(n=n, a=a, b=b, value=_eval(cfg, body))


def cot_row_sum_zero(b: int, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """sum_{m=1}^{b-1} cot(pi*m/b); zero in exact arithmetic, returned as residue."""
    if b < 2:
        raise PreconditionError(f"need b >= 2, got {b}")
    cot = _cot_row(b, cfg.working_precision)
    return _eval(cfg, lambda mt, pi, real: sum_strategy(cot[1:], cfg))
