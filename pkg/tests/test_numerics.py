"""Kernel tests: constants, Bernoulli numbers, reduced cotangent, summation."""

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from cotsum import (
    CapacityError,
    PoleError,
    PrecisionConfig,
    PreconditionError,
    ReducedFraction,
    SummationStrategy,
    bernoulli,
    cot_reduced,
    euler_gamma,
    log_two_pi,
    sum_strategy,
)
from cotsum.numerics import _combine_pairwise, _sum_naive

ULP = 2.0**-52


# ---------------------------------------------------------------- constants


def gamma_oracle_harmonic() -> float:
    """gamma from the harmonic sum with its endpoint corrections.

    H_N = log N + gamma + 1/(2N) - 1/(12 N^2) + O(N^-4); at N = 10^6 the
    truncation is far below binary64 resolution.
    """
    n = 10**6
    h = math.fsum(1.0 / i for i in range(1, n + 1))
    return h - math.log(n) - 1.0 / (2 * n) + 1.0 / (12 * n * n)


def gamma_oracle_alternating() -> float:
    """Second, independent route: the alternating series

        sum_{n>=1} (-1)^(n-1) log(n)/n = log(2)^2/2 - gamma*log(2),

    accelerated by repeated averaging of its partial sums.
    """
    terms = [(-1) ** (n - 1) * math.log(n) / n for n in range(1, 4001)]
    partials = []
    acc = 0.0
    for t in terms:
        acc += t
        partials.append(acc)
    # repeated averaging: each pass halves the oscillating component
    row = partials[-600:]
    for _ in range(40):
        row = [(row[i] + row[i + 1]) / 2 for i in range(len(row) - 1)]
    alt_sum = row[len(row) // 2]
    log2 = math.log(2.0)
    return (log2 * log2 / 2 - alt_sum) / log2


def test_euler_gamma_against_two_independent_oracles(cfg):
    g = euler_gamma(cfg)
    assert abs(g - gamma_oracle_harmonic()) < 5e-13
    assert abs(g - gamma_oracle_alternating()) < 1e-9
    assert 0.577215 < g < 0.577216


def test_euler_gamma_precision_monotone(cfg, cfg_ext):
    g53 = euler_gamma(cfg)
    g113 = euler_gamma(cfg_ext)
    assert abs(float(g113) - g53) < 1e-15  # first 15 digits agree


def test_euler_gamma_is_harmonic_limit(cfg):
    # the O(1/x) remainder of H(x) - log(x) at x = 10^6
    n = 10**6
    h = math.fsum(1.0 / i for i in range(1, n + 1))
    assert abs(euler_gamma(cfg) - (h - math.log(n))) < 1e-6


def test_log_two_pi_value_and_identities(cfg):
    v = log_two_pi(cfg)
    assert v == pytest.approx(1.8378770664093456, abs=4 * ULP)
    assert math.exp(v) / (2 * math.pi) == pytest.approx(1.0, abs=4 * ULP)
    assert v - math.log(2) - math.log(math.pi) == pytest.approx(0.0, abs=4 * ULP)


def test_log_two_pi_extended_digits(cfg_ext):
    v = log_two_pi(cfg_ext)
    with mpmath.workprec(160):
        ref = mpmath.log(2 * mpmath.pi)
        assert abs(v - ref) < mpmath.mpf(2) ** -110


# ---------------------------------------------------------------- bernoulli


def test_bernoulli_small_values():
    assert bernoulli(0) == Fraction(1)
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == Fraction(0)
    assert bernoulli(4) == Fraction(-1, 30)


def test_bernoulli_odd_indices_vanish():
    for m in range(3, 64, 2):
        assert bernoulli(m) == 0


def test_bernoulli_recurrence_exact():
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for every m >= 1, with no tolerance
    for m in range(1, 65):
        acc = sum(math.comb(m + 1, j) * bernoulli(j) for j in range(m + 1))
        assert acc == 0


def test_bernoulli_capacity_and_domain():
    with pytest.raises(CapacityError):
        bernoulli(65)
    bernoulli(65, max_index=70)  # explicit cap raise is allowed
    with pytest.raises(PreconditionError):
        bernoulli(-1)


# ------------------------------------------------------------- cot_reduced


def test_cot_reduced_examples(cfg):
    assert cot_reduced(1, 1, 4, cfg) == pytest.approx(1.0, abs=8 * ULP)
    assert cot_reduced(2, 1, 4, cfg) == 0.0
    with pytest.raises(PoleError):
        cot_reduced(4, 1, 4, cfg)


def test_cot_reduced_huge_argument(cfg):
    # (10^9 + 1) mod 3 = 2, so the value is cot(2*pi/3) = -1/sqrt(3)
    v = cot_reduced(10**9 + 1, 1, 3, cfg)
    assert v == cot_reduced(2, 1, 3, cfg)
    assert v == pytest.approx(-1 / math.sqrt(3), rel=8 * ULP)


def test_cot_reduced_antisymmetry_exhaustive(cfg):
    # cot(pi*(k-r)/k) = -cot(pi*r/k), bitwise by construction
    for k in range(2, 201):
        for r in range(1, k):
            assert cot_reduced(r, 1, k, cfg) == -cot_reduced(k - r, 1, k, cfg)


@given(
    k=st.integers(min_value=2, max_value=10**6),
    r=st.integers(min_value=1, max_value=10**6),
    m_scale=st.integers(min_value=0, max_value=10**12),
)
def test_cot_reduced_matches_high_precision_oracle(k, r, m_scale):
    r = r % k
    m = r + m_scale * k  # same residue, astronomically larger argument
    if r == 0:
        with pytest.raises(PoleError):
            cot_reduced(m if m else k, 1, k)
        return
    got = cot_reduced(m, 1, k)
    if 2 * r == k:
        assert got == 0.0  # cot(pi/2) is exactly zero
        return
    with mpmath.workprec(80):
        ref = mpmath.cot(mpmath.pi * r / k)
        assert abs(got - ref) <= 8 * ULP * abs(ref)


def test_cot_reduced_requires_k_at_least_two():
    with pytest.raises(PreconditionError):
        cot_reduced(1, 1, 1)


def test_cot_reduced_extended_precision(cfg_ext):
    v = cot_reduced(1, 1, 3, cfg_ext)
    with mpmath.workprec(160):
        ref = mpmath.cot(mpmath.pi / 3)
        assert abs(v - ref) < mpmath.mpf(2) ** -105


# ------------------------------------------------------------ sum_strategy


def test_sum_basic(cfg):
    assert sum_strategy([1.0, 2.0, 3.0], cfg) == 6.0
    assert sum_strategy([], cfg) == 0.0
    assert sum_strategy(iter([]), PrecisionConfig(summation=SummationStrategy.NAIVE)) == 0.0
    assert sum_strategy([], PrecisionConfig(summation=SummationStrategy.PAIRWISE)) == 0.0


def test_sum_compensated_beats_naive_drift():
    values = [0.1] * 10**6
    comp = sum_strategy(values, PrecisionConfig(summation=SummationStrategy.COMPENSATED))
    naive = sum_strategy(values, PrecisionConfig(summation=SummationStrategy.NAIVE))
    assert abs(comp - 100000.0) < 1e-8
    assert abs(comp - 100000.0) <= abs(naive - 100000.0)


def test_pairwise_tree_is_deterministic_and_documented():
    import random

    rng = random.Random(7)
    values = [rng.uniform(-1, 1) for _ in range(10**5)]
    cfg = PrecisionConfig(summation=SummationStrategy.PAIRWISE, parallel_chunk=97)
    first = sum_strategy(values, cfg)
    second = sum_strategy(values, cfg)
    assert first == second
    # reference: naive block sums combined over the adjacent-pair tree
    blocks = [_sum_naive(values[i:i + 97]) for i in range(0, len(values), 97)]
    assert first == _combine_pairwise(blocks)


def test_pairwise_default_block_matches_reference():
    values = [float(i) for i in range(1, 1001)]
    cfg = PrecisionConfig(summation=SummationStrategy.PAIRWISE)
    blocks = [_sum_naive(values[i:i + 128]) for i in range(0, len(values), 128)]
    assert sum_strategy(values, cfg) == _combine_pairwise(blocks)


@given(st.lists(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), max_size=300))
def test_all_strategies_agree_with_fsum(values):
    ref = math.fsum(values)
    scale = max(1.0, math.fsum(abs(v) for v in values))
    for strategy in SummationStrategy:
        got = sum_strategy(values, PrecisionConfig(summation=strategy))
        assert abs(got - ref) <= 1e-9 * scale


def test_compensated_matches_exact_rational_reference(cfg):
    # c0-style weighted cotangent terms, against the exact sum of the same
    # binary64 values
    from cotsum.numerics import _cot_row

    for k in (101, 1009, 9973):
        row = _cot_row(k, 53)
        terms = [(row[r] * m) / k for m, r in zip(range(1, k), _residues(3, k))]
        exact = sum(Fraction(t) for t in terms)
        got = sum_strategy(terms, cfg)
        scale = max(float(abs(exact)), math.fsum(abs(t) for t in terms))
        assert abs(got - float(exact)) <= 1e-12 * scale


def _residues(h, k):
    r = 0
    for _ in range(1, k):
        r = (r + h) % k
        yield r


# ------------------------------------------------------------ config types


def test_precision_config_validation():
    with pytest.raises(PreconditionError):
        PrecisionConfig(working_precision=52)
    with pytest.raises(PreconditionError):
        PrecisionConfig(parallel_chunk=0)
    assert PrecisionConfig(working_precision=113).extended
    assert not PrecisionConfig().extended


def test_reduced_fraction_invariants():
    ReducedFraction(1, 2)
    ReducedFraction(3, 8)
    ReducedFraction(1, 1)  # integer-argument branch
    with pytest.raises(ValueError):
        ReducedFraction(2, 4)
    with pytest.raises(ValueError):
        ReducedFraction(4, 3)
    with pytest.raises(ValueError):
        ReducedFraction(0, 5)
    with pytest.raises(ValueError):
        ReducedFraction(2, 1)


@given(h=st.integers(min_value=1, max_value=500), k=st.integers(min_value=2, max_value=500))
def test_reduced_fraction_accepts_exactly_the_coprime_pairs(h, k):
    if h < k and math.gcd(h, k) == 1:
        frac = ReducedFraction(h, k)
        assert (frac.h, frac.k) == (h, k)
    else:
        with pytest.raises(ValueError):
            ReducedFraction(h, k)
