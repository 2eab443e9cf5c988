import math
from fractions import Fraction

import pytest

from doublezeta.bernoulli import BernoulliCache, bernoulli_number, bernoulli_range
from doublezeta.rationals import binomial


def bernoulli_oracle(n: int) -> Fraction:
    """Independent double-sum (Worpitzky) formula, B_1 = -1/2 convention."""
    total = Fraction(0)
    for k in range(n + 1):
        inner = Fraction(0)
        for j in range(k + 1):
            inner += (-1) ** j * binomial(k, j) * Fraction(j**n if n > 0 else 1)
        total += inner / (k + 1)
    return total


def test_stated_values():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(3) == 0


@pytest.mark.parametrize("n, expected", [(2, Fraction(1, 6)), (12, Fraction(-691, 2730))])
def test_derived_values_against_oracle(n, expected):
    assert bernoulli_oracle(n) == expected
    assert bernoulli_number(n) == expected


@pytest.mark.parametrize("n", range(0, 25))
def test_matches_oracle_entrywise(n):
    assert bernoulli_number(n) == bernoulli_oracle(n)


def test_range_examples():
    assert bernoulli_range(1) == [1, Fraction(-1, 2)]
    assert bernoulli_range(4) == [
        1,
        Fraction(-1, 2),
        Fraction(1, 6),
        0,
        Fraction(-1, 30),
    ]
    assert bernoulli_range(7)[-1] == 0


def test_rejects_negative():
    with pytest.raises(ValueError):
        bernoulli_number(-1)
    with pytest.raises(ValueError):
        bernoulli_range(-1)


def test_odd_vanishing_sweep():
    cache = BernoulliCache()
    for n in range(3, 120, 2):
        assert cache.get(n) == 0


def test_sign_alternation_of_even_values():
    cache = BernoulliCache()
    for m in range(1, 50):
        assert (1 if cache.get(2 * m) > 0 else -1) == (-1) ** (m + 1)


def test_cache_determinism_and_fill_order():
    a = BernoulliCache()
    b = BernoulliCache()
    a.get(30)
    for n in (7, 30, 2, 19):
        b.get(n)
    assert [a.get(i) for i in range(31)] == [b.get(i) for i in range(31)]
    assert a.high_water >= 30


def test_generating_function_consistency():
    from doublezeta.series import bernoulli_gf

    cache = BernoulliCache()
    gf = bernoulli_gf(32, cache)
    for n in range(33):
        assert gf[n] == cache.get(n) / math.factorial(n)
