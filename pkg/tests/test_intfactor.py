import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edslab.intfactor import (
    Budget,
    factor,
    factor_completely,
    is_probable_prime,
    small_primes,
    valuation,
)


def test_small_primes():
    sp = small_primes(100)
    assert sp[:5] == (2, 3, 5, 7, 11)
    assert 97 in sp and 91 not in sp


def test_primality_known_values():
    assert is_probable_prime(2)
    assert is_probable_prime(2**61 - 1)  # Mersenne prime
    assert not is_probable_prime(2**67 - 1)  # Mersenne composite
    assert not is_probable_prime(1)
    assert not is_probable_prime(3215031751)  # strong pseudoprime to 2,3,5,7


def test_factor_stubborn_semiprime():
    # regression: balanced 44-bit semiprime that requires a correct Brent cycle
    n = 3344161 * 4728001
    pf = factor(n, Budget(5_000_000))
    assert pf.complete
    assert pf.factors == {3344161: 1, 4728001: 1}


def test_factor_completely():
    assert factor_completely(2**6 * 5**6) == {2: 6, 5: 6}
    assert factor_completely(-37) == {37: 1}
    with pytest.raises(ValueError):
        factor_completely(0)


def test_budget_exhaustion_gives_cofactor():
    # two ~90-bit primes: far beyond a tiny budget
    p = 2**89 - 1
    q = 618970019642690137449562091  # nearby prime
    n = p * q
    pf = factor(n, Budget(1000))
    if not pf.complete:
        assert pf.cofactor > 1
        assert pf.cofactor_is_composite
        rebuilt = pf.cofactor
        for f, e in pf.factors.items():
            rebuilt *= f**e
        assert rebuilt == n


@given(st.integers(min_value=2, max_value=10**9))
@settings(max_examples=60, deadline=None)
def test_factor_reconstructs(n):
    pf = factor(n, Budget(2_000_000))
    prod = pf.cofactor
    for p, e in pf.factors.items():
        assert is_probable_prime(p)
        prod *= p**e
    assert prod == n


def test_valuation():
    assert valuation(48, 2) == 4
    assert valuation(-48, 3) == 1
    assert valuation(7, 5) == 0
    with pytest.raises(ValueError):
        valuation(0, 2)
