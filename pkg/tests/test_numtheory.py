import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rexlab.numtheory import (
    DifferenceSet,
    bose_chowla,
    is_prime,
    prime_in_interval,
    prime_power_decompose,
    primes_up_to,
    quotient_set,
)

ODD_PRIMES_31 = [p for p in range(3, 32) if all(p % d for d in range(2, p))]


def trial_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def test_prime_count_below_a_million():
    assert len(primes_up_to(10**6)) == 78498


def test_sieve_matches_trial_division():
    assert primes_up_to(2000) == [n for n in range(2001) if trial_prime(n)]


def test_prime_in_interval_examples():
    assert prime_in_interval(8, 10) is None
    assert prime_in_interval(10, 20, (1, 4)) == 17
    assert prime_in_interval(2, 100, (3, 4)) == 83
    with pytest.raises(ValueError):
        prime_in_interval(2, 100, (2, 4))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 3000), st.integers(0, 200), st.integers(1, 12), st.integers(0, 11))
def test_prime_in_interval_is_largest_match(lo, width, m, r):
    r %= m
    if math.gcd(r, m) != 1:
        return
    hi = lo + width
    want = max((x for x in range(lo, hi + 1) if trial_prime(x) and x % m == r), default=None)
    assert prime_in_interval(lo, hi, (r, m)) == want


def sidon_by_sums(elements, modulus):
    """Quadruple oracle: pairwise sums (with repetition) are distinct mod the modulus."""
    sums = Counter((a + b) % modulus for a, b in itertools.combinations_with_replacement(elements, 2))
    return all(c == 1 for c in sums.values())


def test_bose_chowla_examples():
    assert (bose_chowla(3).elements, bose_chowla(3).modulus) == ((1, 6, 7), 8)
    assert (bose_chowla(5).elements, bose_chowla(5).modulus) == ((1, 3, 4, 8, 17), 24)


@pytest.mark.parametrize("p", [2] + ODD_PRIMES_31)
def test_bose_chowla_is_sidon(p):
    A = bose_chowla(p)
    assert len(A) == p and A.modulus == p * p - 1
    assert sidon_by_sums(A.elements, A.modulus)
    assert A.max_representation() <= 1


def test_quotient_set_examples():
    Q = quotient_set(5, 2)
    assert (Q.elements, Q.modulus) == ((1, 3, 4, 5, 8), 12)
    assert quotient_set(13, 2).modulus == 84


@pytest.mark.parametrize("p,t", [(p, t) for p in [3, 5, 7, 11, 13] for t in range(1, p) if (p - 1) % t == 0])
def test_quotient_set_difference_bound(p, t):
    Q = quotient_set(p, t)
    diffs = Counter((a - b) % Q.modulus for a in Q for b in Q if a != b)
    assert max(diffs.values(), default=0) <= t
    assert Q.max_representation() == max(diffs.values(), default=0)


def test_difference_set_counts():
    D = DifferenceSet((0, 1, 2), 10, 1)
    assert D.max_representation() == 2  # difference 1 arises as 1-0 and 2-1
    assert 2 in D and 3 not in D
    with pytest.raises(ValueError):
        DifferenceSet((2, 1), 10, 1)
    with pytest.raises(ValueError):
        DifferenceSet((0, 10), 10, 1)


def test_bose_chowla_rejects_composite():
    with pytest.raises(ValueError):
        bose_chowla(4)


def test_decomposition_examples():
    dec = prime_power_decompose(179, 3, balance=True, min_prime=3)
    assert list(dec.primes) == [5, 3, 3]
    assert prime_power_decompose(30, 3, min_prime=3) is None
    assert prime_power_decompose(3, 2) is None  # below 2^s


@settings(max_examples=60, deadline=None)
@given(st.integers(8, 3000), st.sampled_from([2, 3]))
def test_decomposition_sums_to_n(n, s):
    dec = prime_power_decompose(n, s, max_parts=20)
    if dec is None:
        return
    assert sum(p**s for p in dec.primes) == n
    assert all(is_prime(p) for p in dec.primes)
    assert list(dec.primes) == sorted(dec.primes, reverse=True)


def test_decomposition_uses_fewest_parts():
    # 2^3 + 2^3 = 16 needs two cubes; no single prime cube equals 16
    assert prime_power_decompose(16, 3).parts == 2
    assert prime_power_decompose(27, 3).parts == 1
