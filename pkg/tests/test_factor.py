import math
import random

import pytest

from g2cm.factor import factorize, is_prime, is_squarefree, primes_below


def naive_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if naive_is_prime(n)]


def test_is_prime_strong_pseudoprimes():
    # base-2 strong pseudoprimes and a Carmichael number
    for n in (2047, 3215031751, 561, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime(2**61 - 1)
    assert is_prime(18446744073709551557)  # largest 64-bit prime


def test_factorize_examples():
    assert factorize(28) == {2: 2, 7: 1}
    assert factorize(176) == {2: 4, 11: 1}
    assert factorize(1) == {}


def test_factorize_two_28_bit_primes():
    rng = random.Random(7)
    for _ in range(5):
        ps = []
        while len(ps) < 2:
            q = rng.randrange(2**27, 2**28) | 1
            if is_prime(q):
                ps.append(q)
        n = ps[0] * ps[1]
        expected = {q: ps.count(q) for q in sorted(ps)}
        assert factorize(n, seed=1) == expected


def test_factorize_round_trip_random():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randrange(1, 2**64)
        f = factorize(n)
        assert math.prod(q**e for q, e in f.items()) == n
        assert all(is_prime(q) for q in f)


def test_factorize_range():
    with pytest.raises(Exception):
        factorize(0)
    with pytest.raises(Exception):
        factorize(2**64)


def test_prime_square_cofactor():
    q = 1000003
    assert factorize(q * q * 6) == {2: 1, 3: 1, q: 2}


def test_squarefree_and_sieve():
    assert primes_below(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert is_squarefree(10) and not is_squarefree(12)
