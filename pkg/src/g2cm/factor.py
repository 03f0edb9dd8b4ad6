"""Primality testing and integer factorization for 64-bit inputs.

Trial division by the primes below 10**6 handles the small part; whatever
cofactor survives is split with Pollard's rho using Brent's cycle finding.
"""

import math
import random

from .errors import G2CMError

TRIAL_LIMIT = 10**6
MAX_INPUT = 2**64

# Deterministic for n < 3.3 * 10**24, which covers every 64-bit input.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_small_primes = None


def primes_below(limit):
    """Sieve of Eratosthenes; returns the primes < limit as a list."""
    if limit < 3:
        return []
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _trial_primes():
    global _small_primes
    if _small_primes is None:
        _small_primes = primes_below(TRIAL_LIMIT)
    return _small_primes


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2**64 (and well beyond)."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # the batched gcd overshot; replay one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, seed: int = 0) -> dict[int, int]:
    """Prime factorization of 1 <= n < 2**64 as an ordered {prime: exponent} dict.

    >>> factorize(176)
    {2: 4, 11: 1}
    """
    if not 1 <= n < MAX_INPUT:
        raise G2CMError(f"factorize expects 1 <= n < 2**64, got {n}")
    factors: dict[int, int] = {}
    for q in _trial_primes():
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            factors[q] = e
    if n > 1:
        rng = random.Random(seed)
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                factors[m] = factors.get(m, 0) + 1
                continue
            r = math.isqrt(m)
            if r * r == m:
                stack += [r, r]
                continue
            d = pollard_brent(m, rng)
            stack += [d, m // d]
    return dict(sorted(factors.items()))


def divisors(factors: dict[int, int]) -> list[int]:
    """All positive divisors of the number with the given factorization, sorted."""
    divs = [1]
    for q, e in factors.items():
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorize(n).values())
