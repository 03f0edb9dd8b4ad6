"""Dense univariate polynomials as tuples of coefficients, lowest degree first.

Every function takes an optional modulus ``p``.  With ``p`` given the
coefficients live in F_p and are kept reduced to [0, p); with ``p=None``
they are integers and must stay inside the signed 128-bit range.  The zero
polynomial is the empty tuple.
"""

from .errors import (
    CoefficientOverflow,
    DegreeCapExceeded,
    DivisionByZeroPoly,
    NonMonicIntegerDivisor,
)

DEGREE_CAP = 16
INT_BOUND = 2**127

ZERO = ()
ONE = (1,)


def normalize(coeffs, p=None):
    """Canonical form: reduce mod p (if given) and strip trailing zeros."""
    if p is not None:
        c = [x % p for x in coeffs]
    else:
        c = list(coeffs)
        for x in c:
            if not -INT_BOUND <= x < INT_BOUND:
                raise CoefficientOverflow(f"coefficient {x} outside 128-bit range")
    while c and c[-1] == 0:
        c.pop()
    if len(c) - 1 > DEGREE_CAP:
        raise DegreeCapExceeded(f"degree {len(c) - 1} exceeds cap {DEGREE_CAP}")
    return tuple(c)


def degree(a):
    """Degree, with deg(0) = -1."""
    return len(a) - 1


def add(a, b, p=None):
    if len(a) < len(b):
        a, b = b, a
    return normalize([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)], p)


def sub(a, b, p=None):
    n = max(len(a), len(b))
    return normalize(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p
    )


def neg(a, p=None):
    return normalize([-x for x in a], p)


def scale(a, k, p=None):
    return normalize([k * x for x in a], p)


def mul(a, b, p=None):
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return normalize(out, p)


def evaluate(a, x, p=None):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
        if p is not None:
            acc %= p
    return acc


def derivative(a, p=None):
    return normalize([i * a[i] for i in range(1, len(a))], p)


def monic(a, p):
    if not a:
        return ZERO
    inv = pow(a[-1], -1, p)
    return normalize([x * inv for x in a], p)


def divrem(num, den, p=None):
    """Quotient and remainder with num = q*den + r and deg r < deg den."""
    if not den:
        raise DivisionByZeroPoly("division by the zero polynomial")
    if p is None:
        if den[-1] != 1:
            raise NonMonicIntegerDivisor("integer division needs a monic divisor")
        lead_inv = 1
    else:
        lead_inv = pow(den[-1], -1, p)
    r = list(num)
    dd = len(den) - 1
    if len(r) - 1 < dd:
        return ZERO, normalize(r, p)
    q = [0] * (len(r) - dd)
    for k in range(len(r) - 1, dd - 1, -1):
        c = r[k] * lead_inv
        if p is not None:
            c %= p
        q[k - dd] = c
        if c:
            for j in range(dd + 1):
                r[k - dd + j] -= c * den[j]
            if p is not None:
                for j in range(dd + 1):
                    r[k - dd + j] %= p
    return normalize(q, p), normalize(r[:dd], p)


def rem(num, den, p=None):
    return divrem(num, den, p)[1]


def xgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g and g monic (g = 0 iff a = b = 0)."""
    r0, r1 = normalize(a, p), normalize(b, p)
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divrem(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return ZERO, ZERO, ZERO
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def gcd(a, b, p):
    return xgcd(a, b, p)[0]


def is_squarefree(f, p):
    """True iff gcd(f, f') is a nonzero constant."""
    g = gcd(f, derivative(f, p), p)
    return degree(g) == 0


# longer names for the public API
poly_divrem = divrem
poly_gcd = gcd
poly_is_squarefree = is_squarefree
