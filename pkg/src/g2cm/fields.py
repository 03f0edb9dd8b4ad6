"""Arithmetic in the prime field F_p and its quadratic extension F_{p^2}.

Residues are plain Python ints in [0, p).  Elements of F_{p^2} are pairs
(lo, hi) standing for lo + hi*t with t^2 = ns.
"""

from dataclasses import dataclass, field

from .errors import CompositeModulus, DivisionByZero, EvenCharacteristic, G2CMError
from .factor import is_prime

MAX_MODULUS = 2**64


@dataclass(frozen=True)
class FieldCtx:
    p: int

    def __post_init__(self):
        p = self.p
        if p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if p >= MAX_MODULUS:
            raise G2CMError(f"modulus {p} exceeds 64 bits")
        if not is_prime(p):
            raise CompositeModulus(f"{p} is not prime")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            raise ValueError("exponent must be non-negative")
        return pow(a, e, self.p)

    def legendre(self, a):
        a %= self.p
        if a == 0:
            return 0
        return 1 if pow(a, (self.p - 1) // 2, self.p) == 1 else -1

    def sqrt(self, a):
        """Both square roots of a as a tuple, (0,) for a = 0, or None."""
        a %= self.p
        if a == 0:
            return (0,)
        if self.legendre(a) != 1:
            return None
        r = tonelli_shanks(a, self.p)
        return tuple(sorted((r, self.p - r)))


def tonelli_shanks(a: int, p: int) -> int:
    """A square root of the quadratic residue a modulo the odd prime p."""
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def fp_new(p: int) -> FieldCtx:
    return FieldCtx(p)


def fp_arith(ctx: FieldCtx, a: int, b: int, kind: str) -> int:
    """Dispatch one of add/sub/mul/div/pow on residues of ctx."""
    ops = {"add": ctx.add, "sub": ctx.sub, "mul": ctx.mul, "div": ctx.div, "pow": ctx.pow}
    try:
        op = ops[kind]
    except KeyError:
        raise ValueError(f"unknown operation {kind!r}") from None
    return op(a, b)


def legendre(ctx: FieldCtx, a: int) -> int:
    return ctx.legendre(a)


def fp_sqrt(ctx: FieldCtx, a: int):
    return ctx.sqrt(a)


@dataclass(frozen=True)
class QuadExtCtx:
    """F_p[t]/(t^2 - ns) for the smallest non-residue ns >= 2."""

    base: FieldCtx
    ns: int = field(init=False)

    def __post_init__(self):
        ns = 2
        while self.base.legendre(ns) != -1:
            ns += 1
        object.__setattr__(self, "ns", ns)

    @property
    def p(self):
        return self.base.p

    def elt(self, lo, hi=0):
        return (lo % self.p, hi % self.p)

    def add(self, x, y):
        p = self.p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def sub(self, x, y):
        p = self.p
        return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def neg(self, x):
        p = self.p
        return (-x[0] % p, -x[1] % p)

    def mul(self, x, y):
        p = self.p
        a, b = x
        c, d = y
        return ((a * c + self.ns * b * d) % p, (a * d + b * c) % p)

    def conj(self, x):
        return (x[0], -x[1] % self.p)

    def norm(self, x):
        """x * conj(x), an element of F_p."""
        return (x[0] * x[0] - self.ns * x[1] * x[1]) % self.p

    def inv(self, x):
        n = self.norm(x)
        if n == 0:
            raise DivisionByZero("0 has no inverse")
        ninv = pow(n, -1, self.p)
        return (x[0] * ninv % self.p, -x[1] * ninv % self.p)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e):
        if e < 0:
            raise ValueError("exponent must be non-negative")
        result = (1, 0)
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def legendre(self, x):
        # x is a square in F_{p^2} iff its norm is a square in F_p
        if x == (0, 0):
            return 0
        return self.base.legendre(self.norm(x))

    def sqrt(self, x):
        """Both square roots of x, ((0, 0),) for zero, or None."""
        p, base = self.p, self.base
        a, b = x[0] % p, x[1] % p
        if a == 0 and b == 0:
            return ((0, 0),)
        if b == 0:
            roots = base.sqrt(a)
            if roots is not None:
                root = (roots[0], 0)
            else:
                # a = ns * s^2, so sqrt(a) = s*t
                root = (0, base.sqrt(a * base.inv(self.ns))[0])
            return tuple(sorted((root, self.neg(root))))
        nroots = base.sqrt(self.norm((a, b)))
        if nroots is None:
            return None
        inv2 = (p + 1) // 2
        for n in nroots:
            xs = base.sqrt((a + n) * inv2 % p)
            if xs is not None and xs[0] != 0:
                lo = xs[0]
                root = (lo, b * base.inv(2 * lo) % p)
                return tuple(sorted((root, self.neg(root))))
        raise AssertionError("sqrt in F_p^2 failed")  # pragma: no cover


def fp2_new(ctx: FieldCtx) -> QuadExtCtx:
    return QuadExtCtx(ctx)
