"""Genus-2 curves y^2 = f(x) over F_p and their Jacobians.

Divisor classes are kept in Mumford form (u, v): u monic of degree <= 2,
deg v < deg u and u | v^2 - f.  The group law is Cantor's composition
followed by reduction, which needs a model with a single point at infinity,
so degree-six curves are moved to a quintic model by sending a rational
root of f to infinity.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import random
from typing import NamedTuple

from . import polynomials as pl
from .errors import (
    BadDegree,
    BoundExceeded,
    DegreeSixUnsupported,
    InvalidDivisor,
    NotAnnihilated,
    NotSquarefree,
)
from .factor import factorize
from .fields import FieldCtx, QuadExtCtx
from .weil import WeilPoly, char_poly_from_counts

COUNT_BOUND = 2**26
ENUM_BOUND = 97
MAX_REJECTIONS = 64


class Divisor(NamedTuple):
    u: tuple
    v: tuple

    def __str__(self):
        return f"({_fmt(self.u)}, {_fmt(self.v)})"


IDENTITY = Divisor((1,), ())


def _fmt(poly):
    if not poly:
        return "0"
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(mono if (c == 1 and mono) else f"{c}{mono}")
    return " + ".join(terms)


def _sextic_to_quintic(f, x0, p):
    """z^6 f(x0 + 1/z): the model where the root x0 sits at infinity."""
    out = pl.ZERO
    shifted = (1, x0 % p)  # 1 + x0*z
    power = pl.ONE
    for i, c in enumerate(f):
        z_pow = (0,) * (6 - i) + (1,)
        out = pl.add(out, pl.scale(pl.mul(power, z_pow, p), c, p), p)
        power = pl.mul(power, shifted, p)
    return out


@dataclass(frozen=True)
class Curve:
    """Smooth genus-2 curve y^2 = f(x) over F_p, f given lowest degree first."""

    p: int
    f: tuple
    ctx: FieldCtx = field(init=False, repr=False, compare=False)
    model: tuple = field(init=False, repr=False, compare=False)
    moved_root: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ctx = FieldCtx(self.p)
        f = pl.normalize(self.f, self.p)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "f", f)
        if pl.degree(f) not in (5, 6):
            raise BadDegree(f"f must have degree 5 or 6, got {pl.degree(f)}")
        if not pl.is_squarefree(f, self.p):
            raise NotSquarefree("f has a repeated root")
        model, root = f, None
        if pl.degree(f) == 6:
            root = next((x for x in range(self.p) if pl.evaluate(f, x, self.p) == 0), None)
            model = _sextic_to_quintic(f, root, self.p) if root is not None else None
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "moved_root", root)

    @property
    def degree(self):
        return pl.degree(self.f)

    def arithmetic_model(self):
        if self.model is None:
            raise DegreeSixUnsupported(
                "degree-6 model without a rational root of f: no quintic model available"
            )
        return self.model

    @property
    def ext(self):
        return _ext(self.p)


def curve_new(p, f):
    return Curve(p, tuple(f))


@lru_cache(maxsize=None)
def _ext(p):
    return QuadExtCtx(FieldCtx(p))


# ---------------------------------------------------------------------------
# Cantor's algorithm


def is_valid(c: Curve, d: Divisor) -> bool:
    p, f = c.p, c.arithmetic_model()
    u, v = d
    if not u or u[-1] != 1 or pl.degree(u) > 2 or pl.degree(v) >= pl.degree(u):
        return False
    if pl.normalize(u, p) != tuple(u) or pl.normalize(v, p) != tuple(v):
        return False
    return not pl.rem(pl.sub(pl.mul(v, v, p), f, p), u, p)


def _check(c, d):
    if not is_valid(c, d):
        raise InvalidDivisor(f"{d} is not a reduced Mumford divisor on {c}")


def _compose(f, p, d1, d2):
    u1, v1 = d1
    u2, v2 = d2
    g1, e1, e2 = pl.xgcd(u1, u2, p)
    if pl.degree(g1) == 0:
        # coprime supports, the common case
        s1, s2, s3 = e1, e2, pl.ZERO
        g = pl.ONE
    else:
        g, c1, c2 = pl.xgcd(g1, pl.add(v1, v2, p), p)
        s1, s2, s3 = pl.mul(c1, e1, p), pl.mul(c1, e2, p), c2
    u = pl.mul(u1, u2, p)
    w = pl.add(pl.mul(pl.mul(s1, u1, p), v2, p), pl.mul(pl.mul(s2, u2, p), v1, p), p)
    if s3:
        w = pl.add(w, pl.mul(s3, pl.add(pl.mul(v1, v2, p), f, p), p), p)
    if g != pl.ONE:
        gg = pl.mul(g, g, p)
        u = pl.divrem(u, gg, p)[0]
        w = pl.divrem(w, g, p)[0]
    v = pl.rem(w, u, p)
    return u, v


def _reduce(f, p, u, v):
    while pl.degree(u) > 2:
        u = pl.divrem(pl.sub(f, pl.mul(v, v, p), p), u, p)[0]
        v = pl.rem(pl.neg(v, p), u, p)
    u = pl.monic(u, p)
    return Divisor(u, pl.rem(v, u, p))


def _generic_add(f, p, d1, d2):
    u, v = _compose(f, p, d1, d2)
    return _reduce(f, p, u, v)


def _finish(f, p, uu, w):
    """Reduce the composed divisor (uu, w) with deg uu = 4, deg w <= 3.

    One reduction step suffices: (f - w^2)/uu has degree 1 or 2.
    """
    w3, w2, w1, w0 = w
    # f - w^2, ascending, padded to degree 6
    num = [
        f[0] - w0 * w0,
        f[1] - 2 * w0 * w1,
        f[2] - 2 * w0 * w2 - w1 * w1,
        f[3] - 2 * w0 * w3 - 2 * w1 * w2,
        f[4] - 2 * w1 * w3 - w2 * w2,
        f[5] - 2 * w2 * w3,
        -w3 * w3,
    ]
    # exact division by the monic quartic uu
    q2 = num[6] % p
    q1 = (num[5] - q2 * uu[3]) % p
    q0 = (num[4] - q1 * uu[3] - q2 * uu[2]) % p
    if q2:
        inv = pow(q2, -1, p)
        m1, m0 = q1 * inv % p, q0 * inv % p
        # v' = -w mod (x^2 + m1 x + m0)
        t2 = (w2 - w3 * m1) % p
        r1 = (w1 - w3 * m0 - t2 * m1) % p
        r0 = (w0 - t2 * m0) % p
        return Divisor((m0, m1, 1), pl.normalize((-r0, -r1), p))
    inv = pow(q1, -1, p)
    m0 = q0 * inv % p
    # -w evaluated at the root -m0
    r = (((w3 * -m0 + w2) * -m0 + w1) * -m0 + w0) % p
    return Divisor((m0, 1), pl.normalize((-r,), p))


def _add_deg2(f, p, d1, d2):
    (a0, a1, _), v1 = d1
    (b0, b1, _), v2 = d2
    c0, c1 = (v1 + (0, 0))[:2]
    d0, d1_ = (v2 + (0, 0))[:2]
    e1, e0 = b1 - a1, b0 - a0
    r = (e0 * e0 - a1 * e0 * e1 + a0 * e1 * e1) % p
    if r == 0:
        return None
    rinv = pow(r, -1, p)
    i1, i0 = -e1 * rinv, (e0 - a1 * e1) * rinv
    g1, g0 = c1 - d1_, c0 - d0
    s1 = (g1 * i0 + g0 * i1 - a1 * g1 * i1) % p
    s0 = (g0 * i0 - a0 * g1 * i1) % p
    w = (s1, s0 + s1 * b1, d1_ + s0 * b1 + s1 * b0, d0 + s0 * b0)
    uu = (
        a0 * b0,
        a0 * b1 + a1 * b0,
        a0 + a1 * b1 + b0,
        a1 + b1,
    )
    return _finish(f, p, uu, w)


def _double_deg2(f, p, d):
    (a0, a1, _), v = d
    c0, c1 = (v + (0, 0))[:2]
    e1, e0 = 2 * c1, 2 * c0
    r = (e0 * e0 - a1 * e0 * e1 + a0 * e1 * e1) % p
    if r == 0:
        return None
    rinv = pow(r, -1, p)
    i1, i0 = -e1 * rinv, (e0 - a1 * e1) * rinv
    # k = (f - v^2) / u, exact, degree 3; only k mod u is needed
    h = (f[0] - c0 * c0, f[1] - 2 * c0 * c1, f[2] - c1 * c1, f[3], f[4], f[5])
    k3 = h[5]
    k2 = h[4] - a1 * k3
    k1 = h[3] - a1 * k2 - a0 * k3
    k0 = h[2] - a1 * k1 - a0 * k2
    # k mod u
    g1 = (k1 - k3 * a0 - (k2 - k3 * a1) * a1) % p
    g0 = (k0 - (k2 - k3 * a1) * a0) % p
    s1 = (g1 * i0 + g0 * i1 - a1 * g1 * i1) % p
    s0 = (g0 * i0 - a0 * g1 * i1) % p
    w = (s1, s0 + s1 * a1, c1 + s0 * a1 + s1 * a0, c0 + s0 * a0)
    uu = (a0 * a0, 2 * a0 * a1, 2 * a0 + a1 * a1, 2 * a1)
    return _finish(f, p, uu, w)


def _add(c: Curve, d1: Divisor, d2: Divisor) -> Divisor:
    if d1 == IDENTITY:
        return d2
    if d2 == IDENTITY:
        return d1
    f, p = c.model, c.p
    if len(d1.u) == 3 and len(d2.u) == 3:
        if d1.u != d2.u:
            out = _add_deg2(f, p, d1, d2)
        elif d1.v == d2.v:
            out = _double_deg2(f, p, d1)
        else:
            out = None
        if out is not None:
            return out
    return _generic_add(f, p, d1, d2)


def cantor_add(c: Curve, d1: Divisor, d2: Divisor) -> Divisor:
    """Sum of two divisor classes, returned in reduced Mumford form."""
    _check(c, d1)
    _check(c, d2)
    return _add(c, d1, d2)


def neg(c: Curve, d: Divisor) -> Divisor:
    _check(c, d)
    return _neg(c, d)


def _neg(c, d):
    return Divisor(d.u, pl.neg(d.v, c.p))


def _mul(c, n, d):
    if n < 0:
        n, d = -n, _neg(c, d)
    result = IDENTITY
    while n:
        if n & 1:
            result = _add(c, result, d)
        n >>= 1
        if n:
            d = _add(c, d, d)
    return result


def scalar_mul(c: Curve, n: int, d: Divisor) -> Divisor:
    """n*d by double-and-add; negative n goes through neg."""
    _check(c, d)
    return _mul(c, n, d)


# ---------------------------------------------------------------------------
# Enumerating divisor classes over a fixed u


def classes_over(c: Curve, u) -> list:
    """Every v (sorted) such that (u, v) is a reduced divisor on c."""
    f, p, ctx = c.arithmetic_model(), c.p, c.ctx
    if pl.degree(u) == 0:
        return [pl.ZERO]
    if pl.degree(u) == 1:
        alpha = -u[0] % p
        roots = ctx.sqrt(pl.evaluate(f, alpha, p))
        return [pl.normalize((r,), p) for r in roots] if roots else []
    u0, u1 = u[0], u[1]
    disc = (u1 * u1 - 4 * u0) % p
    inv2 = (p + 1) // 2
    out = []
    if disc == 0:
        alpha = -u1 * inv2 % p
        fa = pl.evaluate(f, alpha, p)
        if fa == 0:
            return []
        roots = ctx.sqrt(fa)
        if roots is None:
            return []
        dfa = pl.evaluate(pl.derivative(f, p), alpha, p)
        for beta in roots:
            v1 = dfa * pow(2 * beta, -1, p) % p
            out.append(pl.normalize((beta - v1 * alpha, v1), p))
    elif ctx.legendre(disc) == 1:
        r = ctx.sqrt(disc)[0]
        alpha, beta = (-u1 + r) * inv2 % p, (-u1 - r) * inv2 % p
        ra = ctx.sqrt(pl.evaluate(f, alpha, p))
        rb = ctx.sqrt(pl.evaluate(f, beta, p))
        if ra is None or rb is None:
            return []
        inv_diff = pow(alpha - beta, -1, p)
        for sa in ra:
            for sb in rb:
                v1 = (sa - sb) * inv_diff % p
                out.append(pl.normalize((sa - v1 * alpha, v1), p))
    else:
        ext = c.ext
        # alpha = (-u1 + r*t)/2 with (r*t)^2 = disc
        r = ctx.sqrt(disc * pow(ext.ns, -1, p))[0]
        alpha = (-u1 * inv2 % p, r * inv2 % p)
        fa = (0, 0)
        for coef in reversed(f):
            fa = ext.add(ext.mul(fa, alpha), (coef, 0))
        roots = ext.sqrt(fa)
        if roots is None:
            return []
        inv_hi = pow(alpha[1], -1, p)
        for g_lo, g_hi in roots:
            v1 = g_hi * inv_hi % p
            out.append(pl.normalize((g_lo - v1 * alpha[0], v1), p))
    return sorted(out)


def _all_monic_u(p):
    yield pl.ONE
    for a in range(p):
        yield (a, 1)
    for u0 in range(p):
        for u1 in range(p):
            yield (u0, u1, 1)


def enumerate_jacobian(c: Curve, bound: int = ENUM_BOUND) -> list:
    """All elements of Jac(C)(F_p), identity first."""
    if c.p > bound:
        raise BoundExceeded(f"p={c.p} exceeds enumeration bound {bound}")
    return _enumerate(c)


@lru_cache(maxsize=64)
def _enumerate(c):
    return [Divisor(u, v) for u in _all_monic_u(c.p) for v in classes_over(c, u)]


def _decode_u(i, p):
    if i == 0:
        return pl.ONE
    i -= 1
    if i < p:
        return (i, 1)
    i -= p
    return (i % p, i // p, 1)


def _as_rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_divisor(c: Curve, seed=None) -> Divisor:
    """Uniformly random element of Jac(C)(F_p).

    Draw a monic u of degree <= 2 and a slot in 0..3 uniformly; keep the
    slot-th valid v over u if there is one.  Every class owns exactly one
    (u, slot) pair, so accepted draws are uniform.  ``seed`` may be an int
    or a ``random.Random`` whose state is advanced.
    """
    rng = _as_rng(seed)
    p = c.p
    total = 1 + p + p * p
    for _ in range(MAX_REJECTIONS):
        u = _decode_u(rng.randrange(total), p)
        slot = rng.randrange(4)
        vs = classes_over(c, u)
        if slot < len(vs):
            return Divisor(u, vs[slot])
    start = rng.randrange(p)
    for k in range(p):
        u = ((-(start + k)) % p, 1)
        vs = classes_over(c, u)
        if vs:
            return Divisor(u, vs[rng.randrange(len(vs))])
    return IDENTITY


# ---------------------------------------------------------------------------
# Point counting and the Frobenius polynomial


@lru_cache(maxsize=None)
def _square_table(p):
    table = bytearray(p)
    for x in range(1, (p + 1) // 2):
        table[x * x % p] = 1
    return table


def count_points(c: Curve, k: int, bound: int = COUNT_BOUND) -> int:
    """#C(F_{p^k}) for k in {1, 2} by summing quadratic characters."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    p, f = c.p, c.f
    if p**k > bound:
        raise BoundExceeded(f"p^{k}={p ** k} exceeds counting bound {bound}")
    sq = _square_table(p)
    if k == 1:
        total = 0
        for x in range(p):
            y2 = pl.evaluate(f, x, p)
            total += 1 if y2 == 0 else (2 if sq[y2] else 0)
        if c.degree == 5:
            at_inf = 1
        else:
            at_inf = 2 if sq[f[-1]] else 0
        return total + at_inf
    ns = c.ext.ns
    rev = list(reversed(f))
    total = 0
    for a in range(p):
        for b in range(p):
            lo = hi = 0
            for coef in rev:
                lo, hi = (lo * a + ns * hi * b + coef) % p, (lo * b + hi * a) % p
            if lo == 0 and hi == 0:
                total += 1
            elif sq[(lo * lo - ns * hi * hi) % p]:
                total += 2
    # every element of F_p is a square in F_{p^2}
    at_inf = 1 if c.degree == 5 else 2
    return total + at_inf


@lru_cache(maxsize=256)
def weil_poly(c: Curve) -> WeilPoly:
    return char_poly_from_counts(count_points(c, 1), count_points(c, 2), c.p)


def jacobian_order(c: Curve) -> int:
    return weil_poly(c).order


def element_order(c: Curve, d: Divisor, n: int, factors=None) -> int:
    """Exact order of d given a multiple n of it (peels primes off n)."""
    _check(c, d)
    if _mul(c, n, d) != IDENTITY:
        raise NotAnnihilated(f"{n} * {d} is not the identity")
    factors = factors if factors is not None else factorize(n)
    order = n
    for q in factors:
        while order % q == 0 and _mul(c, order // q, d) == IDENTITY:
            order //= q
    return order
