"""Quartic CM fields K = Q(eta), eta = i*sqrt(a + b*xi), and Frobenius elements.

The real subfield is Q(sqrt(D)) with integer ring Z + xi*Z, where
xi = (1 + sqrt(D))/2 for D = 1 (mod 4) and xi = sqrt(D) otherwise.  Inside
that ring xi satisfies xi^2 = t*xi - n with t its trace and n its norm,
which is all the arithmetic below needs.

A Frobenius element omega = c1 + c2*xi + (c3 + c4*xi)*eta has characteristic
polynomial P(X) = X^4 - a1 X^3 + a2 X^2 - p a1 X + p^2.  The theorem
predicates work with residues modulo an odd prime ell.
"""

from dataclasses import dataclass, field
import math

from . import polynomials as pl
from .errors import (
    CompositeNorm,
    DegenerateField,
    EllNotPrime,
    EvenEll,
    EvenNorm,
    IrrationalNorm,
    NotSquarefree,
    NotTotallyPositive,
    WeilViolation,
)
from .factor import is_prime, is_squarefree
from .weil import WeilPoly, weil_validate

SQUARE_MINUS_ONE = (1, -2, 1)  # (X - 1)^2, ascending


@dataclass(frozen=True)
class CMField:
    D: int
    a: int
    b: int

    def __post_init__(self):
        if self.D < 2:
            raise DegenerateField(f"D={self.D}: the real subfield must be real quadratic")
        if not is_squarefree(self.D):
            raise NotSquarefree(f"D={self.D} is not squarefree")
        # a + b*xi = (2a + b*t +- b*sqrt(t^2 - 4n))/2 under the two embeddings
        lhs = 2 * self.a + self.b * self.t
        if lhs <= 0 or lhs * lhs <= self.b * self.b * (self.t * self.t - 4 * self.n):
            raise NotTotallyPositive(f"a + b*xi is not totally positive for {self}")

    @property
    def branch(self):
        """'d1' when D = 1 (mod 4), else 'd23'."""
        return "d1" if self.D % 4 == 1 else "d23"

    @property
    def t(self):
        return 1 if self.D % 4 == 1 else 0

    @property
    def n(self):
        return (1 - self.D) // 4 if self.D % 4 == 1 else -self.D

    def xi_values(self):
        """xi under the two real embeddings (floats)."""
        r = math.sqrt(self.D)
        if self.t:
            return (1 + r) / 2, (1 - r) / 2
        return r, -r

    def real_norm(self, x, y):
        """Norm from Q(sqrt D) to Q of x + y*xi."""
        return x * x + self.t * x * y + self.n * y * y


def cm_field_new(D, a, b):
    return CMField(D, a, b)


def primitivity_screen(K: CMField) -> str:
    """'biquadratic-suspect' iff Norm(a + b*xi) is a perfect square."""
    N = K.real_norm(K.a, K.b)
    if N >= 0 and math.isqrt(N) ** 2 == N:
        return "biquadratic-suspect"
    return "non-biquadratic"


@dataclass(frozen=True)
class FrobeniusElement:
    c1: int
    c2: int
    c3: int
    c4: int

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3, self.c4))


def _square_xi(K, x, y):
    """(x + y*xi)^2 as (rational, xi) coefficients."""
    return x * x - K.n * y * y, 2 * x * y + K.t * y * y


def norm_components(K: CMField, w: FrobeniusElement):
    """omega * conj(omega) = (c1 + c2 xi)^2 + (a + b xi)(c3 + c4 xi)^2 in {1, xi}."""
    r0, r1 = _square_xi(K, w.c1, w.c2)
    s0, s1 = _square_xi(K, w.c3, w.c4)
    a, b = K.a, K.b
    return (
        r0 + a * s0 - K.n * b * s1,
        r1 + a * s1 + b * s0 + K.t * b * s1,
    )


def frobenius_norm(K: CMField, w: FrobeniusElement) -> int:
    const, xi_coeff = norm_components(K, w)
    if xi_coeff != 0:
        raise IrrationalNorm(f"xi-coefficient of the norm is {xi_coeff}")
    if const % 2 == 0:
        raise EvenNorm(f"norm {const} is even")
    if not is_prime(const):
        raise CompositeNorm(f"norm {const} is not prime")
    return const


def _trace_poly(K, w, p):
    # P = (X^2 - s X + p)(X^2 - s' X + p) with s = 2(c1 + c2 xi), s' its conjugate
    a1 = 2 * (2 * w.c1 + K.t * w.c2)
    a2 = 2 * p + 4 * K.real_norm(w.c1, w.c2)
    return a1, a2


def frobenius_char_poly(K: CMField, w: FrobeniusElement, p: int) -> WeilPoly:
    c1, c2, D = w.c1, w.c2, K.D
    if K.branch == "d23":
        a1, a2 = 4 * c1, 2 * p + 4 * (c1 * c1 - c2 * c2 * D)
    else:
        c = 2 * c1 + c2
        a1, a2 = 2 * c, 2 * p + c * c - c2 * c2 * D
    if (a1, a2) != _trace_poly(K, w, p):
        raise AssertionError("closed-form P(X) disagrees with the trace/norm derivation")
    P = WeilPoly(p, a1, a2)
    if not weil_validate(P):
        raise WeilViolation(f"{P} is not a Weil polynomial for p={p}")
    return P


def remainder_mod_sq(P: WeilPoly, ell: int | None = None):
    """R(X) = P(X) mod (X - 1)^2 as ascending (r0, r1), optionally mod ell."""
    _, r = pl.divrem(P.ascending, SQUARE_MINUS_ONE)
    r = tuple(r) + (0,) * (2 - len(r))
    if ell is not None:
        r = tuple(x % ell for x in r)
    return r


def remainder_closed_form(branch, c1_or_c, c2, D, p):
    """The displayed R(X) coefficients (r0, r1) for either branch."""
    if branch == "d23":
        c1 = c1_or_c
        s = c1 * c1 - c2 * c2 * D
        return (
            p * p - 2 * p - 4 * s + 8 * c1 - 3,
            4 * (1 - 3 * c1 - (c1 - 1) * p + 2 * s),
        )
    c = c1_or_c
    return (
        p * p - 2 * p - 3 + 4 * c - c * c + c2 * c2 * D,
        (4 - 2 * c) * p + 2 * c * c - 6 * c - 2 * c2 * c2 * D + 4,
    )


def branch_poly_mod(branch, c1_or_c, c2, D, p, ell):
    """Ascending coefficients of P(X) mod ell from the branch formula."""
    if branch == "d23":
        a1 = 4 * c1_or_c
        a2 = 2 * p + 4 * (c1_or_c * c1_or_c - c2 * c2 * D)
    elif branch == "d1":
        a1 = 2 * c1_or_c
        a2 = 2 * p + c1_or_c * c1_or_c - c2 * c2 * D
    else:
        raise ValueError(f"unknown branch {branch!r}")
    return tuple(x % ell for x in (p * p, -p * a1, a2, -a1, 1))


def q_bound(K: CMField) -> int:
    a, b, D = K.a, K.b, K.D
    if K.branch == "d23":
        return max(a, D, a * a - b * b * D)
    return max(a, D, 4 * a * (a + b) - b * b * (D - 1), a * D + 2 * b * (D - 1))


@dataclass
class TheoremVerdict:
    theorem: str
    ell: int
    hypotheses_met: bool
    conclusion_holds: bool
    details: dict = field(default_factory=dict)

    @property
    def counterexample(self):
        return self.hypotheses_met and not self.conclusion_holds

    def to_json(self):
        return {
            "theorem": self.theorem,
            "ell": self.ell,
            "hypotheses_met": self.hypotheses_met,
            "conclusion_holds": self.conclusion_holds,
            "details": self.details,
        }


def _check_ell(ell):
    if ell == 2:
        raise EvenEll("ell must be odd; ell = 2 gives p = 1 (mod 2) trivially")
    if not is_prime(ell):
        raise EllNotPrime(f"{ell} is not prime")


def theorem_ed1_check(branch, c1_or_c, c2, D, p, ell) -> TheoremVerdict:
    """Non-cyclic l-Sylow (so (X-1)^2 | P mod ell) forces p = 1 (mod ell).

    ``c1_or_c`` is c1 on the 'd23' branch and c = 2*c1 + c2 on the 'd1' branch.
    """
    _check_ell(ell)
    c1_or_c, c2, D, p = (x % ell for x in (c1_or_c, c2, D, p))
    P = branch_poly_mod(branch, c1_or_c, c2, D, p, ell)
    R = pl.rem(P, SQUARE_MINUS_ONE, ell)
    divisible = not R
    nondegenerate = p != 0 and c2 != 0 and D != 0
    R = tuple(R) + (0,) * (2 - len(R))
    return TheoremVerdict(
        theorem="ed1",
        ell=ell,
        hypotheses_met=nondegenerate and divisible,
        conclusion_holds=p == 1,
        details={
            "branch": branch,
            "residues": {"c1_or_c": c1_or_c, "c2": c2, "D": D, "p": p},
            "R_mod_ell": list(R),
            # the two roots of the quadratic in p obtained from R = 0 and P(1) = 0
            "candidate_p": sorted({1, (2 * c1_or_c - 1 if branch == "d23" else c1_or_c - 1) % ell}),
        },
    )


def theorem_c2_check(c1, p, ell) -> TheoremVerdict:
    """The case ell | c2: P = (X^2 - 2 c1 X + p)^2 mod ell on both branches.

    If moreover P(1) = 0 (mod ell) then p = 2 c1 - 1 and P = (X-1)^2 (X-p)^2.
    The c2 = 0 hypothesis is built in, so ``conclusion_holds`` is the
    conjunction of every identity that applies to (c1, p).
    """
    _check_ell(ell)
    c1, p = c1 % ell, p % ell
    quad = (p, -2 * c1 % ell, 1)
    expected = pl.mul(quad, quad, ell)
    # c2 = 0, so D does not enter; c = 2 c1 on the d1 branch
    holds = all(
        pl.normalize(branch_poly_mod(br, x, 0, 1, p, ell), ell) == expected
        for br, x in (("d23", c1), ("d1", 2 * c1))
    )
    p_at_one = pl.evaluate(expected, 1, ell)
    details = {"c1": c1, "p": p, "P_mod_ell": list(expected), "P1_mod_ell": p_at_one}
    if p_at_one == 0:
        x_minus_1 = (ell - 1, 1)
        x_minus_p = (-p % ell, 1)
        factored = pl.mul(pl.mul(x_minus_1, x_minus_1, ell), pl.mul(x_minus_p, x_minus_p, ell), ell)
        p_rel = p == (2 * c1 - 1) % ell
        holds = holds and p_rel and factored == expected
        details["p_equals_2c1_minus_1"] = p_rel
    return TheoremVerdict("c2", ell, True, holds, details)
