"""Degree-four Weil polynomials X^4 - a1 X^3 + a2 X^2 - p a1 X + p^2."""

from dataclasses import dataclass

from .errors import InconsistentCounts


@dataclass(frozen=True)
class WeilPoly:
    p: int
    a1: int
    a2: int

    @property
    def coeffs(self):
        """Descending-degree coefficients [1, -a1, a2, -p*a1, p^2]."""
        return [1, -self.a1, self.a2, -self.p * self.a1, self.p * self.p]

    @property
    def ascending(self):
        return tuple(reversed(self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    @property
    def order(self):
        """P(1), the number of F_p-rational points of the Jacobian."""
        return self(1)

    def __str__(self):
        terms = []
        for deg, c in zip(range(4, -1, -1), self.coeffs):
            if c == 0:
                continue
            mono = "" if deg == 0 else ("X" if deg == 1 else f"X^{deg}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else f"{mag}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def weil_validate(P: WeilPoly) -> bool:
    """True iff every complex root of P has absolute value sqrt(p).

    P factors as (X^2 - y1 X + p)(X^2 - y2 X + p) where y1, y2 are the roots
    of Y^2 - a1 Y + (a2 - 2p).  All roots have modulus sqrt(p) exactly when
    y1, y2 are real with |y| <= 2 sqrt(p).  Every comparison is done on
    integers, squaring where needed.
    """
    p, a1, a2 = P.p, P.a1, P.a2
    if a1 * a1 > 16 * p or abs(a2) > 6 * p:
        return False
    if a1 * a1 - 4 * (a2 - 2 * p) < 0:
        return False
    # g(Y) = Y^2 - a1 Y + a2 - 2p must be >= 0 at Y = +-2 sqrt(p), and its
    # vertex a1/2 must lie inside [-2 sqrt(p), 2 sqrt(p)] (already implied above)
    s = 2 * p + a2
    return s >= 0 and s * s >= 4 * a1 * a1 * p


def char_poly_from_counts(n1: int, n2: int, p: int) -> WeilPoly:
    """Recover P(X) from #C(F_p) and #C(F_{p^2})."""
    a1 = p + 1 - n1
    twice_a2 = a1 * a1 + n2 - p * p - 1
    if twice_a2 % 2:
        raise InconsistentCounts(f"N1={n1}, N2={n2} give a non-integral a2")
    P = WeilPoly(p, a1, twice_a2 // 2)
    if not weil_validate(P):
        raise InconsistentCounts(f"N1={n1}, N2={n2} violate the Weil bounds for p={p}")
    return P


def hasse_weil_ok(n1: int, p: int) -> bool:
    """|N1 - (p+1)| <= 4 sqrt(p), exactly."""
    d = n1 - (p + 1)
    return d * d <= 16 * p
