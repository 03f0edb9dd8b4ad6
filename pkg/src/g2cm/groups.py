"""Structure of Jac(C)(F_p) as an abstract abelian group.

Torsion is counted on the enumerated group: for each prime ell | N the map
x -> ell*x is tabulated once and iterated, which gives #J[ell^j] for every j
without any discrete logarithms.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import math

from . import jacobian as jac
from .cm import CMField, FrobeniusElement, q_bound
from .errors import EllEqualsP, EllNotPrime, Exhausted, G2CMError, NotCyclic
from .factor import factorize, is_prime


@dataclass(frozen=True)
class GroupStructure:
    """Invariant factors n1 | n2 | ... | nk (trivial factors dropped)."""

    invariant_factors: tuple

    @property
    def order(self):
        return math.prod(self.invariant_factors)

    @property
    def padded(self):
        """The factors left-padded with 1 to the four-term chain n1 | n2 | n3 | n4."""
        return (1,) * (4 - len(self.invariant_factors)) + tuple(self.invariant_factors)

    def violations(self, p):
        """Failures of the shape constraints on Jac(C)(F_p); empty when all hold."""
        out = []
        n = self.invariant_factors
        if len(n) > 4:
            out.append(f"{len(n)} invariant factors")
        if any(n[i + 1] % n[i] for i in range(len(n) - 1)):
            out.append(f"divisibility chain broken: {n}")
        if len(n) <= 4 and (p - 1) % self.padded[1]:
            out.append(f"n2={self.padded[1]} does not divide p-1={p - 1}")
        return out

    def to_json(self):
        return list(self.invariant_factors)


def structure_from_partitions(parts: dict) -> GroupStructure:
    """Combine per-prime exponent partitions {ell: [e1 >= e2 >= ...]} by CRT."""
    width = max((len(e) for e in parts.values()), default=0)
    factors = [1] * width
    for ell, exps in parts.items():
        for i, e in enumerate(exps):
            factors[i] *= ell**e
    return GroupStructure(tuple(sorted(f for f in factors if f > 1)))


def partition_from_counts(ell, counts):
    """Exponents of the ell-part from #J[ell^j], j = 0..v (descending)."""
    ranks = []
    for j in range(1, len(counts)):
        r = ilog(counts[j] // counts[j - 1], ell)
        if r is None or counts[j] % counts[j - 1]:
            raise G2CMError(f"torsion counts {counts} are not a chain of ell-powers")
        ranks.append(r)  # number of cyclic factors of order >= ell^j
    width = ranks[0] if ranks else 0
    return [sum(1 for r in ranks if r > i) for i in range(width)]


def ilog(n, ell):
    """Exact r with ell**r == n, or None."""
    r = 0
    while n % ell == 0 and n > 1:
        n //= ell
        r += 1
    return r if n == 1 else None


def _index(elements):
    return {d: i for i, d in enumerate(elements)}


def torsion_counts(c: jac.Curve, ell: int, bound: int = jac.ENUM_BOUND):
    """[#J[ell^0], #J[ell^1], ..., #J[ell^v]] where ell^v || N."""
    elements = jac.enumerate_jacobian(c, bound)
    return list(_torsion_counts(c, ell, len(elements)))


@lru_cache(maxsize=256)
def _torsion_counts(c, ell, n):
    v = 0
    while n % ell ** (v + 1) == 0:
        v += 1
    if v <= 1:
        return (1, ell) if v else (1,)
    elements = jac._enumerate(c)
    index = _index(elements)
    ident = index[jac.IDENTITY]
    image = [index[jac._mul(c, ell, d)] for d in elements]
    frontier = [ident]
    preimages = [[] for _ in range(n)]
    for i, j in enumerate(image):
        if i != ident:
            preimages[j].append(i)
    counts = [1]
    for _ in range(v):
        frontier = [i for j in frontier for i in preimages[j]]
        counts.append(counts[-1] + len(frontier))
    return tuple(counts)


def group_structure(c: jac.Curve, bound: int = jac.ENUM_BOUND) -> GroupStructure:
    n = len(jac.enumerate_jacobian(c, bound))
    parts = {}
    for ell in factorize(n):
        parts[ell] = partition_from_counts(ell, torsion_counts(c, ell, bound))
    return structure_from_partitions(parts)


@dataclass
class SylowReport:
    ell: int
    valuation: int
    rank: int
    cyclic: bool
    torsion_counts: list = field(default_factory=list)
    generator: object = None

    def to_json(self):
        out = {
            "ell": self.ell,
            "valuation": self.valuation,
            "rank": self.rank,
            "cyclic": self.cyclic,
            "torsion_counts": self.torsion_counts,
        }
        if self.generator is not None:
            out["generator"] = [list(self.generator.u), list(self.generator.v)]
        return out


def sylow_rank(c: jac.Curve, ell: int, bound: int = jac.ENUM_BOUND) -> SylowReport:
    if not is_prime(ell):
        raise EllNotPrime(f"{ell} is not prime")
    counts = torsion_counts(c, ell, bound)
    v = len(counts) - 1
    rank = ilog(counts[1], ell) if v else 0
    return SylowReport(ell, v, rank, rank <= 1, counts)


@dataclass(frozen=True)
class EmbeddingDegreeReport:
    ell: int
    k: int

    def to_json(self):
        return {"ell": self.ell, "k": self.k}


def embedding_degree(p: int, ell: int) -> EmbeddingDegreeReport:
    """Multiplicative order of p modulo the prime ell."""
    if ell == p:
        raise EllEqualsP("embedding degree is undefined for ell = p")
    if not is_prime(ell):
        raise EllNotPrime(f"{ell} is not prime")
    if p % ell == 0:
        raise EllEqualsP(f"{ell} divides {p}")
    k = ell - 1
    for q in factorize(ell - 1) if ell > 2 else {}:
        while k % q == 0 and pow(p, k // q, ell) == 1:
            k //= q
    return EmbeddingDegreeReport(ell, k)


@dataclass(frozen=True)
class SylowGenerator:
    generator: jac.Divisor
    order: int
    trials: int


def sylow_generator_search(c: jac.Curve, ell: int, max_trials: int = 1000, seed=0,
                           bound: int = jac.ENUM_BOUND) -> SylowGenerator:
    """Draw random divisors until one projects onto a generator of the ell-Sylow.

    Raises NotCyclic up front when enumeration shows rank >= 2, and Exhausted
    if max_trials draws produce no generator.
    """
    n = jac.jacobian_order(c)
    fac = factorize(n)
    v = fac.get(ell, 0)
    if v == 0:
        raise G2CMError(f"{ell} does not divide |Jac(C)(F_p)| = {n}")
    if c.p <= bound and not sylow_rank(c, ell, bound).cyclic:
        raise NotCyclic(f"the {ell}-Sylow subgroup has rank >= 2")
    rng = jac._as_rng(seed)
    cofactor = n // ell**v
    for trial in range(1, max_trials + 1):
        g = jac._mul(c, cofactor, jac.random_divisor(c, rng))
        if jac._mul(c, ell ** (v - 1), g) != jac.IDENTITY:
            if jac._mul(c, ell**v, g) != jac.IDENTITY:  # pragma: no cover - Lagrange
                raise G2CMError("projected element is not in the Sylow subgroup")
            return SylowGenerator(g, ell**v, trial)
    raise Exhausted(f"no generator of order {ell}^{v} in {max_trials} trials")


def is_sylow_generator(c, g, ell, v):
    """Order certificate: ell^v g = 0 and ell^(v-1) g != 0."""
    return (jac._mul(c, ell**v, g) == jac.IDENTITY
            and jac._mul(c, ell ** (v - 1), g) != jac.IDENTITY)


def q_bound_check(structure: GroupStructure, K: CMField, w: FrobeniusElement):
    """Check the bound on odd primes dividing n2 against CM data.

    Only meaningful when structure really is Jac(C)(F_p) for a curve with CM
    by O_K and Frobenius w; returns one dict per odd prime ell | n2.
    """
    Q = q_bound(K)
    n2 = structure.padded[1]
    out = []
    for ell in factorize(n2):
        if ell == 2:
            continue
        rec = {"ell": ell, "Q": Q, "ell_le_Q": ell <= Q}
        if ell > K.D:
            rec["c1_is_1"] = (w.c1 - 1) % ell == 0
            rec["c2_is_0"] = w.c2 % ell == 0
        rec["holds"] = rec["ell_le_Q"] and rec.get("c1_is_1", True) and rec.get("c2_is_0", True)
        out.append(rec)
    return out
