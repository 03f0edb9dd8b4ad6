"""Analysis reports, CM parameter sweeps and the verification suites.

Reports are plain dicts ready for ``json.dumps``; field names are stable
because the CLI streams them as JSON lines.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import hashlib
import itertools
import random

import numpy as np

from . import cm, groups
from . import jacobian as jac
from .errors import BoundExceeded, G2CMError, NotCyclic
from .factor import factorize, is_prime, is_squarefree, primes_below


MAX_SWEEP_P = 2**31


def derive_seed(master, *parts) -> int:
    """64-bit seed from a master seed and an instance tuple (stable across runs)."""
    h = hashlib.blake2b(repr((master,) + parts).encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def _factor_pairs(n):
    return [[q, e] for q, e in factorize(n).items()]


def _weil_json(P):
    return P.coeffs


# ---------------------------------------------------------------------------
# single-instance analysis


def analyze_cm_instance(K: cm.CMField, w: cm.FrobeniusElement, ells=None, seed=0) -> dict:
    p = cm.frobenius_norm(K, w)
    P = cm.frobenius_char_poly(K, w, p)
    order = P.order
    fac = factorize(order)
    Q = cm.q_bound(K)
    candidates = sorted(set(q for q in fac if q != 2 and q != p) | set(ells or ()))
    verdicts, embedding, notes, corollary = [], [], [], []
    if 2 in fac:
        notes.append("ell=2: p = 1 (mod 2) holds trivially")
    for ell in candidates:
        if ell == p or ell == 2 or not is_prime(ell):
            notes.append(f"ell={ell}: skipped (not an odd prime different from p)")
            continue
        embedding.append(groups.embedding_degree(p, ell).to_json())
        if w.c2 % ell == 0:
            verdicts.append(cm.theorem_c2_check(w.c1, p, ell).to_json())
        elif K.D % ell == 0:
            notes.append(f"ell={ell} divides D: neither theorem applies")
        else:
            x = w.c1 if K.branch == "d23" else 2 * w.c1 + w.c2
            verdicts.append(cm.theorem_ed1_check(K.branch, x, w.c2, K.D, p, ell).to_json())
        if w.c2 % ell and ell > Q:
            corollary.append({
                "ell": ell,
                "prediction": "rank-two-with-p=1-or-cyclic" if p % ell == 1 else "cyclic",
            })
    if not candidates:
        notes.append("no applicable odd ell")
    return {
        "kind": "cm",
        "input": {"D": K.D, "a": K.a, "b": K.b, "c": list(w)},
        "seed": seed,
        "p": p,
        "branch": K.branch,
        "weil_poly": _weil_json(P),
        "order": order,
        "factorization": _factor_pairs(order),
        "structure": None,
        "sylow": [],
        "embedding_degree": embedding,
        "verdicts": verdicts,
        "q_bound": Q,
        "corollary1": corollary,
        "flags": {"h_K0_equals_1": "unverified", "primitivity": cm.primitivity_screen(K)},
        "notes": notes,
    }


def analyze_curve(p, f, ells=None, enum_bound=jac.ENUM_BOUND, seed=0) -> dict:
    """Count points, build P(X) and, when p is small enough, the full structure."""
    c = jac.Curve(p, tuple(f))
    n1, n2 = jac.count_points(c, 1), jac.count_points(c, 2)
    P = jac.weil_poly(c)
    order = P.order
    fac = factorize(order)
    report = {
        "kind": "curve",
        "input": {"p": p, "f": list(c.f)},
        "seed": seed,
        "p": p,
        "counts": [n1, n2],
        "weil_poly": _weil_json(P),
        "order": order,
        "factorization": _factor_pairs(order),
        "structure": None,
        "sylow": [],
        "embedding_degree": [],
        "verdicts": [],
        "checks": {},
        "notes": [],
    }
    ell_list = sorted(set(ells)) if ells else [q for q in fac if q != p]
    for ell in ell_list:
        if ell != p and is_prime(ell):
            report["embedding_degree"].append(groups.embedding_degree(p, ell).to_json())
    if p > enum_bound:
        report["notes"].append(f"p > {enum_bound}: structure not computed")
        return report
    if c.model is None:
        report["notes"].append("degree-6 model without a rational Weierstrass point: no arithmetic")
        return report
    elements = jac.enumerate_jacobian(c, enum_bound)
    structure = groups.group_structure(c, enum_bound)
    report["structure"] = structure.to_json()
    checks = report["checks"]
    checks["enumeration_matches_P1"] = len(elements) == order
    checks["structure_violations"] = structure.violations(p)
    consistency = []
    for ell in fac:
        rep = groups.sylow_rank(c, ell, enum_bound)
        report["sylow"].append(rep.to_json())
        if ell == p:
            continue
        r0, r1 = cm.remainder_mod_sq(P, ell)
        if rep.rank >= 2 and (r0 or r1):
            consistency.append(f"ell={ell}: rank {rep.rank} but (X-1)^2 does not divide P mod ell")
        if rep.rank == 4 and p % ell != 1:
            consistency.append(f"ell={ell}: full rank 4 but p != 1 mod ell")
        if rep.rank >= 2 and p % ell != 1:
            report["notes"].append(
                f"ell={ell}: non-cyclic Sylow with p != 1 mod ell (CM-hypothesis presumably violated)"
            )
    checks["rank_bound_ok"] = all(s["rank"] <= 4 for s in report["sylow"])
    checks["consistency_violations"] = consistency
    return report


# ---------------------------------------------------------------------------
# CM parameter sweep


@dataclass(frozen=True)
class SweepConfig:
    D_max: int
    ab_max: int
    c_max: int
    p_max: int
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if min(self.D_max, self.ab_max, self.c_max, self.p_max) < 0 or self.threads < 1:
            raise BoundExceeded("sweep bounds must be non-negative and threads >= 1")
        if self.p_max > MAX_SWEEP_P:
            raise BoundExceeded(f"p_max must be <= 2^31, got {self.p_max}")


def _sweep_one_D(args):
    cfg, D = args
    records, stats = [], {"fields_rejected": 0, "norm_rejected": 0, "p_too_large": 0,
                      "weil_rejected": 0}
    rng_ab = range(-cfg.ab_max, cfg.ab_max + 1)
    rng_c = range(-cfg.c_max, cfg.c_max + 1)
    for a, b in itertools.product(rng_ab, rng_ab):
        try:
            K = cm.CMField(D, a, b)
        except G2CMError:
            stats["fields_rejected"] += 1
            continue
        for c in itertools.product(rng_c, repeat=4):
            w = cm.FrobeniusElement(*c)
            const, xi = cm.norm_components(K, w)
            if xi != 0 or const < 3 or const % 2 == 0 or not is_prime(const):
                stats["norm_rejected"] += 1
                continue
            if const > cfg.p_max:
                stats["p_too_large"] += 1
                continue
            seed = derive_seed(cfg.seed, D, a, b, *c)
            try:
                records.append(analyze_cm_instance(K, w, seed=seed))
            except G2CMError:
                stats["weil_rejected"] += 1
    return records, stats


def sweep_cm_params(cfg: SweepConfig, stats: dict | None = None):
    """Yield one analysis record per valid (D, a, b, c1..c4) in tuple order."""
    Ds = [D for D in range(2, cfg.D_max + 1) if is_squarefree(D)]
    jobs = [(cfg, D) for D in Ds]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(_sweep_one_D, jobs))
    else:
        results = map(_sweep_one_D, jobs)
    for records, st in results:
        if stats is not None:
            for k, v in st.items():
                stats[k] = stats.get(k, 0) + v
        yield from records


# ---------------------------------------------------------------------------
# verification suites


def _rem_by_square(b0, b1, b2, b3, b4, ell):
    """(r0, r1) of b4 X^4 + ... + b0 modulo (X - 1)^2; works on arrays."""
    q2 = b4
    q1 = b3 + 2 * q2
    q0 = b2 - q2 + 2 * q1
    return (b0 - q0) % ell, (b1 - q1 + 2 * q0) % ell


def ed1_residue_sweep(ell, branch):
    """Exhaustive sweep over all (c1 or c, c2, D, p) residues mod ell.

    Returns (tuples with l not dividing p*c2*D, witnesses, counterexamples).
    """
    x, c2, D, p = np.indices((ell,) * 4, dtype=np.int64).reshape(4, -1)
    if branch == "d23":
        a1 = 4 * x
        a2 = 2 * p + 4 * (x * x - c2 * c2 * D)
    else:
        a1 = 2 * x
        a2 = 2 * p + x * x - c2 * c2 * D
    r0, r1 = _rem_by_square(p * p % ell, -p * a1 % ell, a2 % ell, -a1 % ell, 1, ell)
    admissible = (p != 0) & (c2 != 0) & (D != 0)
    hyp = admissible & (r0 == 0) & (r1 == 0)
    bad = hyp & (p != 1)
    return int(admissible.sum()), int(hyp.sum()), int(bad.sum())


def odd_primes_upto(n):
    return [q for q in primes_below(n + 1) if q > 2]


def verify_ed1(ell_max=31, sample=200, seed=0):
    rng = random.Random(seed)
    rows, counterexamples, disagreements = [], 0, 0
    for ell in odd_primes_upto(ell_max):
        for branch in ("d23", "d1"):
            checked, witnesses, bad = ed1_residue_sweep(ell, branch)
            counterexamples += bad
            # the scalar predicate must agree with the vectorized sweep
            for _ in range(sample):
                t = [rng.randrange(ell) for _ in range(4)]
                v = cm.theorem_ed1_check(branch, *t, ell)
                x, c2, D, p = t
                coeffs = cm.branch_poly_mod(branch, x, c2, D, p, ell)
                r = _rem_by_square(*coeffs, ell)
                expect = p and c2 and D and r == (0, 0)
                disagreements += bool(v.hypotheses_met) != bool(expect)
            rows.append({"ell": ell, "branch": branch, "checked": checked,
                         "witnesses": witnesses, "counterexamples": bad})
    ok = counterexamples == 0 and disagreements == 0 and all(r["witnesses"] > 0 for r in rows)
    return {"suite": "ed1", "ok": ok, "counterexamples": counterexamples,
            "predicate_disagreements": disagreements, "per_ell": rows}


def verify_c2(ell_max=31):
    rows, violations = [], 0
    for ell in odd_primes_upto(ell_max):
        bad = with_p1 = 0
        for c1 in range(ell):
            for p in range(ell):
                v = cm.theorem_c2_check(c1, p, ell)
                bad += not v.conclusion_holds
                with_p1 += v.details["P1_mod_ell"] == 0
                # c2 = 0 must make D irrelevant on both branches
                target = cm.branch_poly_mod("d23", c1, 0, 0, p, ell)
                for D in range(ell):
                    if (cm.branch_poly_mod("d23", c1, 0, D, p, ell) != target
                            or cm.branch_poly_mod("d1", 2 * c1, 0, D, p, ell) != target):
                        bad += 1
        violations += bad
        rows.append({"ell": ell, "violations": bad, "pairs_with_P1_zero": with_p1})
    return {"suite": "c2", "ok": violations == 0, "violations": violations, "per_ell": rows}


def random_curve(rng, p, degree=5):
    """A random squarefree f of the given degree over F_p (ascending coefficients)."""
    while True:
        f = [rng.randrange(p) for _ in range(degree)] + [rng.randrange(1, p)]
        try:
            jac.Curve(p, tuple(f))
        except G2CMError:
            continue
        return f


def random_corpus(n, p_max, seed, p_min=3, sextic_every=5):
    rng = random.Random(seed)
    ps = [q for q in primes_below(p_max + 1) if q >= p_min]
    corpus = []
    while len(corpus) < n:
        p = rng.choice(ps)
        if sextic_every and len(corpus) % sextic_every == sextic_every - 1:
            f = random_curve(rng, p, 6)
            if jac.Curve(p, tuple(f)).model is None:
                continue
        else:
            f = random_curve(rng, p, 5)
        corpus.append((p, f))
    return corpus


def verify_geometric(curves=30, p_max=61, seed=0):
    counters = {"order_mismatches": 0, "structure_violations": 0, "rank_violations": 0,
                "consistency_violations": 0, "cm_hypothesis_reports": 0, "noncyclic_sylows": 0}
    for i, (p, f) in enumerate(random_corpus(curves, p_max, seed)):
        rep = analyze_curve(p, f, enum_bound=max(p_max, jac.ENUM_BOUND), seed=derive_seed(seed, i))
        chk = rep["checks"]
        counters["order_mismatches"] += not chk["enumeration_matches_P1"]
        counters["structure_violations"] += len(chk["structure_violations"])
        counters["rank_violations"] += not chk["rank_bound_ok"]
        counters["consistency_violations"] += len(chk["consistency_violations"])
        counters["cm_hypothesis_reports"] += sum("CM-hypothesis" in n for n in rep["notes"])
        counters["noncyclic_sylows"] += sum(not s["cyclic"] for s in rep["sylow"])
    ok = all(counters[k] == 0 for k in ("order_mismatches", "structure_violations",
                                        "rank_violations", "consistency_violations"))
    return {"suite": "geometric", "ok": ok, "curves": curves, **counters}


def generator_success_rate(c, ell, trials, seed):
    """Fraction of random draws whose Sylow projection has full order ell^v."""
    rng = random.Random(seed)
    n = jac.jacobian_order(c)
    v = factorize(n)[ell]
    cofactor = n // ell**v
    hits = 0
    for _ in range(trials):
        g = jac._mul(c, cofactor, jac.random_divisor(c, rng))
        hits += groups.is_sylow_generator(c, g, ell, v)
    return hits / trials


def find_sylow_instances(seed, p_max=61, ells=(2, 3, 5), cyclic=True, per_ell=1):
    """Random curves whose ell-Sylow is nontrivial and (non)cyclic as requested.

    Returns up to ``per_ell`` (curve, ell) pairs for each ell, in ell order.
    """
    rng = random.Random(seed)
    ps = [q for q in primes_below(p_max + 1) if q >= 5]
    found = {ell: [] for ell in ells}
    for _ in range(5000):
        if all(len(v) >= per_ell for v in found.values()):
            break
        p = rng.choice(ps)
        c = jac.Curve(p, tuple(random_curve(rng, p)))
        fac = factorize(jac.jacobian_order(c))
        for ell in ells:
            if (len(found[ell]) < per_ell and ell in fac and ell != p
                    and groups.sylow_rank(c, ell).cyclic == cyclic):
                found[ell].append((c, ell))
                break
    return [pair for ell in ells for pair in found[ell]]


def verify_sylow_gen(trials=2000, seed=0, p_max=61, tolerance=0.05):
    rows, ok = [], True
    for i, (c, ell) in enumerate(find_sylow_instances(seed, p_max, ells=(2, 3, 5, 7))):
        rate = generator_success_rate(c, ell, trials, derive_seed(seed, "rate", i))
        expected = 1 - 1 / ell
        found = groups.sylow_generator_search(c, ell, max_trials=200, seed=derive_seed(seed, i))
        v = factorize(jac.jacobian_order(c))[ell]
        cert = groups.is_sylow_generator(c, found.generator, ell, v)
        good = abs(rate - expected) <= tolerance and cert
        ok &= good
        rows.append({"p": c.p, "f": list(c.f), "ell": ell, "rate": rate, "expected": expected,
                     "certificate": cert, "ok": good})
    noncyclic_ok = True
    for c, ell in find_sylow_instances(seed + 1, p_max, ells=(2, 3), cyclic=False):
        try:
            groups.sylow_generator_search(c, ell, seed=seed)
            noncyclic_ok = False
        except NotCyclic:
            pass
    return {"suite": "sylow-gen", "ok": ok and bool(rows) and noncyclic_ok,
            "instances": rows, "noncyclic_detected": noncyclic_ok}


def verify_corpus(suite, ell_max=31, curves=30, p_max=61, trials=2000, seed=0):
    if suite == "ed1":
        return verify_ed1(ell_max, seed=seed)
    if suite == "c2":
        return verify_c2(ell_max)
    if suite == "geometric":
        return verify_geometric(curves, p_max, seed)
    if suite == "sylow-gen":
        return verify_sylow_gen(trials, seed, p_max)
    raise ValueError(f"unknown suite {suite!r}")
