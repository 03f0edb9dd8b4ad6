import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from g2cm import cm
from g2cm import polynomials as pl
from g2cm.cm import CMField, FrobeniusElement
from g2cm.errors import (
    CompositeNorm,
    DegenerateField,
    EllNotPrime,
    EvenEll,
    EvenNorm,
    IrrationalNorm,
    NotSquarefree,
    NotTotallyPositive,
)
from g2cm.weil import WeilPoly, weil_validate

A_FIELD, A_W = (2, 2, 1), (1, -1, 0, 1)
B_FIELD, B_W = (5, 2, 1), (-2, 2, 0, 1)


def conjugates(K, w):
    """The four complex embeddings of c1 + c2 xi + (c3 + c4 xi) i sqrt(a + b xi)."""
    out = []
    for xi in K.xi_values():
        real = w.c1 + w.c2 * xi
        imag = (w.c3 + w.c4 * xi) * math.sqrt(K.a + K.b * xi)
        out += [complex(real, imag), complex(real, -imag)]
    return out


def numeric_char_poly(K, w):
    coeffs = np.poly(conjugates(K, w))
    assert np.allclose(coeffs.imag, 0, atol=1e-6)
    return coeffs.real


def test_field_validation_examples():
    CMField(2, 2, 1)
    CMField(5, 2, 1)
    with pytest.raises(NotTotallyPositive):
        CMField(2, 1, 1)
    with pytest.raises(NotSquarefree):
        CMField(8, 5, 1)
    with pytest.raises(DegenerateField):
        CMField(1, 2, 0)
    with pytest.raises(NotTotallyPositive):
        CMField(3, -1, 0)


@given(st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13, 17]), st.integers(-20, 20), st.integers(-20, 20))
def test_total_positivity_matches_floats(D, a, b):
    K_ok = True
    try:
        K = CMField(D, a, b)
    except NotTotallyPositive:
        K_ok = False
    probe = CMField(D, 100, 0)
    vals = [a + b * xi for xi in probe.xi_values()]
    # skip boundary cases where floats cannot decide
    assume(all(abs(v) > 1e-9 for v in vals))
    assert K_ok == all(v > 0 for v in vals)
    if K_ok:
        assert K.branch == ("d1" if D % 4 == 1 else "d23")


def test_primitivity_screen():
    assert cm.primitivity_screen(CMField(2, 2, 1)) == "non-biquadratic"
    assert cm.primitivity_screen(CMField(5, 2, 1)) == "non-biquadratic"
    # Norm(3 + sqrt 2 * 0) = 9 is a square
    assert cm.primitivity_screen(CMField(2, 3, 0)) == "biquadratic-suspect"


def test_norm_examples():
    assert cm.frobenius_norm(CMField(*A_FIELD), FrobeniusElement(*A_W)) == 7
    assert cm.frobenius_norm(CMField(*B_FIELD), FrobeniusElement(*B_W)) == 11
    with pytest.raises(IrrationalNorm):
        cm.frobenius_norm(CMField(*A_FIELD), FrobeniusElement(1, 0, 1, 0))
    with pytest.raises(EvenNorm):
        cm.frobenius_norm(CMField(2, 2, 1), FrobeniusElement(2, 0, 0, 0))
    with pytest.raises(CompositeNorm):
        cm.frobenius_norm(CMField(2, 2, 1), FrobeniusElement(3, 0, 0, 0))


@pytest.mark.parametrize("field_,w,p,coeffs,order", [
    (A_FIELD, A_W, 7, [1, -4, 10, -28, 49], 28),
    (B_FIELD, B_W, 11, [1, 4, 6, 44, 121], 176),
])
def test_char_poly_instances(field_, w, p, coeffs, order):
    K, w = CMField(*field_), FrobeniusElement(*w)
    P = cm.frobenius_char_poly(K, w, p)
    assert list(P.coeffs) == coeffs
    assert P.order == order
    assert np.allclose(numeric_char_poly(K, w), coeffs, atol=1e-6)
    for z in conjugates(K, w):
        assert abs(abs(z) ** 2 - p) < 1e-9


def valid_instances(D_max=13, r=2):
    for D in range(2, D_max + 1):
        for a, b in itertools.product(range(-r - 2, r + 3), repeat=2):
            try:
                K = CMField(D, a, b)
            except Exception:
                continue
            for w in itertools.product(range(-r, r + 1), repeat=4):
                w = FrobeniusElement(*w)
                try:
                    p = cm.frobenius_norm(K, w)
                except Exception:
                    continue
                yield K, w, p


INSTANCES = list(itertools.islice(valid_instances(), 400))


def test_enough_instances():
    assert len(INSTANCES) >= 100
    assert {K.branch for K, _, _ in INSTANCES} == {"d1", "d23"}


def test_char_poly_matches_numeric_roots():
    for K, w, p in INSTANCES:
        P = cm.frobenius_char_poly(K, w, p)
        numeric = numeric_char_poly(K, w)
        assert np.allclose(numeric, P.coeffs, atol=1e-6)
        assert [round(x) for x in numeric] == list(P.coeffs)
        assert weil_validate(P)
        for z in conjugates(K, w):
            assert abs(abs(z) - math.sqrt(p)) < 1e-9


def test_remainder_examples():
    A = WeilPoly(7, 4, 10)
    assert cm.remainder_mod_sq(A) == (44, -16)
    assert cm.remainder_mod_sq(A, 13) == (5, 10)
    assert cm.remainder_mod_sq(WeilPoly(11, -4, 6)) == (104, 72)
    assert cm.remainder_closed_form("d23", 1, -1, 2, 7) == (44, -16)
    assert cm.remainder_closed_form("d1", -2, 2, 5, 11) == (104, 72)


def test_remainder_zero_for_square_factor():
    # (X-1)^2 (X-3)^2 = X^4 - 8X^3 + 22X^2 - 24X + 9 : p = 3, a1 = 8, a2 = 22
    assert cm.remainder_mod_sq(WeilPoly(3, 8, 22)) == (0, 0)


small = st.integers(-200, 200)


@given(small, small, st.sampled_from([2, 3, 6, 7, 10, 11]), st.integers(3, 10**6))
def test_remainder_closed_form_d23(c1, c2, D, p):
    P = WeilPoly(p, 4 * c1, 2 * p + 4 * (c1 * c1 - c2 * c2 * D))
    assert cm.remainder_mod_sq(P) == cm.remainder_closed_form("d23", c1, c2, D, p)


@given(small, small, st.sampled_from([5, 13, 17, 21, 29]), st.integers(3, 10**6))
def test_remainder_closed_form_d1(c, c2, D, p):
    P = WeilPoly(p, 2 * c, 2 * p + c * c - c2 * c2 * D)
    assert cm.remainder_mod_sq(P) == cm.remainder_closed_form("d1", c, c2, D, p)


def test_q_bound_examples():
    assert cm.q_bound(CMField(2, 2, 1)) == 2
    assert cm.q_bound(CMField(5, 2, 1)) == 20
    for K, _, _ in INSTANCES:
        assert cm.q_bound(K) >= K.D


def test_ed1_examples():
    for p in range(5):
        v = cm.theorem_ed1_check("d23", 1, 1, 2, p, 5)
        assert not v.hypotheses_met
        # linear coefficient is 4 * (-4) regardless of p
        assert v.details["R_mod_ell"][1] == (-16) % 5
        assert v.details["R_mod_ell"][1] == cm.remainder_closed_form("d23", 1, 1, 2, p)[1] % 5
    v = cm.theorem_ed1_check("d23", 2, 1, 6, 11, 5)
    assert v.hypotheses_met and v.conclusion_holds and not v.counterexample


@pytest.mark.parametrize("branch", ["d23", "d1"])
def test_ed1_exhaustive_ell3(branch):
    witnesses = 0
    for c, c2, D, p in itertools.product(range(3), repeat=4):
        v = cm.theorem_ed1_check(branch, c, c2, D, p, 3)
        assert not v.counterexample
        # independent oracle: P(1) and P'(1) both vanish mod 3
        P = cm.branch_poly_mod(branch, c, c2, D, p, 3)
        divisible = pl.evaluate(P, 1, 3) == 0 and pl.evaluate(pl.derivative(P, 3), 1, 3) == 0
        assert v.hypotheses_met == (divisible and all((p, c2, D)))
        witnesses += v.hypotheses_met
    assert witnesses >= 1


def test_ed1_bad_ell():
    with pytest.raises(EvenEll):
        cm.theorem_ed1_check("d23", 1, 1, 1, 1, 2)
    with pytest.raises(EllNotPrime):
        cm.theorem_ed1_check("d23", 1, 1, 1, 1, 9)
    with pytest.raises(EllNotPrime):
        cm.theorem_c2_check(1, 1, 15)


def test_c2_examples():
    v = cm.theorem_c2_check(1, 1, 3)
    assert v.conclusion_holds and v.details["P_mod_ell"] == [1, 2, 0, 2, 1]  # (X-1)^4 mod 3
    v = cm.theorem_c2_check(2, 3, 7)
    assert v.conclusion_holds and v.details["P1_mod_ell"] == 0
    assert v.details["p_equals_2c1_minus_1"]


@pytest.mark.parametrize("ell", [3, 5, 7, 11, 13])
def test_c2_exhaustive(ell):
    for c1, p in itertools.product(range(ell), repeat=2):
        assert cm.theorem_c2_check(c1, p, ell).conclusion_holds


def test_single_coefficient_perturbations():
    K = CMField(*A_FIELD)
    for i in range(4):
        for delta in (1, -1):
            w = list(A_W)
            w[i] += delta
            try:
                p = cm.frobenius_norm(K, FrobeniusElement(*w))
            except (IrrationalNorm, CompositeNorm, EvenNorm):
                continue
            assert p != 7


def test_verdict_json():
    v = cm.theorem_ed1_check("d1", 1, 2, 3, 4, 7)
    j = v.to_json()
    assert j["theorem"] == "ed1" and j["ell"] == 7
    assert set(j) == {"theorem", "ell", "hypotheses_met", "conclusion_holds", "details"}
