import random
from fractions import Fraction

import pytest
from mpmath import mp

from binwaring.decompose import build_Q_interpolated, fast_decompose, symbolic_lambda
from binwaring.fields import PrimeField, QQ
from binwaring.forms import BinaryForm
from binwaring.hankel import kernel_pair
from binwaring.numeric import (
    Ball,
    PrecisionBudgetExceeded,
    _mpf_to_fraction,
    decompose_numeric,
    residual_norm,
    roots_approx,
)
from binwaring.poly import Poly

from conftest import planted_instance


def P(*coeffs):
    return Poly(QQ, [Fraction(c) for c in coeffs])


def _ball_fraction_center(b):
    return _mpf_to_fraction(b.re), _mpf_to_fraction(b.im)


def test_roots_cubic_unity():
    balls = roots_approx(P(-1, 0, 0, 1), 53)
    assert len(balls) == 3
    assert all(_mpf_to_fraction(b.rad) <= Fraction(1, 2 ** 53) for b in balls)
    got = sorted((round(float(b.re), 6), round(float(b.im), 6)) for b in balls)
    assert got == [(-0.5, -0.866025), (-0.5, 0.866025), (1.0, 0.0)]


def test_roots_integer_pair_high_precision():
    balls = roots_approx(P(2, -3, 1), 100)
    assert len(balls) == 2
    for b in balls:
        assert _mpf_to_fraction(b.rad) <= Fraction(1, 2 ** 100)
    centers = sorted(float(b.re) for b in balls)
    assert abs(centers[0] - 1) < 1e-25 and abs(centers[1] - 2) < 1e-25


def test_roots_paper_quartic():
    # monic form of (5x - 11)(x - 2)(x + 2)(x + 1)
    q = (P(-11, 5) * P(-2, 1) * P(2, 1) * P(1, 1)).monic()
    balls = roots_approx(q, 80)
    centers = sorted(_mpf_to_fraction(b.re) for b in balls)
    expected = sorted([Fraction(11, 5), 2, -2, -1])
    for c, e in zip(centers, expected):
        assert abs(c - e) <= Fraction(1, 2 ** 80)


def test_roots_requires_squarefree_and_degree():
    with pytest.raises(ValueError):
        roots_approx(P(1, -2, 1), 53)  # (x-1)^2
    with pytest.raises(ValueError):
        roots_approx(P(5), 53)


def test_root_balls_reproduce_coefficients():
    rng = random.Random(91)
    for _ in range(6):
        deg = rng.randint(2, 8)
        roots = rng.sample(range(-10, 11), deg)
        q = P(1)
        for r in roots:
            q = q * P(-r, 1)
        balls = roots_approx(q, 64)
        with mp.workprec(200):
            prod = [Ball.from_rational(Fraction(1))]
            for b in balls:
                nxt = [Ball(0)] * (len(prod) + 1)
                for i, c in enumerate(prod):
                    nxt[i + 1] = nxt[i + 1] + c
                    nxt[i] = nxt[i] + c * Ball(-b.re, -b.im, b.rad)
                prod = nxt
            for i, c in enumerate(prod):
                dev = c - Ball.from_rational(Fraction(q.coeffs[i]))
                assert _mpf_to_fraction(dev.abs_upper()) < Fraction(1, 2 ** 40)


def test_decompose_numeric_cube():
    f = BinaryForm.from_normalized(QQ, [1, 1, 1, 1])
    sd = fast_decompose(f)
    nd = decompose_numeric(sd, f, 100)
    assert nd.residual_bound <= Fraction(1, 2 ** 100)
    assert len(nd.terms) == 1
    lam, alpha, at_inf = nd.terms[0]
    assert not at_inf
    assert _ball_fraction_center(lam) == (1, 0)
    assert _ball_fraction_center(alpha) == (1, 0)


def test_decompose_numeric_paper_terms_match():
    # decompose with the worked Q so the terms land on the worked
    # decomposition; projective term identity checked against the exact
    # values lambda' = beta^D * lambda
    f = BinaryForm.from_normalized(QQ, [1, 2, 3, 4, 5])
    kp = kernel_pair(f)
    Q = build_Q_interpolated(kp, points=[2, -2, -1])
    sd = symbolic_lambda(f, Q, kp=kp)
    nd = decompose_numeric(sd, f, 64)
    assert nd.residual_bound <= Fraction(1, 2 ** 64)
    expected = {
        Fraction(11, 5): Fraction(-625, 336),
        Fraction(2): Fraction(3),
        Fraction(-2): Fraction(1, 21),
        Fraction(-1): Fraction(-3, 16),
    }
    assert len(nd.terms) == 4
    for lam, alpha, at_inf in nd.terms:
        ar, ai = _ball_fraction_center(alpha)
        lr, li = _ball_fraction_center(lam)
        match = min(expected, key=lambda e: abs(ar - e))
        assert abs(ar - match) < Fraction(1, 2 ** 50) and abs(ai) < Fraction(1, 2 ** 50)
        assert abs(lr - expected[match]) < Fraction(1, 2 ** 50)
        assert abs(li) < Fraction(1, 2 ** 50)


def test_decompose_numeric_balanced_monomial():
    f = BinaryForm.from_normalized(QQ, [0, 0, 1, 0, 0])
    sd = fast_decompose(f)
    nd = decompose_numeric(sd, f, 64)
    with mp.workprec(nd.working_precision):
        s = None
        for lam, _, _ in nd.terms:
            s = lam if s is None else s + lam
        bound = _mpf_to_fraction(s.abs_upper())
    assert bound < Fraction(1, 2 ** 60)


def test_decompose_numeric_pure_power_infinity_term():
    f = BinaryForm.from_normalized(QQ, [0, 0, 0, 1])
    sd = fast_decompose(f)
    nd = decompose_numeric(sd, f, 80)
    assert nd.residual_bound <= Fraction(1, 2 ** 80)  # zero up to ball rounding
    infs = [t for t in nd.terms if t[2]]
    assert len(infs) == 1
    assert _ball_fraction_center(infs[0][0]) == (1, 0)


def test_decompose_numeric_errors():
    f = BinaryForm.from_normalized(QQ, [1, 1, 1, 1])
    sd = fast_decompose(f)
    g = BinaryForm.from_normalized(QQ, [1, 2, 3, 4])
    with pytest.raises(ValueError):
        decompose_numeric(sd, g, 64)  # mismatched form
    gf = PrimeField(101)
    fp = BinaryForm(gf, 3, [1, 1, 1, 1], given="normalized")
    sdp = fast_decompose(fp)
    with pytest.raises(ValueError):
        decompose_numeric(sdp, fp, 64)


def test_decompose_numeric_budget_exceeded():
    f, _, _ = planted_instance(random.Random(5), 12, 5)
    sd = fast_decompose(f)
    with pytest.raises(PrecisionBudgetExceeded):
        decompose_numeric(sd, f, 4096, max_doublings=0, max_precision=128)


def test_certification_soundness_on_planted_instances():
    rng = random.Random(92)
    for _ in range(8):
        D = rng.randint(3, 14)
        r = rng.randint(1, (D + 1) // 2)
        f, _, _ = planted_instance(rng, D, r)
        sd = fast_decompose(f)
        nd = decompose_numeric(sd, f, 64)
        assert nd.residual_bound <= Fraction(1, 2 ** 64)
        terms = [
            (_ball_fraction_center(l), _ball_fraction_center(a), inf)
            for l, a, inf in nd.terms
        ]
        exact = residual_norm(f, terms)
        assert exact <= nd.residual_bound


def test_monotonicity_of_precision():
    f, _, _ = planted_instance(random.Random(6), 10, 4)
    sd = fast_decompose(f)
    n64 = decompose_numeric(sd, f, 64)
    n128 = decompose_numeric(sd, f, 128)
    assert n128.residual_bound <= n64.residual_bound * 2


def test_residual_norm_exact_zero_on_true_decomposition():
    f = BinaryForm.from_normalized(QQ, [1, 2, 3, 4, 5])
    terms = [
        (Fraction(-625, 336), Fraction(11, 5), False),
        (Fraction(3), Fraction(2), False),
        (Fraction(1, 21), Fraction(-2), False),
        (Fraction(-3, 16), Fraction(-1), False),
    ]
    assert residual_norm(f, terms) == 0


def test_residual_norm_perturbation_window():
    f = BinaryForm.from_normalized(QQ, [1, 1, 1, 1])
    terms = [(Fraction(1) + Fraction(1, 2 ** 40), Fraction(1), False)]
    r = residual_norm(f, terms)
    assert Fraction(1, 2 ** 40) <= r <= Fraction(1, 2 ** 38)


def test_residual_norm_detects_rounded_terms():
    # the worked terms rounded to 1e-3 are nowhere near 2^-64 accurate
    f = BinaryForm.from_normalized(QQ, [1, 2, 3, 4, 5])
    terms = [
        (Fraction(-186, 100), Fraction(22, 10), False),
        (Fraction(3), Fraction(2), False),
        (Fraction(48, 1000), Fraction(-2), False),
        (Fraction(-188, 1000), Fraction(-1), False),
    ]
    assert residual_norm(f, terms) > Fraction(1, 2 ** 64)


def test_residual_norm_missing_term():
    f = BinaryForm.from_normalized(QQ, [1, 2, 3, 4, 5])
    terms = [(Fraction(3), Fraction(2), False)]
    assert residual_norm(f, terms) > Fraction(1, 4)
