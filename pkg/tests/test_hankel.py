import random
from fractions import Fraction
from math import comb

import pytest

from binwaring.fields import PrimeField, QQ
from binwaring.forms import BinaryForm, BivariatePoly
from binwaring.hankel import hankel_apply, hankel_matrix, kernel_pair
from binwaring.oracle import DenseKernelReport, dense_nullspace
from binwaring.poly import Poly, poly_gcd

from conftest import planted_instance, random_int_form


def BF(*v):
    return BivariatePoly(QQ, [Fraction(c) for c in v])


def _check_kernel_pair_invariants(f, kp):
    field = f.field
    D = f.D
    assert 0 <= kp.N1 <= kp.N2 <= D
    assert kp.N1 + kp.N2 == D
    assert kp.Pv.n == kp.N1 + 1 and kp.Pw.n == kp.N2 + 1
    # coprimality via dehomogenized gcd plus shared y-valuation
    assert min(kp.Pv.y_valuation(), kp.Pw.y_valuation()) == 0
    g = poly_gcd(kp.Pv.poly_in_x(), kp.Pw.poly_in_x())
    assert g.degree() == 0
    # rational reconstruction: Pv(1,x) * A = R mod x^(D+1), deg R <= N1
    A = f.a_poly()
    prod = kp.Pv.reversed_poly() * A
    R = Poly(field, prod.coeffs[: D + 1])
    assert R.degree() <= kp.N1
    # kernel membership through the structured product
    assert all(field.is_zero(c) for c in hankel_apply(field, f.a, kp.N1 + 1, kp.Pv.v))
    assert all(field.is_zero(c) for c in hankel_apply(field, f.a, kp.N2 + 1, kp.Pw.v))


def test_worked_example_kernel_pair():
    f = BinaryForm.from_normalized(QQ, [1, 2, 3, 4, 5])
    kp = kernel_pair(f)
    assert (kp.N1, kp.N2) == (1, 3)
    assert kp.Pv.proportional(BF(1, -2, 1))        # (y - x)^2
    assert kp.Pw.proportional(BF(0, 0, 0, 5, -4))  # 5yx^3 - 4x^4
    _check_kernel_pair_invariants(f, kp)


def test_cube_of_linear_form():
    f = BinaryForm.from_normalized(QQ, [1, 1, 1, 1])  # (x + y)^3
    kp = kernel_pair(f)
    assert (kp.N1, kp.N2) == (0, 3)
    assert kp.Pv.proportional(BF(-1, 1))          # x - y
    assert kp.Pw.proportional(BF(0, 0, 0, 0, 1))  # x^4
    _check_kernel_pair_invariants(f, kp)


def test_pure_power_x():
    for D in (3, 7, 12):
        f = BinaryForm.from_normalized(QQ, [0] * D + [1])
        kp = kernel_pair(f)
        assert (kp.N1, kp.N2) == (0, D)
        assert kp.Pv.proportional(BivariatePoly(QQ, [1, 0]))  # y
        assert kp.Pw.proportional(
            BivariatePoly(QQ, [0] * (D + 1) + [1])
        )  # x^(D+1)
        _check_kernel_pair_invariants(f, kp)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_balanced_monomial_prime_construction(p):
    # f = C(2(p-1), p-1) x^(p-1) y^(p-1): N1 = N2 = p - 1 and the two
    # generators span {x^p, y^p}.  Which of the two lands in Pv is a
    # convention choice (the kernel at N1 + 1 is two-dimensional), so the
    # pair is checked as an unordered set.
    D = 2 * (p - 1)
    a = [0] * (D + 1)
    a[p - 1] = 1
    f = BinaryForm.from_normalized(QQ, a)
    kp = kernel_pair(f)
    assert (kp.N1, kp.N2) == (p - 1, p - 1)
    xs = BivariatePoly(QQ, [0] * p + [1])
    ys = BivariatePoly(QQ, [1] + [0] * p)
    assert (kp.Pv.proportional(xs) and kp.Pw.proportional(ys)) or (
        kp.Pv.proportional(ys) and kp.Pw.proportional(xs)
    )
    _check_kernel_pair_invariants(f, kp)


def test_hankel_apply_examples():
    a = [Fraction(x) for x in (1, 2, 3, 4, 5)]
    assert hankel_apply(QQ, a, 2, [1, -2, 1]) == [0, 0, 0]
    assert hankel_apply(QQ, a, 2, [0, 0, 0]) == [0, 0, 0]
    assert hankel_apply(QQ, a, 1, [1, 0]) == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        hankel_apply(QQ, a, 2, [1, 0])


def test_hankel_apply_matches_dense_product():
    rng = random.Random(61)
    for _ in range(40):
        D = rng.randint(2, 24)
        k = rng.randint(1, D)
        a = [Fraction(rng.randint(-9, 9)) for _ in range(D + 1)]
        u = [Fraction(rng.randint(-9, 9)) for _ in range(k + 1)]
        H = hankel_matrix(a, k)
        dense = [sum(row[j] * u[j] for j in range(k + 1)) for row in H]
        assert hankel_apply(QQ, a, k, u) == dense


def test_kernel_pair_matches_dense_oracle_profile():
    rng = random.Random(62)
    for trial in range(60):
        D = rng.randint(2, 32)
        if trial % 3 == 0:
            f = random_int_form(QQ, rng, D)
        else:
            r = rng.randint(1, max(1, (D + 1) // 2))
            f, _, _ = planted_instance(rng, D, r)
        kp = kernel_pair(f)
        _check_kernel_pair_invariants(f, kp)
        report = DenseKernelReport(QQ, f.a)
        assert (report.N1, report.N2) == (kp.N1, kp.N2)
        assert report.profile_matches()


def test_u_chain_spans_kernel_and_pw_is_independent():
    rng = random.Random(63)
    for _ in range(12):
        D = rng.randint(6, 20)
        r = rng.randint(1, max(1, D // 3))
        f, _, _ = planted_instance(rng, D, r)
        kp = kernel_pair(f)
        if kp.N1 == kp.N2:
            continue
        # for N1 < k <= N2 the kernel is exactly the shifted copies of Pv
        for k in range(kp.N1 + 1, kp.N2 + 1):
            basis = dense_nullspace(QQ, f.a, k)
            assert len(basis) == k - kp.N1
            chain = []
            for shift in range(k - kp.N1):
                vec = [Fraction(0)] * (k + 1)
                for j, c in enumerate(kp.Pv.v):
                    vec[j + shift] = Fraction(c)
                chain.append(vec)
            for b in basis:
                assert _in_span(chain, [Fraction(x) for x in b])
        # vec(Pw) must NOT lie in the span of the Pv chain at N2 + 1
        k = kp.N2 + 1
        chain = []
        for shift in range(k - kp.N1):
            vec = [Fraction(0)] * (k + 1)
            for j, c in enumerate(kp.Pv.v):
                vec[j + shift] = Fraction(c)
            chain.append(vec)
        assert not _in_span(chain, [Fraction(x) for x in kp.Pw.v])


def _in_span(vectors, target):
    rows = [list(v) + [t] for v, t in zip(_transpose(vectors), target)]
    # gaussian elimination on the augmented system V^T x = target
    ncols = len(vectors)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                fct = rows[i][c]
                rows[i] = [x - fct * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return all(row[-1] == 0 for row in rows[r:])


def _transpose(vectors):
    return list(map(list, zip(*vectors)))


def test_kernel_pair_over_prime_field():
    field = PrimeField(10007)
    rng = random.Random(64)
    for _ in range(10):
        D = rng.randint(4, 60)
        a = [rng.randrange(field.p) for _ in range(D + 1)]
        if all(x == 0 for x in a):
            a[0] = 1
        f = BinaryForm(field, D, a, given="normalized")
        kp = kernel_pair(f)
        _check_kernel_pair_invariants(f, kp)
        report = DenseKernelReport(field, f.a)
        assert (report.N1, report.N2) == (kp.N1, kp.N2)


def test_zero_form_rejected():
    with pytest.raises(ValueError):
        BinaryForm.from_normalized(QQ, [0, 0, 0])
