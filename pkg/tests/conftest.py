import random
from fractions import Fraction

import pytest

from binwaring.fields import PrimeField, QQ
from binwaring.forms import BinaryForm
from binwaring.poly import Poly


@pytest.fixture
def rng():
    return random.Random(20240917)


def random_fraction(rng, span=30):
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return Fraction(num, den)


def random_poly(field, rng, degree, span=30):
    """Random polynomial of exactly the requested degree."""
    if hasattr(field, "p"):
        coeffs = [rng.randrange(field.p) for _ in range(degree + 1)]
        while coeffs[-1] == 0:
            coeffs[-1] = rng.randrange(field.p)
    else:
        coeffs = [random_fraction(rng, span) for _ in range(degree + 1)]
        while coeffs[-1] == 0:
            coeffs[-1] = random_fraction(rng, span)
    return Poly(field, coeffs)


def random_int_form(field, rng, degree, span=50):
    """Form with random integer entries, at least one nonzero."""
    while True:
        a = [field.coerce(rng.randint(-span, span)) for _ in range(degree + 1)]
        if any(not field.is_zero(x) for x in a):
            return BinaryForm(field, degree, a, given="normalized")


def planted_instance(rng, degree, rank, span=8):
    """Rational-root ground-truth instance with `rank` distinct finite points."""
    from binwaring.oracle import rational_instance

    pool = [Fraction(n, d) for n in range(-span, span + 1) for d in (1, 2, 3)]
    pool = sorted(set(pool))
    rng.shuffle(pool)
    alphas = pool[:rank]
    lambdas = []
    while len(lambdas) < rank:
        l = random_fraction(rng, 9)
        if l != 0:
            lambdas.append(l)
    points = [(a, Fraction(1)) for a in alphas]
    f = rational_instance(QQ, points, lambdas, degree)
    return f, alphas, lambdas


PRIME_61 = 2 ** 61 - 1


@pytest.fixture
def gf_big():
    return PrimeField(PRIME_61)


@pytest.fixture
def gf_small():
    return PrimeField(10007)
