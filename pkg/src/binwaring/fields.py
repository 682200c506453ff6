"""Coefficient fields for exact polynomial arithmetic.

Two concrete fields are provided:

* ``RationalField`` -- arbitrary-precision rationals backed by
  ``fractions.Fraction``.  Values are always kept in lowest terms with a
  positive denominator (the ``Fraction`` invariant).
* ``PrimeField(p)`` -- integers modulo a prime ``p``.  It exists so the
  symbolic pipeline can be benchmarked without rational coefficient
  growth; decomposing a form of degree D over GF(p) requires ``p > D``
  so every binomial coefficient C(D, i) stays invertible.

A field object carries the scalar operations plus a few bulk hooks on
raw coefficient lists used by the polynomial layer.  ``PrimeField``
overrides the bulk convolution with a Kronecker-substitution multiply.

Scalars serialize as strings: ``"p/q"`` (or just ``"p"`` when q = 1)
for rationals, plain decimal strings for prime-field elements.
"""

from fractions import Fraction

import gmpy2

from . import kronecker

_KRONECKER_CUTOFF = 48


def _lcm_denominators(xs):
    den = 1
    for x in xs:
        d = x.denominator
        if d != 1:
            den = den * d // _gcd_int(den, d)
    return den


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


class RationalField:
    """The field of exact rationals (Fraction scalars)."""

    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into {self.name} field")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in rational field")
        return a / b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in rational field")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def vec_convolve(self, xs, ys):
        # clear denominators once and convolve raw integers; Fraction
        # normalization then happens once per output coefficient instead
        # of once per elementary product
        den_x = _lcm_denominators(xs)
        den_y = _lcm_denominators(ys)
        ix = [x.numerator * (den_x // x.denominator) for x in xs]
        iy = [y.numerator * (den_y // y.denominator) for y in ys]
        out = [0] * (len(ix) + len(iy) - 1)
        if len(ix) > len(iy):
            ix, iy = iy, ix
        for i, x in enumerate(ix):
            if x:
                for j, y in enumerate(iy):
                    out[i + j] += x * y
        den = den_x * den_y
        return [Fraction(v, den) for v in out]

    def format(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, s):
        return Fraction(s)

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


class PrimeField:
    """GF(p) for an odd prime p, elements stored as ints in [0, p).

    Only intended for the symbolic pipeline (no numeric approximation);
    callers must keep p larger than the degree of any form they build.
    """

    name = "prime"
    zero = 0
    one = 1

    def __init__(self, p):
        p = int(p)
        if p < 3 or not gmpy2.is_prime(p):
            raise ValueError(f"modulus {p} is not an odd prime")
        if p.bit_length() > 62:
            raise ValueError("prime moduli above 62 bits are not supported")
        self.p = p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return int(x, 10) % self.p
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def sub(self, a, b):
        c = a - b
        return c + self.p if c < 0 else c

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def vec_convolve(self, xs, ys):
        if min(len(xs), len(ys)) <= _KRONECKER_CUTOFF:
            # schoolbook on raw ints with a single deferred reduction
            p = self.p
            out = [0] * (len(xs) + len(ys) - 1)
            if len(xs) > len(ys):
                xs, ys = ys, xs
            for i, x in enumerate(xs):
                if x:
                    for j, y in enumerate(ys):
                        out[i + j] += x * y
            return [v % p for v in out]
        return kronecker.poly_mul_mod(xs, ys, self.p)

    def format(self, a):
        return str(a)

    def parse(self, s):
        return int(s, 10) % self.p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


#: Shared rational field instance; fields are stateless, so one is enough.
QQ = RationalField()
