"""Binary forms and homogeneous bivariate polynomials.

Conventions
-----------
A homogeneous polynomial of degree n in x, y is stored as the vector
``v = (v_0, ..., v_n)`` with ``v_i`` the coefficient of x^i y^(n-i).
A binary form of degree D is stored through its *normalized*
coefficients ``a = (a_0, ..., a_D)``, i.e.

    f(x, y) = sum_i  C(D, i) * a_i * x^i * y^(D-i),

where C(D, i) is the binomial coefficient.  Raw monomial coefficients
c_i = C(D, i) * a_i are accepted on input and recoverable exactly; a
provenance flag records which representation the caller supplied.

Square-freeness of a nonzero form Q is decided by gcd(Q(x,1), Q'(x,1))
being constant together with y^2 not dividing Q: the dehomogenized gcd
sees every repeated root except a repeated root at (1 : 0), which is
exactly y^2 | Q.
"""

from math import comb

from .poly import Poly, poly_gcd


class BivariatePoly:
    """Homogeneous bivariate polynomial P_v = sum_i v_i x^i y^(n-i)."""

    __slots__ = ("field", "n", "v")

    def __init__(self, field, v, n=None):
        v = list(v)
        if n is None:
            n = len(v) - 1
        if len(v) != n + 1:
            raise ValueError("coefficient vector must have length n + 1")
        self.field = field
        self.n = n
        self.v = tuple(v)

    @classmethod
    def from_poly(cls, p, n):
        """Homogenize a univariate polynomial (in x) to degree n."""
        if p.degree() > n:
            raise ValueError("polynomial degree exceeds homogenization degree")
        return cls(p.field, [p[i] for i in range(n + 1)], n)

    def is_zero(self):
        return all(self.field.is_zero(c) for c in self.v)

    def poly_in_x(self):
        """Dehomogenize at y = 1: sum_i v_i x^i."""
        return Poly(self.field, self.v)

    def reversed_poly(self):
        """P(1, x) = sum_i v_i x^(n-i), the reversed coefficient vector."""
        return Poly(self.field, self.v[::-1])

    def eval(self, alpha, beta):
        f = self.field
        acc = f.zero
        for i in range(self.n, -1, -1):
            acc = f.add(f.mul(acc, alpha), f.mul(self.v[i], _pow(f, beta, self.n - i)))
        # Horner in alpha with beta powers folded in
        return acc

    def y_valuation(self):
        """Largest m with y^m dividing the form (n + 1 for the zero form)."""
        m = 0
        for i in range(self.n, -1, -1):
            if not self.field.is_zero(self.v[i]):
                break
            m += 1
        return m

    def x_valuation(self):
        m = 0
        for c in self.v:
            if not self.field.is_zero(c):
                break
            m += 1
        return m

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("cannot add forms of different degrees")
        f = self.field
        return BivariatePoly(f, [f.add(a, b) for a, b in zip(self.v, other.v)], self.n)

    def __sub__(self, other):
        if self.n != other.n:
            raise ValueError("cannot subtract forms of different degrees")
        f = self.field
        return BivariatePoly(f, [f.sub(a, b) for a, b in zip(self.v, other.v)], self.n)

    def __mul__(self, other):
        f = self.field
        if self.is_zero() or other.is_zero():
            return BivariatePoly(f, [f.zero] * (self.n + other.n + 1), self.n + other.n)
        out = f.vec_convolve(self.v, other.v)
        return BivariatePoly(f, out, self.n + other.n)

    def scale(self, c):
        f = self.field
        return BivariatePoly(f, [f.mul(x, c) for x in self.v], self.n)

    def shift_x(self, k):
        """Multiply by x^k (degree rises by k)."""
        f = self.field
        return BivariatePoly(f, (f.zero,) * k + self.v, self.n + k)

    def shift_y(self, k):
        """Multiply by y^k (degree rises by k, x-coefficients unchanged)."""
        f = self.field
        return BivariatePoly(f, self.v + (f.zero,) * k, self.n + k)

    def canonical(self):
        """Scale so the x-leading coefficient is one, or failing that the
        highest-index nonzero coefficient."""
        f = self.field
        for i in range(self.n, -1, -1):
            if not f.is_zero(self.v[i]):
                if f.eq(self.v[i], f.one):
                    return self
                return self.scale(f.inv(self.v[i]))
        raise ValueError("canonical form of the zero polynomial")

    def proportional(self, other):
        if self.field != other.field or self.n != other.n:
            return False
        f = self.field
        i = next((j for j in range(self.n, -1, -1) if not f.is_zero(self.v[j])), None)
        k = next((j for j in range(other.n, -1, -1) if not f.is_zero(other.v[j])), None)
        if i is None or k is None:
            return i is None and k is None
        if i != k:
            return False
        c = f.div(other.v[i], self.v[i])
        return all(f.eq(f.mul(a, c), b) for a, b in zip(self.v, other.v))

    def __eq__(self, other):
        return (
            isinstance(other, BivariatePoly)
            and self.field == other.field
            and self.n == other.n
            and self.v == other.v
        )

    def __hash__(self):
        return hash((self.field, self.n, self.v))

    def __repr__(self):
        fmt = getattr(self.field, "format", str)
        terms = [
            f"{fmt(c)}*x^{i}*y^{self.n - i}"
            for i, c in enumerate(self.v)
            if not self.field.is_zero(c)
        ]
        return "BivariatePoly(" + (" + ".join(terms) or "0") + ")"


def _pow(field, base, k):
    acc = field.one
    for _ in range(k):
        acc = field.mul(acc, base)
    return acc


def is_squarefree_form(Q):
    """True iff the nonzero form Q has no repeated projective root.

    Decided by gcd(Q(x,1), Q'(x,1)) being constant plus y^2 not dividing
    Q.  Over the rationals the gcd is first filtered modulo a few fixed
    62-bit primes: a constant gcd mod p certifies a constant gcd over Q
    outright (one-sided), so the expensive exact chain only runs when
    every filter prime reports a nontrivial factor.
    """
    if Q.is_zero():
        raise ValueError("square-free test on the zero polynomial")
    if Q.n >= 2 and Q.field.is_zero(Q.v[Q.n]) and Q.field.is_zero(Q.v[Q.n - 1]):
        return False  # y^2 divides Q
    qx = Q.poly_in_x()
    if qx.degree() <= 0:
        return True
    if getattr(Q.field, "name", "") == "rational":
        verdict = _squarefree_modular_filter(qx)
        if verdict is not None:
            return verdict
    return poly_gcd(qx, qx.derivative()).degree() == 0


def _filter_primes():
    global _FILTER_PRIMES
    if _FILTER_PRIMES is None:
        import gmpy2

        base = 2 ** 61
        _FILTER_PRIMES = (
            base - 1,
            int(gmpy2.next_prime(base)),
            int(gmpy2.next_prime(base + 2 ** 40)),
        )
    return _FILTER_PRIMES


_FILTER_PRIMES = None


def _squarefree_modular_filter(qx):
    """True when some filter prime certifies gcd(qx, qx') constant.

    Works on the denominator-cleared integer image; a prime is usable
    only if it keeps the leading coefficient (and hence the gcd degree
    bound) intact.  Returns None when no prime certifies, which the
    caller must settle exactly.
    """
    from .fields import PrimeField
    from .poly import _lcm_dens

    den = _lcm_dens(qx.coeffs)
    ints = [c.numerator * (den // c.denominator) for c in qx.coeffs]
    n = len(ints) - 1
    for p in _filter_primes():
        if ints[-1] % p == 0 or (n * ints[-1]) % p == 0:
            continue
        field = PrimeField(p)
        f = Poly(field, [x % p for x in ints])
        g = poly_gcd(f, f.derivative())
        if g.degree() == 0:
            return True
    return None


class BinaryForm:
    """A nonzero binary form of degree D over a coefficient field."""

    __slots__ = ("field", "D", "a", "given")

    def __init__(self, field, D, a, given="normalized"):
        if D < 1:
            raise ValueError("form degree must be positive")
        a = [field.coerce(x) for x in a]
        if len(a) != D + 1:
            raise ValueError(f"expected {D + 1} coefficients, got {len(a)}")
        if all(field.is_zero(x) for x in a):
            raise ValueError("the zero form has no decomposition")
        if hasattr(field, "p") and field.p <= D:
            raise ValueError(f"prime modulus {field.p} must exceed the degree {D}")
        if given not in ("normalized", "raw"):
            raise ValueError("given must be 'normalized' or 'raw'")
        self.field = field
        self.D = D
        self.a = tuple(a)
        self.given = given

    @classmethod
    def from_normalized(cls, field, a):
        return cls(field, len(list(a)) - 1, a, given="normalized")

    @classmethod
    def from_monomial(cls, field, c):
        """Build from raw monomial coefficients c_i = C(D, i) * a_i."""
        c = list(c)
        D = len(c) - 1
        a = [field.div(field.coerce(ci), field.coerce(comb(D, i))) for i, ci in enumerate(c)]
        return cls(field, D, a, given="raw")

    def monomial_coeffs(self):
        """The raw coefficients c_i = C(D, i) * a_i, exactly."""
        f = self.field
        return tuple(f.mul(ai, f.coerce(comb(self.D, i))) for i, ai in enumerate(self.a))

    def a_poly(self):
        """A(x) = sum_i a_i x^i (may have degree < D)."""
        return Poly(self.field, self.a)

    def as_bivariate(self):
        return BivariatePoly(self.field, self.monomial_coeffs(), self.D)

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.field == other.field
            and self.D == other.D
            and self.a == other.a
        )

    def __repr__(self):
        fmt = getattr(self.field, "format", str)
        return f"BinaryForm(D={self.D}, a=[{', '.join(fmt(x) for x in self.a)}])"
