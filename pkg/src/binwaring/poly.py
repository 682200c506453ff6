"""Dense univariate polynomials over a coefficient field.

A polynomial is a coefficient tuple indexed by power: ``coeffs[i]`` is
the coefficient of x**i, with trailing zeros stripped and ``()`` for
the zero polynomial.  ``degree()`` of the zero polynomial is the
``NEG_INF`` sentinel, which orders below every integer; that convention
lets kernel extraction pick exponents like max(deg U, deg R + 1)
without special branches when a remainder vanishes mid-run.

Multi-point evaluation and interpolation use product trees, so they are
subquadratic given a subquadratic coefficient convolution.
"""

NEG_INF = float("-inf")


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs, normalize=True):
        if normalize:
            coeffs = list(coeffs)
            while coeffs and field.is_zero(coeffs[-1]):
                coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, field):
        return cls(field, (), normalize=False)

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,), normalize=False)

    @classmethod
    def x_power(cls, field, k):
        """The monomial x**k."""
        return cls(field, [field.zero] * k + [field.one], normalize=False)

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def lc(self):
        """Leading coefficient (of the zero polynomial: the field zero)."""
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        p = getattr(f, "p", None)
        if p is not None:
            out = [(x + y) % p for x, y in zip(a, b)] + list(a[len(b):])
            return Poly(f, out)
        out = list(a)
        for i, v in enumerate(b):
            out[i] = f.add(out[i], v)
        return Poly(f, out)

    def __sub__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        p = getattr(f, "p", None)
        if p is not None:
            head = [(x - y) % p for x, y in zip(a, b)]
            tail = list(a[len(b):]) if len(a) >= len(b) else [(-y) % p for y in b[len(a):]]
            return Poly(f, head + tail)
        out = [f.sub(self[i], other[i]) for i in range(max(len(a), len(b)))]
        return Poly(f, out)

    def __neg__(self):
        f = self.field
        return Poly(f, [f.neg(c) for c in self.coeffs], normalize=False)

    def __mul__(self, other):
        f = self.field
        if not self.coeffs or not other.coeffs:
            return Poly.zero(f)
        return Poly(f, f.vec_convolve(self.coeffs, other.coeffs))

    def scale(self, c):
        f = self.field
        if f.is_zero(c):
            return Poly.zero(f)
        p = getattr(f, "p", None)
        if p is not None:
            return Poly(f, [(v * c) % p for v in self.coeffs], normalize=False)
        return Poly(f, [f.mul(v, c) for v in self.coeffs], normalize=False)

    def shift(self, k):
        """Multiply by x**k (k >= 0)."""
        if not self.coeffs:
            return self
        return Poly(self.field, (self.field.zero,) * k + self.coeffs, normalize=False)

    def __divmod__(self, other):
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("zero divisor")
        db = other.degree()
        if self.degree() < db:
            return Poly.zero(f), self
        if getattr(f, "name", "") == "rational":
            out = _divmod_rational_intcore(self, other)
            if out is not None:
                return out
        inv_lead = f.inv(other.lc())
        rem = list(self.coeffs)
        bcs = other.coeffs
        qlen = len(rem) - db
        quo = [f.zero] * qlen
        p = getattr(f, "p", None)
        if p is not None:
            for k in range(qlen - 1, -1, -1):
                c = (rem[k + db] * inv_lead) % p
                if not c:
                    continue
                quo[k] = c
                rem[k:k + db + 1] = [
                    (x - c * y) % p for x, y in zip(rem[k:k + db + 1], bcs)
                ]
            return Poly(f, quo, normalize=False), Poly(f, rem[:db])
        for k in range(qlen - 1, -1, -1):
            c = f.mul(rem[k + db], inv_lead)
            if f.is_zero(c):
                continue
            quo[k] = c
            for j in range(db + 1):
                rem[k + j] = f.sub(rem[k + j], f.mul(c, bcs[j]))
        return Poly(f, quo, normalize=False), Poly(f, rem[:db])

    def quo(self, other):
        return divmod(self, other)[0]

    def rem(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            raise ZeroDivisionError("monic of zero polynomial")
        lead = self.lc()
        if self.field.eq(lead, self.field.one):
            return self
        return self.scale(self.field.inv(lead))

    def derivative(self):
        f = self.field
        out = []
        k = f.zero
        for c in self.coeffs[1:]:
            k = f.add(k, f.one)
            out.append(f.mul(c, k))
        return Poly(f, out)

    def eval(self, x):
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def reversed(self, n=None):
        """Coefficients reversed as a degree-n window (default: own degree)."""
        if n is None:
            n = len(self.coeffs) - 1
        return Poly(self.field, [self[n - i] for i in range(n + 1)])

    def proportional(self, other):
        """Projective equality: other == c * self for a nonzero scalar c."""
        if self.field != other.field:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.degree() != other.degree():
            return False
        f = self.field
        c = f.div(other.lc(), self.lc())
        return all(f.eq(f.mul(v, c), other[i]) for i, v in enumerate(self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        fmt = getattr(self.field, "format", str)
        terms = [f"{fmt(c)}*x^{i}" for i, c in enumerate(self.coeffs) if not self.field.is_zero(c)]
        return "Poly(" + " + ".join(terms) + ")"


def _divmod_rational_intcore(a, b):
    """Exact rational divmod through integer pseudo-division.

    Clearing denominators and running the gcd-free integer loop avoids
    one Fraction normalization per elementary operation; the true
    quotient and remainder are recovered by a single rescale.  Declined
    (returns None) when the divisor's integer leading coefficient would
    be raised to a large power, which is when plain Fraction arithmetic
    is the safer bet.
    """
    from fractions import Fraction

    delta = a.degree() - b.degree()
    da = _lcm_dens(a.coeffs)
    db_den = _lcm_dens(b.coeffs)
    ib = [c.numerator * (db_den // c.denominator) for c in b.coeffs]
    lb = ib[-1]
    if abs(lb) != 1 and (delta + 1) * lb.bit_length() > 4096:
        return None
    ia = [c.numerator * (da // c.denominator) for c in a.coeffs]
    deg_b = len(ib) - 1
    q = [0] * (delta + 1)
    r = list(ia)
    steps = 0
    while len(r) - 1 >= deg_b and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < deg_b:
            break
        k = len(r) - 1 - deg_b
        c = r[-1]
        q = [lb * x for x in q]
        q[k] += c
        r = [lb * x for x in r]
        for j in range(deg_b + 1):
            r[k + j] -= c * ib[j]
        r.pop()
        steps += 1
    scale = lb ** (delta + 1 - steps)
    q = [x * scale for x in q]
    r = [x * scale for x in r]
    den = lb ** (delta + 1) * da
    field = a.field
    quo = Poly(field, [Fraction(x * db_den, den) for x in q], normalize=False)
    rem = Poly(field, [Fraction(x, den) for x in r])
    return quo, rem


def _lcm_dens(coeffs):
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            g = den
            e = d
            while e:
                g, e = e, g % e
            den = den * d // g
    return den


def poly_gcd(p, q):
    """Monic greatest common divisor; errors when both inputs are zero.

    Over a prime field, large degrees route through the Half-GCD seek
    (softly linear).  Rational gcds always take the classical loop: a
    full-depth seek over Q drags the cofactors' coefficient growth
    along and loses badly to the schoolbook remainder chain.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.degree() < q.degree():
        p, q = q, p
    if p.degree() > 4 * _GCD_SEEK_CUTOFF and hasattr(p.field, "p"):
        return _gcd_fast(p, q)
    while not q.is_zero():
        p, q = q, p.rem(q)
    return p.monic()


_GCD_SEEK_CUTOFF = 32


def _gcd_fast(p, q):
    # one half-gcd seek to constant remainders, then finish classically
    from .euclid import _seek_pair

    if p.degree() == q.degree():
        p, q = q, p.rem(q)
        if q.is_zero():
            return p.monic()
    upper, lower = _seek_pair(p, q, 1)
    if lower.is_zero():
        return upper.monic()
    # a nonzero remainder of degree <= 0 means the next remainder is zero
    return lower.monic()


def _product_tree(field, pts):
    leaves = [Poly(field, (field.neg(x), field.one), normalize=False) for x in pts]
    tree = [leaves]
    while len(tree[-1]) > 1:
        prev = tree[-1]
        tree.append([prev[i] * prev[i + 1] if i + 1 < len(prev) else prev[i]
                     for i in range(0, len(prev), 2)])
    return tree


def multipoint_eval(p, pts):
    """Evaluate p at every point of pts (product-tree remaindering)."""
    if not pts:
        return []
    if len(pts) <= 16 or p.is_zero():
        return [p.eval(x) for x in pts]
    tree = _product_tree(p.field, pts)
    rems = [p.rem(tree[-1][0])]
    for level in reversed(tree[:-1]):
        nxt = []
        for i, node in enumerate(level):
            parent = rems[i // 2]
            nxt.append(parent.rem(node) if parent.degree() >= node.degree() else parent)
        rems = nxt
    return [r[0] if r.coeffs else p.field.zero for r in rems]


def interpolate(field, pairs):
    """Unique polynomial of degree < len(pairs) through the given (x, y) pairs.

    Raises on duplicate abscissae.
    """
    if not pairs:
        return Poly.zero(field)
    xs = [field.coerce(x) for x, _ in pairs]
    ys = [field.coerce(y) for _, y in pairs]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate interpolation abscissae")
    tree = _product_tree(field, xs)
    master = tree[-1][0]
    dvals = multipoint_eval(master.derivative(), xs)
    weights = [field.div(y, d) for y, d in zip(ys, dvals)]
    # combine sum_i w_i * prod_{j != i} (x - x_j) along the tree
    level_polys = [Poly(field, (w,), normalize=False) for w in weights]
    for depth in range(len(tree) - 1):
        nodes = tree[depth]
        nxt = []
        for i in range(0, len(nodes), 2):
            if i + 1 < len(nodes):
                nxt.append(level_polys[i] * nodes[i + 1] + level_polys[i + 1] * nodes[i])
            else:
                nxt.append(level_polys[i])
        level_polys = nxt
    return level_polys[0]
