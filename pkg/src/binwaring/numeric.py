"""Certified numeric approximation of symbolic decompositions.

All rigor comes from complex *balls* (center plus radius): operations
round the center to the working precision and push every rounding and
input error into the radius, always outward.  Root isolation uses the
classical inclusion bound for a degree-n polynomial,

    min_k |z - alpha_k|  <=  n |Q(z) / Q'(z)|,

so a ball of that radius around each Aberth iterate contains at least
one root; n pairwise disjoint balls therefore contain exactly one root
each.  Residuals are reported in the monomial-coefficient basis
c_i = C(D, i) a_i and are upper bounds on the deviation of the
*reported centers*, so an exact recomputation can never exceed them.

Working precision is adaptive: start at ell + 64 bits and double until
the certified residual drops below 2^-ell (a bounded number of times).
"""

from fractions import Fraction
from math import comb, isqrt

from mpmath import mp, mpc, mpf

from .hankel import hankel_apply

_INFLATE = None  # computed per working precision


class PrecisionBudgetExceeded(RuntimeError):
    """Raised when doubling the working precision did not reach the target."""

    def __init__(self, message, residual_bound=None):
        super().__init__(message)
        self.residual_bound = residual_bound


def _eps():
    return mpf(2) ** (3 - mp.prec)


def _inflate(x):
    return x * (mpf(1) + mpf(2) ** -40)


class Ball:
    """Complex ball: center (re, im) and radius rad >= 0."""

    __slots__ = ("re", "im", "rad")

    def __init__(self, re, im=0, rad=0):
        self.re = mpf(re) if not isinstance(re, mpf) else re
        self.im = mpf(im) if not isinstance(im, mpf) else im
        self.rad = mpf(rad) if not isinstance(rad, mpf) else rad

    @classmethod
    def from_rational(cls, q):
        q = Fraction(q)
        re = mpf(q.numerator) / mpf(q.denominator)
        rad = mpf(0) if _mpf_to_fraction(re) == q else abs(re) * _eps()
        return cls(re, mpf(0), rad)

    @classmethod
    def from_center(cls, z):
        if isinstance(z, mpc):
            return cls(z.real, z.imag, mpf(0))
        z = mpc(z)
        return cls(z.real, z.imag, mpf(0))

    def center(self):
        return mp.make_mpc((self.re._mpf_, self.im._mpf_))

    def abs_upper(self):
        return _inflate(mp.hypot(self.re, self.im)) + self.rad

    def abs_lower(self):
        lo = mp.hypot(self.re, self.im) * (mpf(1) - mpf(2) ** -40) - self.rad
        return lo if lo > 0 else mpf(0)

    def __add__(self, other):
        other = _as_ball(other)
        re, im = self.re + other.re, self.im + other.im
        rad = self.rad + other.rad + mp.hypot(re, im) * _eps()
        return Ball(re, im, _inflate(rad))

    def __sub__(self, other):
        other = _as_ball(other)
        re, im = self.re - other.re, self.im - other.im
        rad = self.rad + other.rad + mp.hypot(re, im) * _eps()
        return Ball(re, im, _inflate(rad))

    def __mul__(self, other):
        other = _as_ball(other)
        a, b = self, other
        re = a.re * b.re - a.im * b.im
        im = a.re * b.im + a.im * b.re
        am = mp.hypot(a.re, a.im)
        bm = mp.hypot(b.re, b.im)
        rad = am * b.rad + bm * a.rad + a.rad * b.rad + (mp.hypot(re, im) + am * bm) * _eps()
        return Ball(re, im, _inflate(rad))

    def __truediv__(self, other):
        other = _as_ball(other)
        lb = other.abs_lower()
        if lb <= 0:
            raise ArithmeticError("division by a ball containing zero")
        denom = other.re * other.re + other.im * other.im
        re = (self.re * other.re + self.im * other.im) / denom
        im = (self.im * other.re - self.re * other.im) / denom
        cm = mp.hypot(re, im)
        rad = (self.rad + cm * other.rad) / lb + cm * _eps() * 4
        return Ball(re, im, _inflate(rad))

    def __repr__(self):
        return f"Ball({self.re!r}, {self.im!r}, rad={self.rad!r})"


def _as_ball(x):
    if isinstance(x, Ball):
        return x
    if isinstance(x, (int, Fraction)):
        return Ball.from_rational(x)
    return Ball.from_center(x)


def _mpf_to_fraction(x):
    # never rebuild an existing mpf: that would re-round it to the
    # *current* precision and silently degrade high-precision values
    if not isinstance(x, mpf):
        x = mpf(x)
    sign, man, exp, bc = x._mpf_
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError("cannot convert a non-finite float exactly")
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def _ball_horner(coeff_balls, z):
    acc = Ball(0)
    for c in reversed(coeff_balls):
        acc = acc * z + c
    return acc


def _poly_rational_balls(p):
    return [Ball.from_rational(c) for c in p.coeffs]


# --- root isolation ---------------------------------------------------------

def _aberth(coeffs, zs, max_iter=400):
    """Aberth-Ehrlich simultaneous iteration on monic coefficient list."""
    n = len(coeffs) - 1
    tol = mpf(2) ** (-(mp.prec - 8))
    for _ in range(max_iter):
        moved = mpf(0)
        pz = []
        for z in zs:
            acc = mpc(1)
            for c in reversed(coeffs[:-1]):
                acc = acc * z + c
            pz.append(acc)
        dz = []
        dcoeffs = [c * (i + 1) for i, c in enumerate(coeffs[1:])]
        for z in zs:
            acc = mpc(0)
            for c in reversed(dcoeffs):
                acc = acc * z + c
            dz.append(acc)
        new = list(zs)
        for j in range(n):
            if pz[j] == 0:
                continue
            if dz[j] == 0:
                new[j] = zs[j] * (1 + mpf(2) ** -16) + mpf(2) ** -16
                moved = mpf(1)
                continue
            w = pz[j] / dz[j]
            s = mpc(0)
            for k in range(n):
                if k != j:
                    s += 1 / (zs[j] - zs[k])
            denom = 1 - w * s
            corr = w if denom == 0 else w / denom
            new[j] = zs[j] - corr
            scale = max(mpf(1), abs(new[j]))
            moved = max(moved, abs(corr) / scale)
        zs = new
        if moved < tol:
            break
    return zs


def _newton_refine(coeffs, zs, steps):
    dcoeffs = [c * (i + 1) for i, c in enumerate(coeffs[1:])]
    out = []
    for z in zs:
        for _ in range(steps):
            p = mpc(1)
            for c in reversed(coeffs[:-1]):
                p = p * z + c
            d = mpc(0)
            for c in reversed(dcoeffs):
                d = d * z + c
            if d == 0:
                break
            z = z - p / d
        out.append(z)
    return out


def _certify(Qx, zs, target_rad):
    """Disjoint inclusion balls around the iterates, or None."""
    n = Qx.degree()
    q_balls = _poly_rational_balls(Qx)
    dq_balls = _poly_rational_balls(Qx.derivative())
    balls = []
    for z in zs:
        zb = Ball(z.real, z.imag, 0)
        qv = _ball_horner(q_balls, zb)
        dv = _ball_horner(dq_balls, zb)
        lo = dv.abs_lower()
        if lo <= 0:
            return None
        rad = _inflate(mpf(n) * qv.abs_upper() / lo)
        if rad > target_rad:
            return None
        balls.append(Ball(z.real, z.imag, rad))
    for i in range(n):
        for j in range(i + 1, n):
            gap = mp.hypot(balls[i].re - balls[j].re, balls[i].im - balls[j].im)
            if gap * (mpf(1) - mpf(2) ** -40) <= balls[i].rad + balls[j].rad:
                return None
    return balls


def roots_approx(Qx, precision_bits, max_doublings=8):
    """Pairwise-disjoint root balls of a square-free rational polynomial,
    radii at most 2^-precision_bits."""
    from .poly import poly_gcd

    if Qx.degree() < 1:
        raise ValueError("root isolation needs degree >= 1")
    if poly_gcd(Qx, Qx.derivative()).degree() != 0:
        raise ValueError("polynomial is not square-free")
    n = Qx.degree()
    target = Fraction(1, 2 ** precision_bits)
    wp = max(64, precision_bits + 32, 4 * n)
    zs = None
    for _ in range(max_doublings + 1):
        with mp.workprec(wp):
            lead = Fraction(Qx.lc())
            coeffs = [Ball.from_rational(Fraction(c) / lead).center() for c in Qx.coeffs]
            if zs is None:
                radius = 1 + max(abs(c) for c in coeffs[:-1]) if n else mpf(1)
                zs = [
                    radius * mp.expjpi(mpf(2 * j) / n + mpf(1) / (2 * n + 1))
                    for j in range(n)
                ]
                zs = _aberth(coeffs, zs)
            else:
                zs = _newton_refine(coeffs, zs, steps=8)
            target_rad = mpf(target.numerator) / mpf(target.denominator)
            balls = _certify(Qx, zs, target_rad)
            if balls is not None:
                return balls
        wp *= 2
    raise PrecisionBudgetExceeded(
        f"could not certify disjoint root balls of radius 2^-{precision_bits} "
        f"within the precision budget"
    )


# --- decomposition-level certification --------------------------------------

class NumericDecomposition:
    __slots__ = ("terms", "requested_bits", "working_precision", "residual_bound")

    def __init__(self, terms, requested_bits, working_precision, residual_bound):
        self.terms = terms
        self.requested_bits = requested_bits
        self.working_precision = working_precision
        self.residual_bound = residual_bound

    def __repr__(self):
        return (
            f"NumericDecomposition({len(self.terms)} terms, "
            f"bits={self.requested_bits}, residual<={float(self.residual_bound):.3g})"
        )


def _upper_fraction(x):
    """Exact Fraction upper bound of a nonnegative mpf."""
    f = _mpf_to_fraction(x)
    return f if f >= 0 else Fraction(0)


def _residual_balls(f, finite_terms, inf_lambda):
    """Certified residual of the center decomposition, ball arithmetic."""
    D = f.D
    c = f.monomial_coeffs()
    worst = mpf(0)
    contributions = [Ball(0) for _ in range(D + 1)]
    for lam, alpha in finite_terms:
        lam_b = Ball(lam.real, lam.imag, 0)
        alpha_b = Ball(alpha.real, alpha.imag, 0)
        power = Ball(1)
        for i in range(D + 1):
            term = lam_b * power * Ball.from_rational(comb(D, i))
            contributions[i] = contributions[i] + term
            if i < D:
                power = power * alpha_b
    if inf_lambda is not None:
        contributions[D] = contributions[D] + Ball.from_rational(inf_lambda)
    for i in range(D + 1):
        dev = contributions[i] - Ball.from_rational(Fraction(c[i]))
        worst = max(worst, dev.abs_upper())
    return _upper_fraction(worst)


def decompose_numeric(sd, f, ell, max_doublings=8, max_precision=None):
    """Approximate the terms of a symbolic decomposition to accuracy 2^-ell.

    Adaptive: roots and coefficients are recomputed at doubling working
    precision until the certified residual bound (monomial-coefficient
    basis, for the reported centers) drops to 2^-ell.
    """
    field = f.field
    if hasattr(field, "p"):
        raise ValueError("numeric approximation requires the rational field")
    if sd.D != f.D or any(
        not field.is_zero(x) for x in hankel_apply(field, f.a, sd.Q.n, sd.Q.v)
    ):
        raise ValueError("decomposition does not belong to this form (Sylvester check)")
    if ell < 1:
        raise ValueError("ell must be positive")
    target = Fraction(1, 2 ** ell)
    p = ell + 64
    last = None
    for _ in range(max_doublings + 1):
        if max_precision is not None and p > max_precision:
            break
        with mp.workprec(p):
            if sd.Qx.degree() >= 1:
                root_balls = roots_approx(sd.Qx, p)
            else:
                root_balls = []
            t_balls = _poly_rational_balls(sd.T)
            dq_balls = _poly_rational_balls(sd.dQ)
            terms = []
            finite = []
            for rb in root_balls:
                lam = _ball_horner(t_balls, rb) / _ball_horner(dq_balls, rb)
                terms.append((lam, rb, False))
                finite.append((lam.center(), rb.center()))
            inf_lambda = None
            if sd.y_divides:
                inf_lambda = Fraction(sd.lambda_inf)
                terms.append((Ball.from_rational(inf_lambda), Ball(0), True))
            bound = _residual_balls(f, finite, inf_lambda)
        last = bound
        if bound <= target:
            return NumericDecomposition(terms, ell, p, bound)
        p *= 2
    raise PrecisionBudgetExceeded(
        f"residual bound {float(last) if last is not None else '?'} did not reach "
        f"2^-{ell} within the precision budget",
        residual_bound=last,
    )


# --- exact residual ----------------------------------------------------------

def _sqrt_upper(q):
    """Exact rational upper bound on sqrt(q) for q >= 0 (tight to ~2^-78)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0)
    num, den = q.numerator, q.denominator
    shift = max(0, 80 - (num.bit_length() - den.bit_length()) // 2)
    m = (num << (2 * shift)) // den + 1
    return Fraction(isqrt(m) + 1, 1 << shift)


def _exact_value(x):
    """(re, im) as exact Fractions from Fraction/int/tuple/mpf/mpc/Ball."""
    if isinstance(x, Ball):
        return _mpf_to_fraction(x.re), _mpf_to_fraction(x.im)
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0)
    if isinstance(x, tuple):
        return Fraction(x[0]), Fraction(x[1])
    if isinstance(x, mpf):
        return _mpf_to_fraction(x), Fraction(0)
    if isinstance(x, mpc):
        return _mpf_to_fraction(x.real), _mpf_to_fraction(x.imag)
    raise TypeError(f"cannot take {type(x).__name__} as an exact term value")


def residual_norm(f, terms):
    """Certified upper bound on max_i |c_i - c~_i| for the given terms.

    Terms are triples (lambda, alpha, at_infinity); values may be exact
    rationals, (re, im) pairs, mpmath numbers or Balls (centers are
    used).  The computation is exact over Gaussian rationals, so a term
    list that reproduces f yields exactly zero.
    """
    D = f.D
    c = f.monomial_coeffs()
    acc = [(Fraction(0), Fraction(0)) for _ in range(D + 1)]
    for term in terms:
        lam, alpha, at_inf = term
        lr, li = _exact_value(lam)
        if at_inf:
            acc[D] = (acc[D][0] + lr, acc[D][1] + li)
            continue
        ar, ai = _exact_value(alpha)
        pr, pi = Fraction(1), Fraction(0)
        for i in range(D + 1):
            binom = comb(D, i)
            tr = (lr * pr - li * pi) * binom
            ti = (lr * pi + li * pr) * binom
            acc[i] = (acc[i][0] + tr, acc[i][1] + ti)
            if i < D:
                pr, pi = pr * ar - pi * ai, pr * ai + pi * ar
    worst_sq = Fraction(0)
    for i in range(D + 1):
        dr = acc[i][0] - Fraction(c[i])
        di = acc[i][1]
        worst_sq = max(worst_sq, dr * dr + di * di)
    return _sqrt_upper(worst_sq)
