"""Symbolic Waring decomposition of binary forms.

The pipeline: kernel_pair -> rank -> a square-free kernel polynomial Q
of that rank -> the closed form of the coefficients.  By Sylvester's
criterion a square-free form Q of degree r with vec(Q) in ker(H_a^r)
certifies a rank-r decomposition whose points are the projective roots
of Q; the coefficients need no root extraction because the transposed
Vandermonde system has the closed-form solution

    lambda_j = T(alpha_j) / Q'(alpha_j),
    T(x) = Quo(Q(x) * R(x), x^r),  R(x) = sum_{i=1}^{r} a_{r-i} x^(i-1)

over the roots alpha_j of Q(x, 1) (Kaltofen's evaluation trick).  A
root at (1 : 0), i.e. y | Q, contributes the extra term lambda_inf *
x^D with lambda_inf = a_D - sum u_i a_{D-r+i+1} once Q is scaled so the
coefficient of x^(r-1) y is -1.

The deterministic Q construction sweeps mu0 = 0, 1, ... in
Q = mu0 * y^(N2-N1) * Pv + Pw; at most 2D + 2 values can fail, so the
sweep is guaranteed to succeed within 2D + 3 candidates.  The
interpolated construction instead prescribes N2 - N1 + 1 points for Q
to vanish on and rejects non-square-free outcomes (Las Vegas).
"""

import random

from .forms import BinaryForm, BivariatePoly, is_squarefree_form
from .hankel import hankel_apply, kernel_pair
from .poly import Poly, interpolate


class SymbolicDecomposition:
    """Exact decomposition data: rank, Q, and the rational function T/Q'."""

    __slots__ = (
        "rank", "border_rank", "unique", "N1", "N2",
        "Q", "y_divides", "Qx", "T", "dQ", "lambda_inf", "D", "field",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw.pop(name))
        if kw:
            raise TypeError(f"unexpected fields: {sorted(kw)}")

    def finite_term_count(self):
        return self.rank - (1 if self.y_divides else 0)

    def __repr__(self):
        return (
            f"SymbolicDecomposition(rank={self.rank}, border_rank={self.border_rank}, "
            f"unique={self.unique}, y_divides={self.y_divides})"
        )


def rank_of(kp):
    """(rank, unique) from a kernel pair: N1 + 1 when Pv is square-free,
    N2 + 1 otherwise; unique only in the strict N1 < N2 low-rank case."""
    if is_squarefree_form(kp.Pv):
        return kp.N1 + 1, kp.N1 < kp.N2
    return kp.N2 + 1, False


def _require_high_rank(kp):
    if is_squarefree_form(kp.Pv):
        raise ValueError("Pv is square-free: Q = Pv, no combination needed")


def _ensure_y2_free(kp):
    """Pw with y^2 not dividing it (swap in x^(N2-N1) Pv + Pw when needed)."""
    Pw = kp.Pw
    if Pw.y_valuation() >= 2:
        Pw = kp.Pv.shift_x(kp.N2 - kp.N1) + Pw
    return Pw


def build_Q_deterministic(kp, with_index=False):
    """First square-free Q = mu0 * y^(N2-N1) * Pv + Pw over mu0 = 0, 1, 2, ...

    Guaranteed to succeed within 2D + 3 candidates; exhausting them
    means an upstream invariant was violated.
    """
    _require_high_rank(kp)
    field = kp.field
    D = kp.D
    Pw = _ensure_y2_free(kp)
    shifted_Pv = kp.Pv.shift_y(kp.N2 - kp.N1)
    mu0 = field.zero
    for index in range(2 * D + 3):
        Q = shifted_Pv.scale(mu0) + Pw
        if not Q.is_zero() and is_squarefree_form(Q):
            Q = Q.canonical()
            return (Q, index) if with_index else Q
        mu0 = field.add(mu0, field.one)
    raise AssertionError(
        "no square-free combination within 2D + 3 candidates; "
        "the kernel pair violates its coprimality invariant"
    )


def build_Q_interpolated(kp, points=None, rng_seed=0, max_attempts=32):
    """Square-free Q = P_mu * Pv + Pw vanishing on prescribed points.

    P_mu is interpolated from P_mu(point) = -Pw/Pv there; with N2-N1+1
    distinct points avoiding the roots of Pv the kernel polynomial
    through them is unique.  Caller-supplied points (pairs (alpha, 1),
    optionally one (1, 0)) are tried first; when the result is not
    square-free, fresh seeded small-integer points are drawn and the
    square-free check repeats (Las Vegas).
    """
    _require_high_rank(kp)
    field = kp.field
    m = kp.N2 - kp.N1
    rng = random.Random(rng_seed)
    attempts = []
    if points is not None:
        attempts.append(_normalize_points(field, kp, points, strict=True))
    pool_width = max(8, 2 * m + 4)
    for _ in range(max_attempts):
        attempts.append(None)  # draw lazily
    last = None
    for trial, chosen in enumerate(attempts):
        if chosen is None:
            chosen = _draw_points(rng, field, kp, m + 1, pool_width)
            pool_width *= 2
        Q = _interpolated_candidate(field, kp, chosen)
        if not Q.is_zero() and is_squarefree_form(Q):
            return Q.canonical()
        last = Q
    raise ValueError(
        f"no square-free interpolated Q after {len(attempts)} attempts "
        f"(last candidate degree {last.n if last is not None else '?'})"
    )


def _normalize_points(field, kp, points, strict):
    out = []
    for pt in points:
        if isinstance(pt, tuple):
            alpha, beta = field.coerce(pt[0]), field.coerce(pt[1])
        else:
            alpha, beta = field.coerce(pt), field.one
        if field.is_zero(alpha) and field.is_zero(beta):
            raise ValueError("(0, 0) is not a projective point")
        if not field.is_zero(beta):
            alpha, beta = field.div(alpha, beta), field.one
        else:
            alpha, beta = field.one, field.zero
        if field.is_zero(kp.Pv.eval(alpha, beta)):
            raise ValueError(f"point ({alpha}, {beta}) is a root of Pv")
        out.append((alpha, beta))
    if len({p for p in out}) != len(out):
        raise ValueError("interpolation points must be pairwise distinct")
    if len(out) != kp.N2 - kp.N1 + 1:
        raise ValueError(f"expected {kp.N2 - kp.N1 + 1} points, got {len(out)}")
    return out


def _draw_points(rng, field, kp, count, width):
    # small integers keep coefficient growth down; any base-field points work
    pool = list(range(-width, width + 1))
    rng.shuffle(pool)
    chosen = []
    for c in pool:
        alpha = field.coerce(c)
        if field.is_zero(kp.Pv.eval(alpha, field.one)):
            continue
        chosen.append((alpha, field.one))
        if len(chosen) == count:
            return chosen
    raise ValueError("point pool exhausted; Pv vanishes on too many small integers")


def _interpolated_candidate(field, kp, pts):
    m = kp.N2 - kp.N1
    finite = [(a, b) for (a, b) in pts if not field.is_zero(b)]
    infinite = [p for p in pts if field.is_zero(p[1])]
    lead = field.zero
    if infinite:
        # P_mu(1, 0) is the x^m coefficient
        lead = field.neg(field.div(kp.Pw.eval(field.one, field.zero),
                                   kp.Pv.eval(field.one, field.zero)))
    pairs = []
    for alpha, beta in finite:
        val = field.neg(field.div(kp.Pw.eval(alpha, beta), kp.Pv.eval(alpha, beta)))
        if infinite:
            val = field.sub(val, field.mul(lead, _power(field, alpha, m)))
        pairs.append((alpha, val))
    P_mu = interpolate(field, pairs) if pairs else Poly.zero(field)
    if infinite:
        P_mu = P_mu + Poly.x_power(field, m).scale(lead)
    P_mu_form = BivariatePoly(field, [P_mu[i] for i in range(m + 1)], m)
    return P_mu_form * kp.Pv + kp.Pw


def _power(field, x, k):
    acc = field.one
    for _ in range(k):
        acc = field.mul(acc, x)
    return acc


def _kaltofen_data(field, Qx, a):
    """(T, dQ) for a monic Qx of degree r >= 1 and coefficient prefix a."""
    r = Qx.degree()
    R = Poly(field, [a[r - i] for i in range(1, r + 1)])
    prod = Qx * R
    T = Poly(field, prod.coeffs[r:])
    return T, Qx.derivative()


def symbolic_lambda(f, Q, kp=None, verified=False):
    """Attach the coefficient data (Qx, T, dQ, lambda_inf) to a kernel
    polynomial Q of f.

    Preconditions: Q is square-free of degree r = rank and its
    coefficient vector lies in ker(H_a^r).  Both are checked unless the
    caller just established them and passes verified=True.
    """
    field = f.field
    r = Q.n
    if not verified:
        if Q.is_zero() or not is_squarefree_form(Q):
            raise ValueError("Q must be a square-free form")
        if any(not field.is_zero(c) for c in hankel_apply(field, f.a, r, Q.v)):
            raise ValueError("Sylvester check failed: vec(Q) is not in ker(H^r)")
    y_divides = field.is_zero(Q.v[r])
    if not y_divides:
        Qx = Q.poly_in_x().monic()
        T, dQ = _kaltofen_data(field, Qx, f.a)
        lambda_inf = None
    else:
        # square-free, so y^2 does not divide Q and v[r-1] != 0
        scale = field.neg(field.inv(Q.v[r - 1]))
        u = [field.mul(scale, Q.v[i]) for i in range(r - 1)]
        lambda_inf = f.a[f.D]
        for i, ui in enumerate(u):
            lambda_inf = field.sub(lambda_inf, field.mul(ui, f.a[f.D - r + i + 1]))
        Wx = Poly(field, u + [field.neg(field.one)], normalize=False)
        Qx = Wx.monic()
        if Qx.degree() >= 1:
            T, dQ = _kaltofen_data(field, Qx, f.a)
        else:
            T, dQ = Poly.zero(field), Poly.zero(field)
    meta = _metadata(f, kp, r)
    return SymbolicDecomposition(
        rank=r,
        border_rank=meta["border_rank"],
        unique=meta["unique"],
        N1=meta["N1"],
        N2=meta["N2"],
        Q=Q.canonical(),
        y_divides=y_divides,
        Qx=Qx,
        T=T,
        dQ=dQ,
        lambda_inf=lambda_inf,
        D=f.D,
        field=field,
    )


def _metadata(f, kp, r):
    if kp is None:
        kp = kernel_pair(f)
    unique = r == kp.N1 + 1 and kp.N1 < kp.N2
    return {"border_rank": kp.N1 + 1, "unique": unique, "N1": kp.N1, "N2": kp.N2}


def fast_decompose(f, strategy="deterministic", rng_seed=0):
    """Full symbolic decomposition of a binary form.

    strategy selects how Q is built in the non-unique (rank N2 + 1)
    branch: "deterministic" sweeps mu0, "interpolated" prescribes seeded
    random vanishing points.  The rank N1 + 1 branch ignores the
    strategy; it is deterministic either way.
    """
    if strategy not in ("deterministic", "interpolated"):
        raise ValueError(f"unknown strategy {strategy!r}")
    field = f.field
    if f.D == 1:
        # f = a_1 x + a_0 y is its own rank-1 decomposition; the kernel
        # family is a single 1 x 2 matrix and Q falls out directly.
        Q = BivariatePoly(field, [field.neg(f.a[1]), f.a[0]], 1).canonical()
        return symbolic_lambda(f, Q)
    kp = kernel_pair(f)
    if is_squarefree_form(kp.Pv):
        # covers N1 = N2 only when Pv happens to be square-free there;
        # the rank agrees either way since then N1 + 1 = N2 + 1
        Q = kp.Pv.canonical()
    elif strategy == "deterministic":
        Q = build_Q_deterministic(kp)
    else:
        Q = build_Q_interpolated(kp, rng_seed=rng_seed)
    return symbolic_lambda(f, Q, kp=kp)


def reconstruct_from_roots(f, sd, roots):
    """Re-expand sum_j (T/dQ)(alpha_j) (alpha_j x + y)^D (+ lambda_inf x^D)
    over caller-supplied exact roots of Qx; returns the normalized
    coefficient vector.  Exactness oracle for rational-root instances.
    """
    field = f.field
    D = f.D
    acc = [field.zero] * (D + 1)
    for alpha in roots:
        lam = field.div(sd.T.eval(alpha), sd.dQ.eval(alpha))
        p = field.one
        for i in range(D + 1):
            acc[i] = field.add(acc[i], field.mul(lam, p))
            p = field.mul(p, alpha)
    if sd.y_divides:
        acc[D] = field.add(acc[D], sd.lambda_inf)
    return acc
