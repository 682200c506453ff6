"""Extended Euclidean rows and the divide-and-conquer Half-GCD seek.

The row sequence of the extended Euclidean algorithm on (A, B) is

    (U_0, V_0, R_0) = (0, 1, B),   (U_1, V_1, R_1) = (1, 0, A),
    (U_k, V_k, R_k) = (U_{k-2}, V_{k-2}, R_{k-2}) - Q_{k-1} * (U_{k-1}, ...)

with Q_{k-1} = R_{k-2} quo R_{k-1}, so that U_i A + V_i B = R_i holds
exactly for every row and the remainder degrees strictly decrease.

``egcd_all_rows`` is the quadratic schoolbook loop and doubles as the
oracle.  ``halfgcd_seek`` finds the first row i with deg(R_i) < bound
in softly-linear time: Euclidean steps only depend on the top operand
coefficients (2k + 1 of them suffice while the cumulative quotient
degree stays <= k), so the step matrices can be computed recursively on
truncated operands and composed.  Both paths produce bit-identical rows
because every quotient in the recursion coincides with the classical
one; a cheap degree check guards the fast path and falls back to the
classical loop if it is ever violated.
"""

from .poly import Poly

#: operand degree at or below which the classical loop is used directly
CLASSICAL_CUTOFF = 32


class EgcdRow:
    __slots__ = ("index", "U", "V", "R")

    def __init__(self, index, U, V, R):
        self.index = index
        self.U = U
        self.V = V
        self.R = R

    def __eq__(self, other):
        return (
            isinstance(other, EgcdRow)
            and self.index == other.index
            and self.U == other.U
            and self.V == other.V
            and self.R == other.R
        )

    def __repr__(self):
        return f"EgcdRow(i={self.index}, U={self.U!r}, V={self.V!r}, R={self.R!r})"


def egcd_all_rows(A, B):
    """All rows of the extended Euclidean algorithm of (A, B), down to R = 0."""
    if B.is_zero():
        raise ValueError("zero divisor: B must be nonzero")
    field = A.field
    zero, one = Poly.zero(field), Poly.one(field)
    rows = [EgcdRow(0, zero, one, B), EgcdRow(1, one, zero, A)]
    while not rows[-1].R.is_zero():
        prev, cur = rows[-2], rows[-1]
        q, r = divmod(prev.R, cur.R)
        rows.append(EgcdRow(len(rows), prev.U - q * cur.U, prev.V - q * cur.V, r))
    return rows


# --- 2x2 matrices of polynomials ------------------------------------------
#
# A matrix M encodes a run of Euclidean steps: M * (R_0, R_1)^T gives a
# later pair of consecutive remainders, and the same M applied to the
# initial cofactor columns yields the cofactors of those rows.

def _mat_identity(field):
    one, zero = Poly.one(field), Poly.zero(field)
    return ((one, zero), (zero, one))


def _mat_mul(m2, m1):
    (a, b), (c, d) = m2
    (e, f), (g, h) = m1
    return (
        (a * e + b * g, a * f + b * h),
        (c * e + d * g, c * f + d * h),
    )


def _mat_apply(m, x, y):
    (a, b), (c, d) = m
    return a * x + b * y, c * x + d * y


def _compose_step(q, m):
    # [[0, 1], [1, -q]] * m, exploiting the step structure
    (a, b), (c, d) = m
    return ((c, d), (a - q * c, b - q * d))


def _top(p, s):
    """p quo x^s: the operand truncated to its top coefficients."""
    if s <= 0:
        return p
    return Poly(p.field, p.coeffs[s:])


def _steps_classical(A, B, k):
    n = A.degree()
    m = _mat_identity(A.field)
    upper, lower = A, B
    j = 0
    while lower.degree() >= n - k:
        q, r = divmod(upper, lower)
        m = _compose_step(q, m)
        upper, lower = lower, r
        j += 1
    return j, m


def _steps_fast(A, B, k):
    """Matrix for the maximal j with deg(R_j) >= deg(A) - k.

    (R_0, R_1) = (A, B) with deg A > deg B; returns (j, M) with
    M (A, B)^T = (R_j, R_{j+1})^T.
    """
    n = A.degree()
    if B.degree() < n - k:
        return 0, _mat_identity(A.field)
    if k <= CLASSICAL_CUTOFF or n <= CLASSICAL_CUTOFF:
        return _steps_classical(A, B, k)
    d = (k + 1) // 2
    s = n - 2 * d
    j1, m1 = _steps_fast(_top(A, s), _top(B, s), d)
    upper, lower = _mat_apply(m1, A, B) if j1 else (A, B)
    if lower.degree() < n - k:
        return j1, m1
    q, r = divmod(upper, lower)
    m = _compose_step(q, m1)
    j = j1 + 1
    if r.degree() < n - k:
        return j, m
    d2 = k - (n - lower.degree())
    s2 = lower.degree() - 2 * d2
    j2, m2 = _steps_fast(_top(lower, s2), _top(r, s2), d2)
    return j + j2, _mat_mul(m2, m)


def _seek_pair(A, B, bound):
    """(R_{i-1}, R_i) of the remainder sequence of (A, B), where i is the
    first index with deg(R_i) < bound.  Assumes deg A >= bound > ...
    """
    j, m = _steps_fast(A, B, A.degree() - bound)
    return _mat_apply(m, A, B)


def halfgcd_seek(A, B, bound):
    """Rows (i-1, i, i+1) of the eGCD of (A, B) around the first index i
    with deg(R_i) < bound.

    Row i+1 is None when R_i = 0.  The rows are bit-identical to the
    ones ``egcd_all_rows`` produces.
    """
    if B.is_zero():
        raise ValueError("zero divisor: B must be nonzero")
    if bound <= 0:
        raise ValueError("bound must be positive")
    if B.degree() < bound:
        raise ValueError("deg(B) < bound: row 0 already qualifies, no previous row")
    field = A.field
    if A.degree() >= B.degree():
        # non-standard degree order: settle it with one explicit step
        q, r = divmod(B, A)
        pre = ((Poly.zero(field), Poly.one(field)), (Poly.one(field), -q))
        base = 1
        first, second = A, r
    else:
        pre = _mat_identity(field)
        base = 0
        first, second = B, A
    j, m = _steps_fast(first, second, first.degree() - bound)
    if base:
        m = _mat_mul(m, pre)
    r_prev, r_cur = _mat_apply(m, B, A)
    i = base + j + 1
    if not (r_prev.degree() >= bound > r_cur.degree()):
        return _seek_classical(A, B, bound)
    u_prev, u_cur = m[0][1], m[1][1]
    v_prev, v_cur = m[0][0], m[1][0]
    row_prev = EgcdRow(i - 1, u_prev, v_prev, r_prev)
    row_cur = EgcdRow(i, u_cur, v_cur, r_cur)
    if r_cur.is_zero():
        return row_prev, row_cur, None
    q, r = divmod(r_prev, r_cur)
    row_next = EgcdRow(i + 1, u_prev - q * u_cur, v_prev - q * v_cur, r)
    return row_prev, row_cur, row_next


def _seek_classical(A, B, bound):
    # fallback; also the reference the fast path is tested against
    rows = egcd_all_rows(A, B)
    for i, row in enumerate(rows):
        if row.R.degree() < bound:
            nxt = rows[i + 1] if i + 1 < len(rows) else None
            return rows[i - 1], row, nxt
    raise AssertionError("remainder sequence never dropped below bound")
