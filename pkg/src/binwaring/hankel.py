"""Kernel structure of the Hankel matrix family of a binary form.

For a = (a_0, ..., a_D) the family {H_a^k} consists of the
(D-k+1) x (k+1) matrices with entry (i, j) = a_{i+j}.  Two constants
N1 <= N2 with N1 + N2 = D govern every kernel in the family:
dim ker(H^k) = max(0, k - N1) + max(0, k - N2), and all kernels are
generated by shifted copies of two coprime forms Pv (degree N1 + 1)
and Pw (degree N2 + 1).

``kernel_pair`` finds (Pv, Pw, N1, N2) from three consecutive rows of
the extended Euclidean algorithm of A = sum a_i x^i and x^(D+1): a row
(U, R) with U * A = R mod x^(D+1) corresponds to the kernel vector of
the form U(y/x) * x^max(deg U, deg R + 1).  The matrices themselves are
never materialized; ``hankel_apply`` multiplies through the equivalent
polynomial product and is what the dense oracle is checked against.

Vector order convention: a kernel vector is always passed and returned
in the coefficient order of its form, (c_0, ..., c_k) with c_i on
x^i y^(k-i); ``hankel_apply`` reverses internally for the product
trick, so callers never deal with the reversed order.
"""

from .euclid import halfgcd_seek
from .forms import BivariatePoly
from .poly import Poly


class KernelPair:
    __slots__ = ("N1", "N2", "Pv", "Pw")

    def __init__(self, N1, N2, Pv, Pw):
        self.N1 = N1
        self.N2 = N2
        self.Pv = Pv
        self.Pw = Pw

    @property
    def field(self):
        return self.Pv.field

    @property
    def D(self):
        return self.N1 + self.N2

    def __repr__(self):
        return f"KernelPair(N1={self.N1}, N2={self.N2}, Pv={self.Pv!r}, Pw={self.Pw!r})"


def _homogenized_kernel_poly(U, degree):
    """The form U(y/x) * x^degree: coefficient of x^j y^(degree-j) is U[degree - j]."""
    field = U.field
    return BivariatePoly(field, [U[degree - j] for j in range(degree + 1)], degree)


def kernel_pair(f):
    """Compute (Pv, Pw, N1, N2) for the Hankel family of the form f.

    Runs the Half-GCD seek of (A, x^(D+1)) to the first row i with
    deg(R_i) < ceil((D+1)/2) and homogenizes the cofactors of rows
    i-1/i/i+1.  Which neighbouring row supplies Pw depends on how the
    degree drop splits between U_i and R_i:

    * deg U_i > deg R_i (N1 = deg U_i - 1): row i-1, with N2 = deg R_{i-1};
    * deg R_i >= deg U_i (N1 = deg R_i): row i+1, with N2 = deg U_{i+1} - 1.

    The second case covers ties; a tie forces N2 = D - deg R_i while row
    i-1 would report deg R_{i-1} > D - deg R_i.  R_i = 0 lands in the
    first case because deg(0) is below every integer.
    """
    field = f.field
    D = f.D
    A = f.a_poly()
    B = Poly.x_power(field, D + 1)
    bound = (D + 2) // 2  # ceil((D+1)/2)
    row_prev, row_cur, row_next = halfgcd_seek(A, B, bound)
    du, dr = row_cur.U.degree(), row_cur.R.degree()
    k = max(du, dr + 1)
    Pv = _homogenized_kernel_poly(row_cur.U, k)
    N1 = k - 1
    if du > dr:
        N2 = row_prev.R.degree()
        Pw = _homogenized_kernel_poly(row_prev.U, N2 + 1)
    else:
        N2 = row_next.U.degree() - 1
        Pw = _homogenized_kernel_poly(row_next.U, N2 + 1)
    if N1 + N2 != D:
        raise AssertionError(f"kernel constants {N1} + {N2} != {D}")
    return KernelPair(N1, N2, Pv.canonical(), Pw.canonical())


def hankel_apply(field, a, k, u):
    """H_a^k * u without materializing the matrix.

    u is in coefficient order (u_0, ..., u_k); the product is the middle
    coefficient slice of A(x) * sum_j u_{k-j} x^j.
    """
    a = list(a)
    u = list(u)
    if len(u) != k + 1:
        raise ValueError(f"dimension mismatch: expected {k + 1} entries, got {len(u)}")
    D = len(a) - 1
    # k = D + 1 is the vacuous zero-row matrix (it shows up as the home of
    # Pw whenever N1 = 0); the product slice is then empty
    prod = Poly(field, a) * Poly(field, u[::-1])
    return [prod[k + m] for m in range(max(0, D - k + 1))]


def hankel_matrix(a, k):
    """Dense H_a^k (oracle path only)."""
    D = len(a) - 1
    return [[a[i + j] for j in range(k + 1)] for i in range(D - k + 1)]
