"""Brute-force oracles and instance generators.

Everything here is deliberately slow and independent of the fast
pipeline: dense Hankel matrices, fraction-free elimination, dense
linear solves.  The fast modules are validated against these at desk
scale.

Elimination over the rationals clears denominators row-wise (which
never changes a nullspace) and then runs fraction-free Bareiss steps on
integers, so there is no per-entry gcd churn.
"""

from fractions import Fraction

from .forms import BinaryForm, BivariatePoly, is_squarefree_form
from .hankel import hankel_matrix


def _int_rows(field, M):
    """Row-scale a matrix into exact integer rows when possible."""
    rows = []
    for row in M:
        if all(isinstance(x, Fraction) for x in row):
            den = 1
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
            rows.append([int(x * den) for x in row])
        else:
            rows.append(list(row))
    return rows


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _bareiss_echelon(rows):
    """Fraction-free row echelon; returns (echelon rows, pivot columns)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            # every row below the pivot must take the full update; the
            # exact divisions of later steps depend on it
            row_i = rows[i]
            fac = row_i[c]
            rows[i] = [
                (piv * row_i[j] - fac * rows[r][j]) // prev
                for j in range(ncols)
            ]
        pivots.append(c)
        prev = piv
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace_from_echelon(ech, pivots, ncols):
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i in range(len(ech) - 1, -1, -1):
            pc = pivots[i]
            s = sum((Fraction(ech[i][j]) * vec[j] for j in range(pc + 1, ncols)), Fraction(0))
            vec[pc] = -s / ech[i][pc]
        basis.append(tuple(vec))
    return basis


def _nullspace_prime(field, M):
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(rows[i][fc])
        basis.append(tuple(vec))
    return basis


def dense_nullspace(field, a, k):
    """Exact basis of ker(H_a^k) from the materialized matrix."""
    D = len(a) - 1
    if not 1 <= k <= D:
        raise ValueError(f"k must lie in 1..{D}")
    M = hankel_matrix(list(a), k)
    if hasattr(field, "p"):
        return _nullspace_prime(field, M)
    rows = _int_rows(field, M)
    ech, pivots = _bareiss_echelon(rows)
    return _nullspace_from_echelon(ech, pivots, k + 1)


def _nullity(field, a, k):
    M = hankel_matrix(list(a), k)
    if hasattr(field, "p"):
        return len(_nullspace_prime(field, M))
    ech, _ = _bareiss_echelon(_int_rows(field, M))
    return (k + 1) - len(ech)


class DenseKernelReport:
    """Kernel dimensions of the whole family plus the fitted (N1, N2)."""

    __slots__ = ("field", "a", "D", "nullity", "N1", "N2")

    def __init__(self, field, a):
        self.field = field
        self.a = tuple(a)
        self.D = len(self.a) - 1
        self.nullity = {k: _nullity(field, self.a, k) for k in range(1, self.D + 1)}
        first = next(k for k in range(1, self.D + 1) if self.nullity[k] > 0)
        self.N1 = first - 1
        self.N2 = self.D - self.N1

    def profile_matches(self):
        """True iff every kernel dimension fits max(0,k-N1) + max(0,k-N2)."""
        return all(
            self.nullity[k] == max(0, k - self.N1) + max(0, k - self.N2)
            for k in range(1, self.D + 1)
        )

    def basis(self, k):
        return dense_nullspace(self.field, self.a, k)

    def to_json(self):
        return {
            "D": self.D,
            "N1": self.N1,
            "N2": self.N2,
            "nullity": {str(k): v for k, v in sorted(self.nullity.items())},
        }


def incr_decomp_check(f, r):
    """Decision form of the incremental rank search: is r the minimal
    rank of f?  Exact, via dense kernels only.

    For k <= N1 no kernel polynomial exists at all.  For N1 < k <= N2
    every kernel polynomial is a multiple of Pv, so a square-free one
    exists iff Pv itself is square-free.  Past N2 (and at N1 + 1 when
    N1 = N2) the two coprime generators always combine into a
    square-free polynomial.
    """
    if not 1 <= r <= f.D:
        return False
    report = DenseKernelReport(f.field, f.a)
    n1, n2 = report.N1, report.N2
    if n1 == n2:
        minimal = n1 + 1
    else:
        basis = report.basis(n1 + 1)
        if len(basis) != 1:
            raise AssertionError("unique-kernel regime must have nullity 1")
        Pv = BivariatePoly(f.field, [f.field.coerce(x) for x in basis[0]], n1 + 1)
        minimal = n1 + 1 if is_squarefree_form(Pv) else n2 + 1
    return r == minimal


def vandermonde_solve_exact(field, alphas, a):
    """Exact solve of the transposed Vandermonde system
    sum_j lambda_j alpha_j^i = a_i, i = 0..r-1."""
    alphas = [field.coerce(x) for x in alphas]
    if len(set(alphas)) != len(alphas):
        raise ValueError("repeated evaluation points")
    r = len(alphas)
    if len(a) != r:
        raise ValueError("need exactly as many right-hand entries as points")
    rows = []
    p = [field.one] * r
    for i in range(r):
        rows.append(list(p) + [field.coerce(a[i])])
        p = [field.mul(pj, aj) for pj, aj in zip(p, alphas)]
    # dense Gaussian elimination with partial (first nonzero) pivoting
    for c in range(r):
        pr = next(i for i in range(c, r) if not field.is_zero(rows[i][c]))
        rows[c], rows[pr] = rows[pr], rows[c]
        inv = field.inv(rows[c][c])
        rows[c] = [field.mul(inv, x) for x in rows[c]]
        for i in range(r):
            if i != c and not field.is_zero(rows[i][c]):
                fmul = rows[i][c]
                rows[i] = [field.sub(x, field.mul(fmul, y)) for x, y in zip(rows[i], rows[c])]
    return [rows[i][r] for i in range(r)]


def rational_instance(field, points, lambdas, D):
    """Ground-truth form sum_j lambda_j (alpha_j x + beta_j y)^D."""
    points = [(field.coerce(al), field.coerce(be)) for al, be in points]
    lambdas = [field.coerce(l) for l in lambdas]
    if len(points) != len(lambdas):
        raise ValueError("one lambda per point required")
    if any(field.is_zero(l) for l in lambdas):
        raise ValueError("lambdas must be nonzero")
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            (a1, b1), (a2, b2) = points[i], points[j]
            if field.is_zero(field.sub(field.mul(a1, b2), field.mul(a2, b1))):
                raise ValueError("projectively duplicate points")
    a = [field.zero] * (D + 1)
    for (alpha, beta), lam in zip(points, lambdas):
        ap = field.one
        powers_alpha = []
        for _ in range(D + 1):
            powers_alpha.append(ap)
            ap = field.mul(ap, alpha)
        bp = field.one
        powers_beta = []
        for _ in range(D + 1):
            powers_beta.append(bp)
            bp = field.mul(bp, beta)
        for i in range(D + 1):
            a[i] = field.add(a[i], field.mul(lam, field.mul(powers_alpha[i], powers_beta[D - i])))
    return BinaryForm(field, D, a, given="normalized")


def instance_from_kernel_pair(Pv, Pw, max_candidates=64):
    """A form whose Hankel family has exactly the generators (Pv, Pw).

    Solves the linear system expressing that both coefficient vectors
    are kernel vectors, then verifies candidate solutions against the
    dense report: the existence theorem is non-constructive, so
    verification replaces proof.  Candidates are tried in a
    deterministic order (basis vectors, then pairwise sums, ...).
    """
    field = Pv.field
    if Pv.n > Pw.n:
        raise ValueError("deg Pv must not exceed deg Pw")
    gcd_check = _form_gcd_degree(Pv, Pw)
    if gcd_check != 0:
        raise ValueError("Pv and Pw must be coprime")
    D = Pv.n + Pw.n - 2
    rows = []
    for vec, deg in ((Pv.v, Pv.n), (Pw.v, Pw.n)):
        for m in range(D - deg + 1):
            row = [field.zero] * (D + 1)
            for j, c in enumerate(vec):
                row[m + j] = c
            rows.append(row)
    if hasattr(field, "p"):
        basis = _nullspace_prime(field, rows)
    else:
        ech, pivots = _bareiss_echelon(_int_rows(field, rows))
        basis = _nullspace_from_echelon(ech, pivots, D + 1)
    if not basis:
        raise ValueError("kernel constraints admit only the zero sequence")
    target = (Pv.n - 1, Pw.n - 1)
    for cand in _candidate_combinations(field, basis, max_candidates):
        if all(field.is_zero(x) for x in cand):
            continue
        report = DenseKernelReport(field, cand)
        if (report.N1, report.N2) == target and report.profile_matches():
            return BinaryForm(field, D, cand, given="normalized")
    raise ValueError(
        "no verified sequence among the candidate nullspace combinations; "
        "non-generic choice, try other basis combinations"
    )


def _candidate_combinations(field, basis, limit):
    count = 0
    for v in basis:
        if count >= limit:
            return
        count += 1
        yield tuple(field.coerce(x) for x in v)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if count >= limit:
                return
            count += 1
            yield tuple(
                field.add(field.coerce(x), field.coerce(y))
                for x, y in zip(basis[i], basis[j])
            )
    scale = 2
    while count < limit:
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                if count >= limit:
                    return
                count += 1
                yield tuple(
                    field.add(field.coerce(x), field.mul(field.coerce(scale), field.coerce(y)))
                    for x, y in zip(basis[i], basis[j])
                )
        scale += 1


def _form_gcd_degree(P, Q):
    """Degree of gcd(P, Q) as forms: gcd of the dehomogenizations plus the
    shared power of y."""
    from .poly import poly_gcd

    if P.is_zero() or Q.is_zero():
        raise ValueError("gcd degree of a zero form")
    shared_y = min(P.y_valuation(), Q.y_valuation())
    return poly_gcd(P.poly_in_x(), Q.poly_in_x()).degree() + shared_y
