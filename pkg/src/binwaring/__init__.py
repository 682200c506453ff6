"""Minimal Waring decompositions of binary forms.

Decomposes f(x, y) = sum_i C(D, i) a_i x^i y^(D-i) into the minimal
number of D-th powers of linear forms: exactly (rank plus the
square-free polynomial Q and the rational function T/Q' encoding the
coefficients) and numerically (certified terms with a residual bound).
The whole symbolic pipeline runs in softly-linear arithmetic time via a
Half-GCD on the Hankel kernel structure.
"""

from .decompose import (
    SymbolicDecomposition,
    build_Q_deterministic,
    build_Q_interpolated,
    fast_decompose,
    rank_of,
    symbolic_lambda,
)
from .euclid import EgcdRow, egcd_all_rows, halfgcd_seek
from .fields import PrimeField, QQ, RationalField
from .forms import BinaryForm, BivariatePoly, is_squarefree_form
from .hankel import KernelPair, hankel_apply, hankel_matrix, kernel_pair
from .numeric import (
    Ball,
    NumericDecomposition,
    PrecisionBudgetExceeded,
    decompose_numeric,
    residual_norm,
    roots_approx,
)
from .poly import NEG_INF, Poly, interpolate, multipoint_eval, poly_gcd

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "BivariatePoly",
    "Ball",
    "EgcdRow",
    "KernelPair",
    "NEG_INF",
    "NumericDecomposition",
    "Poly",
    "PrecisionBudgetExceeded",
    "PrimeField",
    "QQ",
    "RationalField",
    "SymbolicDecomposition",
    "build_Q_deterministic",
    "build_Q_interpolated",
    "decompose_numeric",
    "egcd_all_rows",
    "fast_decompose",
    "halfgcd_seek",
    "hankel_apply",
    "hankel_matrix",
    "interpolate",
    "is_squarefree_form",
    "kernel_pair",
    "multipoint_eval",
    "poly_gcd",
    "rank_of",
    "residual_norm",
    "roots_approx",
    "symbolic_lambda",
]
