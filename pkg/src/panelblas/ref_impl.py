"""Reference implementation and brute-force oracles, both column-major.

The rf_* routines are the portable small-matrix implementation: three
nested loops with the inner loop over k and 2x2 register blocking (four
independent accumulators, at least eight scalar temporaries assumed).

The oracle_* routines are textbook loops with a fixed summation order.
They share no code with the panel kernels or the rf routines and anchor
every derived expected value in the test suite.
"""

from __future__ import annotations

import numpy as np

from ._backend import core as _core
from .errors import DimensionError, NotPositiveDefiniteError, SingularMatrixError
from .matstore import ColMatrix, SubRef, allocate_col_matrix

_TRSM_CODES = {"llnu": 0, "lunn": 1, "rltn": 2, "rltu": 3, "rutn": 4}


def _ref(x, name):
    if isinstance(x, ColMatrix):
        return x, 0, 0
    if isinstance(x, SubRef) and isinstance(x.mat, ColMatrix):
        return x.mat, x.ai, x.aj
    raise TypeError(f"{name} must be a ColMatrix or a column-major SubRef")


def _win(x, m, n, name):
    mat, ai, aj = _ref(x, name)
    if ai + m > mat.rows or aj + n > mat.cols:
        raise DimensionError(
            f"{name} window ({ai}:{ai + m}, {aj}:{aj + n}) exceeds "
            f"{mat.rows}x{mat.cols} matrix")
    return mat.data, ai + aj * mat.lda, mat.lda


def rf_gemm_nt(m, n, k, alpha, A, B, beta, C, D):
    """D = alpha*A*B' + beta*C (column-major reference path)."""
    a = _win(A, m, k, "A")
    b = _win(B, n, k, "B")
    c = _win(C, m, n, "C")
    d = _win(D, m, n, "D")
    _core.rf_gemm_nt_drv(m, n, k, alpha, *a, *b, beta, *c, *d)


def rf_gemm_nn(m, n, k, alpha, A, B, beta, C, D):
    """D = alpha*A*B + beta*C (column-major reference path)."""
    a = _win(A, m, k, "A")
    b = _win(B, k, n, "B")
    c = _win(C, m, n, "C")
    d = _win(D, m, n, "D")
    _core.rf_gemm_nn_drv(m, n, k, alpha, *a, *b, beta, *c, *d)


def rf_potrf_l(m, C, D):
    """Lower Cholesky factor, 2x2-blocked column-major reference path."""
    c = _win(C, m, m, "C")
    d = _win(D, m, m, "D")
    st = _core.rf_potrf_drv(m, *c, *d)
    if st >= 0:
        raise NotPositiveDefiniteError(f"rf_potrf_l: non-positive pivot at index {st}", st)


# ---------------------------------------------------------------------------
# oracles


def oracle_gemm_nt(m, n, k, alpha, A, B, beta, C):
    a = _win(A, m, k, "A")
    b = _win(B, n, k, "B")
    c = _win(C, m, n, "C")
    out = allocate_col_matrix(m, n)
    _core.o_gemm_nt(m, n, k, alpha, *a, *b, beta, *c, out.data, 0, out.lda)
    return out


def oracle_gemm_nn(m, n, k, alpha, A, B, beta, C):
    a = _win(A, m, k, "A")
    b = _win(B, k, n, "B")
    c = _win(C, m, n, "C")
    out = allocate_col_matrix(m, n)
    _core.o_gemm_nn(m, n, k, alpha, *a, *b, beta, *c, out.data, 0, out.lda)
    return out


def oracle_syrk_ln(m, k, alpha, A, B, beta, C):
    """Lower triangle of alpha*A*B' + beta*C; upper copied through from C."""
    a = _win(A, m, k, "A")
    b = _win(B, m, k, "B")
    cmat, ci, cj = _ref(C, "C")
    c = _win(C, m, m, "C")
    out = allocate_col_matrix(m, m)
    for j in range(m):
        for i in range(m):
            out.set(i, j, cmat.get(ci + i, cj + j))
    _core.o_syrk_ln(m, k, alpha, *a, *b, beta, *c, out.data, 0, out.lda)
    return out


def oracle_trmm_rlnn(m, n, alpha, A, B):
    a = _win(A, n, n, "A")
    b = _win(B, m, n, "B")
    out = allocate_col_matrix(m, n)
    _core.o_trmm_rlnn(m, n, alpha, *a, *b, out.data, 0, out.lda)
    return out


def oracle_trsm(variant, m, n, alpha, A, B):
    if variant not in _TRSM_CODES:
        raise ValueError(f"unknown trsm variant {variant!r}")
    ta = n if variant[0] == "r" else m
    a = _win(A, ta, ta, "A")
    b = _win(B, m, n, "B")
    out = allocate_col_matrix(m, n)
    _core.o_trsm(_TRSM_CODES[variant], m, n, alpha, *a, *b, out.data, 0, out.lda)
    return out


def oracle_potrf(m, C):
    """Lower Cholesky factor; the strict upper triangle mirrors the input."""
    cmat, ci, cj = _ref(C, "C")
    c = _win(C, m, m, "C")
    out = allocate_col_matrix(m, m)
    for j in range(m):
        for i in range(m):
            out.set(i, j, cmat.get(ci + i, cj + j))
    st = _core.o_potrf(m, *c, out.data, 0, out.lda)
    if st >= 0:
        raise NotPositiveDefiniteError(f"oracle_potrf: non-positive pivot at index {st}", st)
    return out


def oracle_getrf(m, n, C):
    """Partial-pivoting LU; returns (packed L\\U factor, ipiv)."""
    cmat, ci, cj = _ref(C, "C")
    _win(C, m, n, "C")
    out = allocate_col_matrix(m, n)
    for j in range(n):
        for i in range(m):
            out.set(i, j, cmat.get(ci + i, cj + j))
    ipiv = np.zeros(min(m, n), dtype=np.int64)
    st = _core.o_getrf(m, n, out.data, 0, out.lda, ipiv, 0)
    if st >= 0:
        raise SingularMatrixError(f"oracle_getrf: zero pivot column at index {st}", st)
    return out, ipiv


def oracle_gelqf(m, n, C):
    """Unblocked Householder LQ; returns (factor with reflectors, tau)."""
    cmat, ci, cj = _ref(C, "C")
    _win(C, m, n, "C")
    out = allocate_col_matrix(m, n)
    for j in range(n):
        for i in range(m):
            out.set(i, j, cmat.get(ci + i, cj + j))
    tau = np.zeros(min(m, n))
    _core.o_gelqf(m, n, out.data, 0, out.lda, tau, 0)
    return out, tau


def lq_build_q(D, tau, m, n):
    """Expand stored reflectors into the explicit m x n row-orthonormal Q.

    Q = H(k-1)...H(0) restricted to its first m rows, with H(j) read from
    row j of D (unit head, tail right of the diagonal) and tau[j].
    """
    dmat, di, dj = _ref(D, "D")
    q = np.eye(n)
    for j in range(min(m, n)):
        if tau[j] == 0.0:
            continue
        v = np.zeros(n)
        v[j] = 1.0
        for c in range(j + 1, n):
            v[c] = dmat.get(di + j, dj + c)
        q -= tau[j] * np.outer(v, v @ q)
    return q[:m]
