"""Level-3 routines and factorizations on panel-major matrices.

Two loops around the register-blocked kernels: the outermost loop walks
result rows, the intermediate loop result columns, so the row panel of
the left factor stays cache-resident while the right factor streams.
There is no cache blocking; performance is allowed to fall off once
operands outgrow the cache.

Conventions shared by every routine here:

  * sizes come first, then operands; an operand is a PanelMatrix or a
    SubRef window into one,
  * routines are non-destructive; the C input and D output of gemm-like
    routines may be the same window, but partial overlap is undefined,
  * arbitrary window origins are accepted.  Stream operands whose row
    origin is not panel-aligned are repacked into an aligned scratch
    copy; non-aligned destinations go through the generalized store,
  * factorizations deposit pivot reciprocals in the matrix's diag_inv
    (at column-global positions) and raise on unusable pivots.  The
    triangular solves reuse those reciprocals when the triangular
    operand window sits on the diagonal of the freshly factored range;
    overwriting a factor without re-factoring leaves the stored
    reciprocals stale, which is the caller's responsibility.
"""

from __future__ import annotations

import numpy as np

from . import pack
from ._backend import core as _core
from .errors import DimensionError, NotPositiveDefiniteError, SingularMatrixError
from .matstore import (PS, PanelMatrix, SubRef, allocate_panel_matrix,
                       element_offset)

TRSM_VARIANTS = ("llnu", "lunn", "rltn", "rltu", "rutn")


def _ref(x, name):
    if isinstance(x, PanelMatrix):
        return x, 0, 0
    if isinstance(x, SubRef) and isinstance(x.mat, PanelMatrix):
        return x.mat, x.ai, x.aj
    raise TypeError(f"{name} must be a PanelMatrix or a panel SubRef")


def _check(mat, ai, aj, m, n, name):
    if m < 0 or n < 0:
        raise DimensionError(f"negative size {m}x{n} for {name}")
    if ai + m > mat.rows or aj + n > mat.cols:
        raise DimensionError(
            f"{name} window ({ai}:{ai + m}, {aj}:{aj + n}) exceeds "
            f"{mat.rows}x{mat.cols} matrix")


def _aligned_stream(mat, ai, aj, m, n):
    """Row-aligned view of a window, packing into scratch if needed."""
    if ai % PS == 0:
        return mat, ai, aj
    s = allocate_panel_matrix(m, n)
    pack.gecp(m, n, mat.ref(ai, aj), s.ref(0, 0))
    return s, 0, 0


def _eo(mat, i, j):
    return element_offset(i, j, PS, mat.panel_length)


def _mark_diag(mat, dj, n, diagonal):
    if diagonal:
        mat.diag_lo = dj
        mat.diag_hi = dj + n
    else:
        mat.diag_lo = mat.diag_hi = 0


# ---------------------------------------------------------------------------
# gemm / syrk / trmm


def gemm_nt(m, n, k, alpha, A, B, beta, C, D):
    """D = alpha*A*B' + beta*C with A m x k and B n x k."""
    a, ai, aj = _ref(A, "A")
    b, bi, bj = _ref(B, "B")
    c, ci, cj = _ref(C, "C")
    d, di, dj = _ref(D, "D")
    _check(a, ai, aj, m, k, "A")
    _check(b, bi, bj, n, k, "B")
    _check(c, ci, cj, m, n, "C")
    _check(d, di, dj, m, n, "D")
    if m == 0 or n == 0:
        return
    a, ai, aj = _aligned_stream(a, ai, aj, m, k)
    b, bi, bj = _aligned_stream(b, bi, bj, n, k)
    _core.gemm_nt_drv(m, n, k, alpha, a.data, ai, aj, a.panel_length,
                      b.data, bi, bj, b.panel_length, beta,
                      c.data, ci, cj, c.panel_length,
                      d.data, di, dj, d.panel_length)


def gemm_nn(m, n, k, alpha, A, B, beta, C, D):
    """D = alpha*A*B + beta*C with A m x k and B k x n."""
    a, ai, aj = _ref(A, "A")
    b, bi, bj = _ref(B, "B")
    c, ci, cj = _ref(C, "C")
    d, di, dj = _ref(D, "D")
    _check(a, ai, aj, m, k, "A")
    _check(b, bi, bj, k, n, "B")
    _check(c, ci, cj, m, n, "C")
    _check(d, di, dj, m, n, "D")
    if m == 0 or n == 0:
        return
    a, ai, aj = _aligned_stream(a, ai, aj, m, k)
    _core.gemm_nn_drv(m, n, k, alpha, a.data, ai, aj, a.panel_length,
                      b.data, bi, bj, b.panel_length, beta,
                      c.data, ci, cj, c.panel_length,
                      d.data, di, dj, d.panel_length)


def syrk_ln(m, k, alpha, A, B, beta, C, D):
    """Lower triangle of D = alpha*A*B' + beta*C (m x m); upper untouched."""
    a, ai, aj = _ref(A, "A")
    b, bi, bj = _ref(B, "B")
    c, ci, cj = _ref(C, "C")
    d, di, dj = _ref(D, "D")
    _check(a, ai, aj, m, k, "A")
    _check(b, bi, bj, m, k, "B")
    _check(c, ci, cj, m, m, "C")
    _check(d, di, dj, m, m, "D")
    if m == 0:
        return
    a, ai, aj = _aligned_stream(a, ai, aj, m, k)
    b, bi, bj = _aligned_stream(b, bi, bj, m, k)
    _core.syrk_ln_drv(m, k, alpha, a.data, ai, aj, a.panel_length,
                      b.data, bi, bj, b.panel_length, beta,
                      c.data, ci, cj, c.panel_length,
                      d.data, di, dj, d.panel_length)


def trmm_rlnn(m, n, alpha, A, B, D):
    """D = alpha*B*A with A an n x n lower-triangular right factor."""
    a, ai, aj = _ref(A, "A")
    b, bi, bj = _ref(B, "B")
    d, di, dj = _ref(D, "D")
    _check(a, ai, aj, n, n, "A")
    _check(b, bi, bj, m, n, "B")
    _check(d, di, dj, m, n, "D")
    if m == 0 or n == 0:
        return
    b, bi, bj = _aligned_stream(b, bi, bj, m, n)
    _core.trmm_rlnn_drv(m, n, alpha, b.data, bi, bj, b.panel_length,
                        a.data, ai, aj, a.panel_length,
                        d.data, di, dj, d.panel_length)


# ---------------------------------------------------------------------------
# triangular solves


def _recip_diag(a, ai, aj, n, unit, what):
    """Reciprocals of a triangular window's diagonal.

    Reuses the factorization-produced diag_inv when the window sits on
    the diagonal of a freshly factored range; otherwise computes one
    reciprocal per column.
    """
    if unit:
        return a.diag_inv, 0
    if ai == aj and a.diag_inv_valid(aj, n):
        return a.diag_inv, aj
    out = np.empty(n)
    for j in range(n):
        v = a.data[_eo(a, ai + j, aj + j)]
        if v == 0.0:
            raise SingularMatrixError(f"{what}: zero diagonal at column {j}", j)
        out[j] = 1.0 / v
    return out, 0


def trsm(m, n, alpha, A, B, D, variant):
    """Solve a triangular system with matrix right-hand side.

    variant selects side/uplo/trans/diag in the usual order:
      llnu: A*D = alpha*B        (A lower, unit diagonal)
      lunn: A*D = alpha*B        (A upper, non-unit)
      rltn: D*A' = alpha*B       (A lower, non-unit)
      rltu: D*A' = alpha*B       (A lower, unit diagonal)
      rutn: D*A' = alpha*B       (A upper, non-unit)
    Unit variants never read the stored diagonal.
    """
    if variant not in TRSM_VARIANTS:
        raise ValueError(f"unknown trsm variant {variant!r}; one of {TRSM_VARIANTS}")
    a, ai, aj = _ref(A, "A")
    b, bi, bj = _ref(B, "B")
    d, di, dj = _ref(D, "D")
    ta = n if variant[0] == "r" else m
    _check(a, ai, aj, ta, ta, "A")
    _check(b, bi, bj, m, n, "B")
    _check(d, di, dj, m, n, "D")
    if m == 0 or n == 0:
        return
    if variant in ("rltn", "rltu"):
        _trsm_rlt(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj, variant == "rltu")
    elif variant == "llnu":
        _trsm_llnu(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj)
    elif variant == "lunn":
        _trsm_lunn(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj)
    else:
        _trsm_rutn(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj)


def trsm_llnu(m, n, alpha, A, B, D):
    trsm(m, n, alpha, A, B, D, "llnu")


def trsm_lunn(m, n, alpha, A, B, D):
    trsm(m, n, alpha, A, B, D, "lunn")


def trsm_rltn(m, n, alpha, A, B, D):
    trsm(m, n, alpha, A, B, D, "rltn")


def trsm_rltu(m, n, alpha, A, B, D):
    trsm(m, n, alpha, A, B, D, "rltu")


def trsm_rutn(m, n, alpha, A, B, D):
    trsm(m, n, alpha, A, B, D, "rutn")


def _trsm_rlt(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj, unit):
    dinv, dio = _recip_diag(a, ai, aj, n, unit, "trsm_rlt")
    a, ai, aj = _aligned_stream(a, ai, aj, n, n)
    if di % PS:
        s = allocate_panel_matrix(m, n)
        _core.trsm_rltn_drv(m, n, alpha, a.data, ai, aj, a.panel_length, unit,
                            b.data, bi, bj, b.panel_length,
                            s.data, 0, 0, s.panel_length, dinv, dio)
        pack.gecp(m, n, s.ref(0, 0), d.ref(di, dj))
    else:
        _core.trsm_rltn_drv(m, n, alpha, a.data, ai, aj, a.panel_length, unit,
                            b.data, bi, bj, b.panel_length,
                            d.data, di, dj, d.panel_length, dinv, dio)


def _trsm_llnu(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj):
    a, ai, aj = _aligned_stream(a, ai, aj, m, m)
    cair = bi & 3
    dair = di & 3
    bmair = di & 3
    for ii in range(0, m, 4):
        ms = min(4, m - ii)
        amo = _eo(a, ai + ii, aj)
        eo = _eo(a, ai + ii, aj + ii)
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            _core.ktrsm_llnu(ii, a.data, amo, a.panel_length,
                             d.data, _eo(d, di - bmair, dj + jj), bmair, d.panel_length,
                             alpha, b.data, _eo(b, bi + ii, bj + jj), cair, b.panel_length,
                             d.data, _eo(d, di + ii, dj + jj), dair, d.panel_length,
                             a.data, eo, a.panel_length, ms, ns)


def _trsm_lunn(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj):
    dinv, dio = _recip_diag(a, ai, aj, m, False, "trsm_lunn")
    a, ai, aj = _aligned_stream(a, ai, aj, m, m)
    cair = bi & 3
    dair = di & 3
    blocks = list(range(0, m, 4))
    for ii in reversed(blocks):
        ms = min(4, m - ii)
        row_lo = ii + ms
        km = m - row_lo
        amo = _eo(a, ai + ii, aj + row_lo)
        eo = _eo(a, ai + ii, aj + ii)
        bmair = (di + row_lo) & 3
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            _core.ktrsm_lunn(km, a.data, amo, a.panel_length,
                             d.data, _eo(d, di + row_lo - bmair, dj + jj), bmair, d.panel_length,
                             alpha, b.data, _eo(b, bi + ii, bj + jj), cair, b.panel_length,
                             d.data, _eo(d, di + ii, dj + jj), dair, d.panel_length,
                             a.data, eo, a.panel_length, dinv, dio + ii, ms, ns)


def _trsm_rutn(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj):
    dinv, dio = _recip_diag(a, ai, aj, n, False, "trsm_rutn")
    a, ai, aj = _aligned_stream(a, ai, aj, n, n)
    if di % PS:
        s = allocate_panel_matrix(m, n)
        _rutn_tiles(m, n, alpha, a, ai, aj, b, bi, bj, s, 0, 0, dinv, dio)
        pack.gecp(m, n, s.ref(0, 0), d.ref(di, dj))
    else:
        _rutn_tiles(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj, dinv, dio)


def _rutn_tiles(m, n, alpha, a, ai, aj, b, bi, bj, d, di, dj, dinv, dio):
    cair = bi & 3
    nblocks = list(range(0, n, 4))
    for ii in range(0, m, 4):
        ms = min(4, m - ii)
        for jj in reversed(nblocks):
            ns = min(4, n - jj)
            col_lo = jj + ns
            km = n - col_lo
            _core.ktrsm_rutn(km, d.data, _eo(d, di + ii, dj + col_lo), d.panel_length,
                             a.data, _eo(a, ai + jj, aj + col_lo), a.panel_length,
                             alpha, b.data, _eo(b, bi + ii, bj + jj), cair, b.panel_length,
                             d.data, _eo(d, di + ii, dj + jj), 0, d.panel_length,
                             a.data, _eo(a, ai + jj, aj + jj), a.panel_length,
                             dinv, dio + jj, ms, ns)


# ---------------------------------------------------------------------------
# Cholesky and the fused update-factorize


def potrf_l(m, C, D, n=None):
    """Lower Cholesky factor of the (symmetric, lower-stored) input.

    With n < m the trailing m - n rows of the input are solved against
    the factor's transpose instead of factored (the non-squared variant
    used to fuse a triangular solve into the factorization).  Fills
    diag_inv of D and raises NotPositiveDefiniteError on a bad pivot.
    """
    if n is None:
        n = m
    if n > m:
        raise DimensionError(f"potrf_l needs n <= m, got m={m} n={n}")
    c, ci, cj = _ref(C, "C")
    d, di, dj = _ref(D, "D")
    _check(c, ci, cj, m, n, "C")
    _check(d, di, dj, m, n, "D")
    if n == 0:
        return
    if di % PS:
        s = allocate_panel_matrix(m, n)
        st = _core.potrf_drv(m, n, c.data, ci, cj, c.panel_length,
                             s.data, 0, 0, s.panel_length, d.diag_inv, dj)
        if st < 0:
            _copy_lower(m, n, s, 0, 0, d, di, dj)
    else:
        st = _core.potrf_drv(m, n, c.data, ci, cj, c.panel_length,
                             d.data, di, dj, d.panel_length, d.diag_inv, dj)
    if st >= 0:
        _mark_diag(d, dj, 0, False)
        raise NotPositiveDefiniteError(
            f"potrf_l: non-positive pivot at index {st}", st)
    _mark_diag(d, dj, n, di == dj)


def syrk_potrf_ln(m, k, A, B, C, D, n=None):
    """Fused D = chol(lower(C + A*B')) on one pass over the blocks.

    Matches syrk_ln(alpha=beta=1) followed by potrf_l up to rounding.
    """
    if n is None:
        n = m
    if n > m:
        raise DimensionError(f"syrk_potrf_ln needs n <= m, got m={m} n={n}")
    a, ai, aj = _ref(A, "A")
    b, bi, bj = _ref(B, "B")
    c, ci, cj = _ref(C, "C")
    d, di, dj = _ref(D, "D")
    _check(a, ai, aj, m, k, "A")
    _check(b, bi, bj, n, k, "B")
    _check(c, ci, cj, m, n, "C")
    _check(d, di, dj, m, n, "D")
    if n == 0:
        return
    a, ai, aj = _aligned_stream(a, ai, aj, m, k)
    b, bi, bj = _aligned_stream(b, bi, bj, n, k)
    if di % PS:
        s = allocate_panel_matrix(m, n)
        st = _core.syrk_potrf_drv(m, n, k, a.data, ai, aj, a.panel_length,
                                  b.data, bi, bj, b.panel_length,
                                  c.data, ci, cj, c.panel_length,
                                  s.data, 0, 0, s.panel_length, d.diag_inv, dj)
        if st < 0:
            _copy_lower(m, n, s, 0, 0, d, di, dj)
    else:
        st = _core.syrk_potrf_drv(m, n, k, a.data, ai, aj, a.panel_length,
                                  b.data, bi, bj, b.panel_length,
                                  c.data, ci, cj, c.panel_length,
                                  d.data, di, dj, d.panel_length, d.diag_inv, dj)
    if st >= 0:
        _mark_diag(d, dj, 0, False)
        raise NotPositiveDefiniteError(
            f"syrk_potrf_ln: non-positive pivot at index {st}", st)
    _mark_diag(d, dj, n, di == dj)


def _copy_lower(m, n, s, si, sj, d, di, dj):
    # copy the written (lower-trapezoidal) part only, leaving the strict
    # upper triangle of the destination untouched
    for j in range(n):
        pack.gecp(m - j, 1, s.ref(si + j, sj + j), d.ref(di + j, dj + j))


# ---------------------------------------------------------------------------
# LU factorization


def getrf_nopivot(m, n, C, D):
    """LU without pivoting: D holds unit-L below the diagonal, U on/above.

    Raises SingularMatrixError on an exactly-zero pivot.  diag_inv of D
    receives the reciprocals of U's diagonal.
    """
    _getrf(m, n, C, D, None)


def getrf_pivot(m, n, C, D, ipiv=None):
    """LU with partial pivoting: P*C = L*U.

    ipiv is a transposition list: ipiv[j] = r means rows j and r (r >= j)
    were exchanged at step j.  It is allocated when not supplied and
    returned either way.  Pivot search takes the largest magnitude,
    breaking ties toward the lowest row index.
    """
    mn = min(m, n)
    if ipiv is None:
        ipiv = np.zeros(mn, dtype=np.int64)
    elif len(ipiv) < mn:
        raise DimensionError(f"ipiv needs {mn} entries, got {len(ipiv)}")
    _getrf(m, n, C, D, ipiv)
    return ipiv


def _getrf(m, n, C, D, ipiv):
    c, ci, cj = _ref(C, "C")
    d, di, dj = _ref(D, "D")
    _check(c, ci, cj, m, n, "C")
    _check(d, di, dj, m, n, "D")
    if min(m, n) == 0:
        return
    if di % PS:
        s = allocate_panel_matrix(m, n)
        pack.gecp(m, n, c.ref(ci, cj), s.ref(0, 0))
        _getrf_inplace(m, n, s, 0, 0, d.diag_inv, dj, ipiv)
        pack.gecp(m, n, s.ref(0, 0), d.ref(di, dj))
        _mark_diag(d, dj, min(m, n), di == dj)
        return
    if not (c is d and ci == di and cj == dj):
        pack.gecp(m, n, c.ref(ci, cj), d.ref(di, dj))
    _getrf_inplace(m, n, d, di, dj, d.diag_inv, dj, ipiv)
    _mark_diag(d, dj, min(m, n), di == dj)


def _getrf_inplace(m, n, d, di, dj, dinv, dio, ipiv):
    # lazy (left-looking) panel sweep: each block column is downdated once
    # with the full preceding k, factored with the compiled panel kernel,
    # then its U row block is downdated and solved in place
    mn = min(m, n)
    sdd = d.panel_length
    pivot = ipiv is not None
    scratch_piv = np.zeros(4, dtype=np.int64) if pivot else np.zeros(1, dtype=np.int64)
    name = "getrf_pivot" if pivot else "getrf_nopivot"
    for j0 in range(0, mn, 4):
        jb = min(4, mn - j0)
        if j0 > 0:
            _core.gemm_nn_drv(m - j0, jb, j0, -1.0,
                              d.data, di + j0, dj, sdd,
                              d.data, di, dj + j0, sdd, 1.0,
                              d.data, di + j0, dj + j0, sdd,
                              d.data, di + j0, dj + j0, sdd)
        st = _core.kgetrf_panel(d.data, _eo(d, di + j0, dj + j0), sdd,
                                m - j0, jb, pivot, scratch_piv, 0, dinv, dio + j0)
        if st >= 0:
            _mark_diag(d, dj, 0, False)
            raise SingularMatrixError(
                f"{name}: zero pivot at index {j0 + st}", j0 + st)
        if pivot:
            for cc in range(jb):
                r = int(scratch_piv[cc])
                ipiv[j0 + cc] = j0 + r
                if r != cc:
                    # panel factor swapped only its own columns; apply to
                    # the left and right parts here
                    if j0 > 0:
                        _core.krowswap(j0, d.data, _off_row(d, di + j0 + cc, dj),
                                       d.data, _off_row(d, di + j0 + r, dj))
                    if j0 + jb < n:
                        _core.krowswap(n - j0 - jb, d.data,
                                       _off_row(d, di + j0 + cc, dj + j0 + jb),
                                       d.data, _off_row(d, di + j0 + r, dj + j0 + jb))
        if j0 + jb < n:
            # U12 = L11^{-1} * (C12 - L10 * U02) in place (unit lower solve)
            if j0 > 0:
                _core.gemm_nn_drv(jb, n - j0 - jb, j0, -1.0,
                                  d.data, di + j0, dj, sdd,
                                  d.data, di, dj + j0 + jb, sdd, 1.0,
                                  d.data, di + j0, dj + j0 + jb, sdd,
                                  d.data, di + j0, dj + j0 + jb, sdd)
            _core.lu_rowsolve_drv(jb, n - j0 - jb, d.data, di + j0,
                                  dj + j0, dj + j0 + jb, sdd)


def _off_row(mat, i, j):
    return element_offset(i, j, PS, mat.panel_length)


# ---------------------------------------------------------------------------
# LQ factorization


def gelqf_worksize(m, n):
    """Float64 slots gelqf needs in its work array (tau + block T)."""
    return min(m, n) + 16


def gelqf(m, n, C, D, work=None):
    """Blocked Householder LQ factorization, block size 4.

    On return D holds L in its lower-left min(m,n) triangle and the
    reflector vectors to the right of the diagonal (LAPACK layout: row
    j's reflector is (1, D[j, j+1:n]) with scalar tau[j]).  tau lives at
    the front of the work array and is also returned.  The reconstruction
    contract is L*Q = C with Q = H(k-1)...H(0) built from the reflectors.
    """
    mn = min(m, n)
    if work is None:
        work = np.empty(gelqf_worksize(m, n))
    elif len(work) < gelqf_worksize(m, n):
        raise DimensionError(
            f"work needs {gelqf_worksize(m, n)} floats, got {len(work)}")
    c, ci, cj = _ref(C, "C")
    d, di, dj = _ref(D, "D")
    _check(c, ci, cj, m, n, "C")
    _check(d, di, dj, m, n, "D")
    tau = work[:mn]
    if mn == 0:
        return tau
    if di % PS:
        s = allocate_panel_matrix(m, n)
        pack.gecp(m, n, c.ref(ci, cj), s.ref(0, 0))
        _gelqf_inplace(m, n, s, 0, 0, tau, work)
        pack.gecp(m, n, s.ref(0, 0), d.ref(di, dj))
        return tau
    if not (c is d and ci == di and cj == dj):
        pack.gecp(m, n, c.ref(ci, cj), d.ref(di, dj))
    _gelqf_inplace(m, n, d, di, dj, tau, work)
    return tau


def _gelqf_inplace(m, n, d, di, dj, tau, work):
    mn = min(m, n)
    tmat = work[mn:mn + 16]
    vmat = allocate_panel_matrix(4, n)
    tpan = allocate_panel_matrix(4, 4)
    gram = allocate_panel_matrix(4, 4)
    wpan = allocate_panel_matrix(m, 4)
    w2pan = allocate_panel_matrix(m, 4)
    for i0 in range(0, mn, 4):
        ib = min(4, mn - i0)
        ncols = n - i0
        _core.klq_panel(d.data, _eo(d, di + i0, dj + i0), d.panel_length,
                        ib, ncols, tau, i0)
        rows_below = m - i0 - ib
        if rows_below <= 0:
            continue
        # materialize the reflector block V (ib x ncols, unit diagonal)
        pack.gese(ib, ncols, 0.0, vmat.ref(0, 0))
        for r in range(ib):
            vmat.set(r, r, 1.0)
            if ncols - r - 1 > 0:
                pack.gecp(1, ncols - r - 1,
                          d.ref(di + i0 + r, dj + i0 + r + 1), vmat.ref(r, r + 1))
        # T accumulator for the block of reflectors (forward, rowwise)
        gemm_nt(ib, ib, ncols, 1.0, vmat.ref(0, 0), vmat.ref(0, 0),
                0.0, gram.ref(0, 0), gram.ref(0, 0))
        for i in range(ib):
            ti = tau[i0 + i]
            for t in range(i):
                s = 0.0
                for u in range(t, i):
                    s += tmat[t * 4 + u] * gram.get(u, i)
                tmat[t * 4 + i] = -ti * s
            tmat[i * 4 + i] = ti
        for jj in range(4):
            for ii in range(4):
                # T is upper triangular; its strict lower part is never built
                keep = ii <= jj < ib
                tpan.set(ii, jj, tmat[ii * 4 + jj] if keep else 0.0)
        # trailing rows: M <- M - (M V') T V
        mref = d.ref(di + i0 + ib, dj + i0)
        gemm_nt(rows_below, ib, ncols, 1.0, mref, vmat.ref(0, 0),
                0.0, wpan.ref(0, 0), wpan.ref(0, 0))
        gemm_nn(rows_below, ib, ib, 1.0, wpan.ref(0, 0), tpan.ref(0, 0),
                0.0, w2pan.ref(0, 0), w2pan.ref(0, 0))
        gemm_nn(rows_below, ncols, ib, -1.0, w2pan.ref(0, 0), vmat.ref(0, 0),
                1.0, mref, mref)
