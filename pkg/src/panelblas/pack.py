"""Conversions between column-major and panel-major storage, plus the
auxiliary copy/transpose/scale/extract/insert/permutation routines the
factorizations and applications need.

All routines take explicit window sizes and accept arbitrary window
origins, including rows that are not aligned to a panel boundary.
Semantics are elementwise; panel-boundary crossings are handled by the
offset arithmetic.
"""

from __future__ import annotations

import numpy as np

from ._backend import core as _core
from .errors import DimensionError
from .matstore import ColMatrix, DenseVector, PanelMatrix, SubRef, allocate_panel_matrix


def _panel_ref(x):
    if isinstance(x, PanelMatrix):
        return x, 0, 0
    if isinstance(x, SubRef) and isinstance(x.mat, PanelMatrix):
        return x.mat, x.ai, x.aj
    raise TypeError(f"expected a PanelMatrix or a panel SubRef, got {type(x).__name__}")


def _col_ref(x):
    if isinstance(x, ColMatrix):
        return x, 0, 0
    if isinstance(x, SubRef) and isinstance(x.mat, ColMatrix):
        return x.mat, x.ai, x.aj
    raise TypeError(f"expected a ColMatrix or a column-major SubRef, got {type(x).__name__}")


def _check_window(mat, ai, aj, m, n, what):
    if m < 0 or n < 0:
        raise DimensionError(f"negative window size {m}x{n} for {what}")
    if ai + m > mat.rows or aj + n > mat.cols:
        raise DimensionError(
            f"{what} window ({ai}:{ai + m}, {aj}:{aj + n}) exceeds "
            f"{mat.rows}x{mat.cols} matrix")


def pack_matrix(src, m, n, dst):
    """Copy an m x n column-major window into a panel-major window."""
    s, si, sj = _col_ref(src)
    d, di, dj = _panel_ref(dst)
    _check_window(s, si, sj, m, n, "pack source")
    _check_window(d, di, dj, m, n, "pack destination")
    _core.kpack_cm(m, n, s.data, si + sj * s.lda, s.lda,
                   d.data, di, dj, d.panel_length)


def pack_matrix_transposed(src, m, n, dst):
    """Copy with transposition: dst(j, i) = src(i, j) for an m x n source."""
    s, si, sj = _col_ref(src)
    d, di, dj = _panel_ref(dst)
    _check_window(s, si, sj, m, n, "pack source")
    _check_window(d, di, dj, n, m, "pack destination")
    _core.kpack_cm_tr(m, n, s.data, si + sj * s.lda, s.lda,
                      d.data, di, dj, d.panel_length)


def unpack_matrix(src, m, n, dst):
    """Copy an m x n panel-major window into a column-major window."""
    s, si, sj = _panel_ref(src)
    d, di, dj = _col_ref(dst)
    _check_window(s, si, sj, m, n, "unpack source")
    _check_window(d, di, dj, m, n, "unpack destination")
    _core.kunpack_cm(m, n, s.data, si, sj, s.panel_length,
                     d.data, di + dj * d.lda, d.lda)


def gecp(m, n, A, B):
    """General panel-to-panel copy: B <- A over an m x n window."""
    s, si, sj = _panel_ref(A)
    d, di, dj = _panel_ref(B)
    _check_window(s, si, sj, m, n, "copy source")
    _check_window(d, di, dj, m, n, "copy destination")
    _core.kgecp(m, n, s.data, si, sj, s.panel_length,
                d.data, di, dj, d.panel_length)


def getr(m, n, A, B):
    """Transpose copy: B(j, i) <- A(i, j) over an m x n source window."""
    s, si, sj = _panel_ref(A)
    d, di, dj = _panel_ref(B)
    _check_window(s, si, sj, m, n, "transpose source")
    _check_window(d, di, dj, n, m, "transpose destination")
    _core.kgetr(m, n, s.data, si, sj, s.panel_length,
                d.data, di, dj, d.panel_length)


def gesc(m, n, alpha, A):
    """Scale a window in place."""
    a, ai, aj = _panel_ref(A)
    _check_window(a, ai, aj, m, n, "scale")
    _core.kgesc(m, n, alpha, a.data, ai, aj, a.panel_length)


def gese(m, n, alpha, A):
    """Set every element of a window to alpha."""
    a, ai, aj = _panel_ref(A)
    _check_window(a, ai, aj, m, n, "set")
    _core.kgese(m, n, alpha, a.data, ai, aj, a.panel_length)


def gead(m, n, alpha, A, B):
    """Windowed add: B <- alpha*A + B."""
    s, si, sj = _panel_ref(A)
    d, di, dj = _panel_ref(B)
    _check_window(s, si, sj, m, n, "add source")
    _check_window(d, di, dj, m, n, "add destination")
    _core.kgead(m, n, alpha, s.data, si, sj, s.panel_length,
                d.data, di, dj, d.panel_length)


# ---------------------------------------------------------------------------
# 1-d extract/insert between matrices and vectors


def _vec(x, n, what):
    if not isinstance(x, DenseVector):
        raise TypeError(f"expected a DenseVector for {what}")
    if n > x.len:
        raise DimensionError(f"{what} needs {n} elements, vector has {x.len}")
    return x


def diag_extract(n, A, x):
    a, ai, aj = _panel_ref(A)
    _check_window(a, ai, aj, n, n, "diagonal")
    v = _vec(x, n, "diag_extract")
    for i in range(n):
        v.data[i] = a.data[_off(a, ai + i, aj + i)]


def diag_insert(n, x, A):
    a, ai, aj = _panel_ref(A)
    _check_window(a, ai, aj, n, n, "diagonal")
    v = _vec(x, n, "diag_insert")
    for i in range(n):
        a.data[_off(a, ai + i, aj + i)] = v.data[i]


def row_extract(n, A, x):
    a, ai, aj = _panel_ref(A)
    _check_window(a, ai, aj, 1, n, "row")
    v = _vec(x, n, "row_extract")
    for j in range(n):
        v.data[j] = a.data[_off(a, ai, aj + j)]


def row_insert(n, x, A):
    a, ai, aj = _panel_ref(A)
    _check_window(a, ai, aj, 1, n, "row")
    v = _vec(x, n, "row_insert")
    for j in range(n):
        a.data[_off(a, ai, aj + j)] = v.data[j]


def col_extract(n, A, x):
    a, ai, aj = _panel_ref(A)
    _check_window(a, ai, aj, n, 1, "column")
    v = _vec(x, n, "col_extract")
    for i in range(n):
        v.data[i] = a.data[_off(a, ai + i, aj)]


def col_insert(n, x, A):
    a, ai, aj = _panel_ref(A)
    _check_window(a, ai, aj, n, 1, "column")
    v = _vec(x, n, "col_insert")
    for i in range(n):
        a.data[_off(a, ai + i, aj)] = v.data[i]


def _off(mat, i, j):
    air = i & 3
    return (i - air) * mat.panel_length + j * 4 + air


def row_swap(n, A, B):
    """Exchange two length-n row segments (possibly of the same matrix)."""
    a, ai, aj = _panel_ref(A)
    b, bi, bj = _panel_ref(B)
    _check_window(a, ai, aj, 1, n, "row swap")
    _check_window(b, bi, bj, 1, n, "row swap")
    _core.krowswap(n, a.data, _off(a, ai, aj), b.data, _off(b, bi, bj))


def apply_row_permutation(n, ipiv, A):
    """Apply a transposition list (ipiv[k] = r: swap rows k and r) in order."""
    a, ai, aj = _panel_ref(A)
    for k in range(len(ipiv)):
        r = int(ipiv[k])
        if r != k:
            row_swap(n, a.ref(ai + k, aj), a.ref(ai + r, aj))


def apply_inverse_row_permutation(n, ipiv, A):
    """Undo apply_row_permutation (same swaps, reverse order)."""
    a, ai, aj = _panel_ref(A)
    for k in range(len(ipiv) - 1, -1, -1):
        r = int(ipiv[k])
        if r != k:
            row_swap(n, a.ref(ai + k, aj), a.ref(ai + r, aj))


# ---------------------------------------------------------------------------
# numpy bridges (test and application convenience)


def panel_from_array(arr):
    """Pack a 2-d numpy array into a freshly allocated PanelMatrix."""
    a = np.ascontiguousarray(np.asarray(arr, dtype=np.float64))
    if a.ndim != 2:
        raise DimensionError("expected a 2-d array")
    m, n = a.shape
    out = allocate_panel_matrix(m, n)
    cm = np.asfortranarray(a).reshape(-1, order="F")
    _core.kpack_cm(m, n, cm, 0, max(m, 1), out.data, 0, 0, out.panel_length)
    return out


def panel_to_array(A, m=None, n=None):
    """Unpack a panel window into a fresh 2-d numpy array."""
    a, ai, aj = _panel_ref(A)
    if m is None:
        m = a.rows - ai
    if n is None:
        n = a.cols - aj
    _check_window(a, ai, aj, m, n, "unpack source")
    out = np.empty(m * n)
    _core.kunpack_cm(m, n, a.data, ai, aj, a.panel_length, out, 0, max(m, 1))
    return out.reshape((m, n), order="F").copy()
