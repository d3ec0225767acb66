"""Level-1 and level-2 routines on contiguous vectors.

Vectors are strictly unit-stride; operations on matrix rows or columns
go through pack's extract/insert helpers.  These routines are scalar
loops with a fixed accumulation order; they serve the application layer
and API completeness rather than peak throughput.
"""

from __future__ import annotations

import math

from .errors import DimensionError, SingularMatrixError
from .matstore import PS, DenseVector, PanelMatrix, SubRef, element_offset

TRMV_VARIANTS = ("lnn", "ltn", "unn", "utn")
TRSV_VARIANTS = ("lnn", "lnu", "ltn", "ltu", "unn", "utn")


def _ref(x, name):
    if isinstance(x, PanelMatrix):
        return x, 0, 0
    if isinstance(x, SubRef) and isinstance(x.mat, PanelMatrix):
        return x.mat, x.ai, x.aj
    raise TypeError(f"{name} must be a PanelMatrix or a panel SubRef")


def _check(mat, ai, aj, m, n, name):
    if ai + m > mat.rows or aj + n > mat.cols:
        raise DimensionError(
            f"{name} window ({ai}:{ai + m}, {aj}:{aj + n}) exceeds "
            f"{mat.rows}x{mat.cols} matrix")


def _vec(x, n, off, name):
    if not isinstance(x, DenseVector):
        raise TypeError(f"{name} must be a DenseVector")
    if off < 0 or off + n > x.len:
        raise DimensionError(f"{name}[{off}:{off + n}] exceeds vector of length {x.len}")
    return x.data


def _at(mat, ai, aj):
    return mat.data[element_offset(ai, aj, PS, mat.panel_length)]


def axpy(m, alpha, x, y, z, *, xi=0, yi=0, zi=0):
    """z = alpha*x + y."""
    xd = _vec(x, m, xi, "x")
    yd = _vec(y, m, yi, "y")
    zd = _vec(z, m, zi, "z")
    for i in range(m):
        zd[zi + i] = alpha * xd[xi + i] + yd[yi + i]


def axpby(m, alpha, x, beta, y, z, *, xi=0, yi=0, zi=0):
    """z = alpha*x + beta*y."""
    xd = _vec(x, m, xi, "x")
    yd = _vec(y, m, yi, "y")
    zd = _vec(z, m, zi, "z")
    for i in range(m):
        zd[zi + i] = alpha * xd[xi + i] + beta * yd[yi + i]


def dot(m, x, y, *, xi=0, yi=0):
    """Inner product with fixed (ascending) summation order."""
    xd = _vec(x, m, xi, "x")
    yd = _vec(y, m, yi, "y")
    s = 0.0
    for i in range(m):
        s += xd[xi + i] * yd[yi + i]
    return s


def rotg(a, b):
    """Givens rotation: returns (c, s, r) with c*a + s*b = r, -s*a + c*b = 0.

    r carries the sign of a when |a| > |b|, otherwise the sign of b.
    """
    if b == 0.0:
        return 1.0, 0.0, a
    if a == 0.0:
        return 0.0, 1.0, b
    anchor = a if abs(a) > abs(b) else b
    r = math.copysign(math.hypot(a, b), anchor)
    return a / r, b / r, r


def apply_col_rot(m, A, i, j, c, s):
    """Rotate columns i and j of an m-row window by the rotation (c, s)."""
    a, ai, aj = _ref(A, "A")
    _check(a, ai, aj, m, max(i, j) + 1, "A")
    for r in range(m):
        oi = element_offset(ai + r, aj + i, PS, a.panel_length)
        oj = element_offset(ai + r, aj + j, PS, a.panel_length)
        x = a.data[oi]
        y = a.data[oj]
        a.data[oi] = c * x + s * y
        a.data[oj] = -s * x + c * y


def apply_row_rot(m, A, i, j, c, s):
    """Rotate rows i and j of an m-column window by the rotation (c, s)."""
    a, ai, aj = _ref(A, "A")
    _check(a, ai, aj, max(i, j) + 1, m, "A")
    for col in range(m):
        oi = element_offset(ai + i, aj + col, PS, a.panel_length)
        oj = element_offset(ai + j, aj + col, PS, a.panel_length)
        x = a.data[oi]
        y = a.data[oj]
        a.data[oi] = c * x + s * y
        a.data[oj] = -s * x + c * y


def gemv(trans, m, n, alpha, A, x, xi, beta, y, yi, z, zi):
    """z = alpha*op(A)*x + beta*y with op selected by trans in {'n', 't'}.

    A is m x n; op(A) is m x n for 'n' and n x m for 't'.
    """
    if trans not in ("n", "t"):
        raise ValueError(f"trans must be 'n' or 't', got {trans!r}")
    a, ai, aj = _ref(A, "A")
    _check(a, ai, aj, m, n, "A")
    rows, cols = (m, n) if trans == "n" else (n, m)
    xd = _vec(x, cols, xi, "x")
    yd = _vec(y, rows, yi, "y")
    zd = _vec(z, rows, zi, "z")
    out = [0.0] * rows
    for r in range(rows):
        s = 0.0
        for c in range(cols):
            aval = _at(a, ai + r, aj + c) if trans == "n" else _at(a, ai + c, aj + r)
            s += aval * xd[xi + c]
        out[r] = s
    for r in range(rows):
        v = alpha * out[r]
        if beta != 0.0:
            v += beta * yd[yi + r]
        zd[zi + r] = v


def symv_l(m, alpha, A, x, xi, beta, y, yi, z, zi):
    """Symmetric matrix-vector product reading only the lower triangle."""
    a, ai, aj = _ref(A, "A")
    _check(a, ai, aj, m, m, "A")
    xd = _vec(x, m, xi, "x")
    yd = _vec(y, m, yi, "y")
    zd = _vec(z, m, zi, "z")
    out = [0.0] * m
    for r in range(m):
        s = 0.0
        for c in range(m):
            aval = _at(a, ai + r, aj + c) if r >= c else _at(a, ai + c, aj + r)
            s += aval * xd[xi + c]
        out[r] = s
    for r in range(m):
        v = alpha * out[r]
        if beta != 0.0:
            v += beta * yd[yi + r]
        zd[zi + r] = v


def trmv(variant, m, A, x, z, *, xi=0, zi=0):
    """z = op(A)*x with a triangular A; variant in {lnn, ltn, unn, utn}."""
    if variant not in TRMV_VARIANTS:
        raise ValueError(f"unknown trmv variant {variant!r}; one of {TRMV_VARIANTS}")
    a, ai, aj = _ref(A, "A")
    _check(a, ai, aj, m, m, "A")
    xd = _vec(x, m, xi, "x")
    zd = _vec(z, m, zi, "z")
    lower = variant[0] == "l"
    trans = variant[1] == "t"
    out = [0.0] * m
    for r in range(m):
        s = 0.0
        for c in range(m):
            keep = (r >= c) if lower != trans else (r <= c)
            if not keep:
                continue
            aval = _at(a, ai + r, aj + c) if not trans else _at(a, ai + c, aj + r)
            s += aval * xd[xi + c]
        out[r] = s
    for r in range(m):
        zd[zi + r] = out[r]


def trsv(variant, m, A, x, z, *, xi=0, zi=0):
    """Solve op(A)*z = x; variant in {lnn, lnu, ltn, ltu, unn, utn}.

    Unit variants never read the stored diagonal.  A zero diagonal in a
    non-unit variant raises SingularMatrixError with the column index.
    """
    if variant not in TRSV_VARIANTS:
        raise ValueError(f"unknown trsv variant {variant!r}; one of {TRSV_VARIANTS}")
    a, ai, aj = _ref(A, "A")
    _check(a, ai, aj, m, m, "A")
    xd = _vec(x, m, xi, "x")
    zd = _vec(z, m, zi, "z")
    lower = variant[0] == "l"
    trans = variant[1] == "t"
    unit = variant.endswith("u")
    # effective operator is lower-triangular iff lower != trans
    eff_lower = lower != trans

    def elem(r, c):
        return _at(a, ai + r, aj + c) if not trans else _at(a, ai + c, aj + r)

    out = [0.0] * m
    order = range(m) if eff_lower else range(m - 1, -1, -1)
    for r in order:
        s = xd[xi + r]
        if eff_lower:
            for c in range(r):
                s -= elem(r, c) * out[c]
        else:
            for c in range(r + 1, m):
                s -= elem(r, c) * out[c]
        if not unit:
            dv = elem(r, r)
            if dv == 0.0:
                raise SingularMatrixError(f"trsv_{variant}: zero diagonal at column {r}", r)
            s /= dv
        out[r] = s
    for r in range(m):
        zd[zi + r] = out[r]
