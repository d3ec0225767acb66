"""Register-blocked inner kernels on panel-major operands.

Each kernel computes a full mr x nr accumulator block with a fixed
accumulation order (ascending k, column-major within the block) and then
runs one of three store variants described by a :class:`StoreSpec`:

  * nominal        - store the full block,
  * variable size  - store only m_store x n_store elements,
  * generalized    - variable size plus a destination first row that sits
    at an arbitrary offset inside its panel, carrying surplus rows over
    into the following panel.

All variants share the compute path, so a variable-size store of the
full block is bit-identical to the nominal store, and a generalized
store with offset 0 is bit-identical to the variable-size one.

Stream operands (A, B, and the triangular factor of trsm) must start on
a panel boundary and provide mr/ps panels of rows; the C and D windows
may start anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ._backend import core as _core
from .errors import DimensionError
from .matstore import PS, PanelMatrix, SubRef, element_offset


class StoreMode(enum.Enum):
    NOMINAL = "nominal"
    VARIABLE_SIZE = "variable_size"
    GENERALIZED = "generalized"


@dataclass(frozen=True)
class KernelShape:
    """Accumulator block shape: mr rows by nr columns."""

    mr: int
    nr: int

    def __post_init__(self):
        if self.mr % PS or self.nr % PS:
            raise DimensionError(f"kernel shape {self.mr}x{self.nr} must be a multiple of ps={PS}")
        if self.mr < self.nr:
            raise DimensionError("kernel shapes use mr >= nr")


SHAPE_4X4 = KernelShape(4, 4)
SHAPE_8X4 = KernelShape(8, 4)
SHAPES = (SHAPE_4X4, SHAPE_8X4)


@dataclass(frozen=True)
class StoreSpec:
    """Store descriptor: which part of the block lands in D, and where."""

    mode: StoreMode
    m_store: int
    n_store: int
    panel_row_offset: int = 0

    @classmethod
    def nominal(cls, shape=SHAPE_4X4):
        return cls(StoreMode.NOMINAL, shape.mr, shape.nr, 0)

    @classmethod
    def variable(cls, m_store, n_store):
        return cls(StoreMode.VARIABLE_SIZE, m_store, n_store, 0)

    @classmethod
    def generalized(cls, m_store, n_store, panel_row_offset):
        return cls(StoreMode.GENERALIZED, m_store, n_store, panel_row_offset)

    def check(self, shape):
        if not 0 <= self.panel_row_offset < PS:
            raise DimensionError("panel_row_offset must lie in [0, ps)")
        if self.mode is not StoreMode.GENERALIZED and self.panel_row_offset:
            raise DimensionError(f"{self.mode.value} stores require panel_row_offset 0")
        if self.mode is StoreMode.NOMINAL and (self.m_store, self.n_store) != (shape.mr, shape.nr):
            raise DimensionError("nominal stores write the full block")
        if not (0 <= self.m_store <= shape.mr and 0 <= self.n_store <= shape.nr):
            raise DimensionError(
                f"store size {self.m_store}x{self.n_store} exceeds block {shape.mr}x{shape.nr}")


def _win(x, name, aligned):
    if isinstance(x, PanelMatrix):
        x = x.ref(0, 0)
    if not (isinstance(x, SubRef) and isinstance(x.mat, PanelMatrix)):
        raise TypeError(f"{name} must be a PanelMatrix window")
    if aligned and x.ai % PS:
        raise DimensionError(f"{name} window must start on a panel boundary (ai={x.ai})")
    return x


def _stream(x):
    return x.mat.data, element_offset(x.ai, x.aj, PS, x.mat.panel_length), x.mat.panel_length


def _block(x):
    air = x.ai & (PS - 1)
    return (x.mat.data, element_offset(x.ai, x.aj, PS, x.mat.panel_length),
            air, x.mat.panel_length)


def _cd(C, D, spec, shape):
    spec.check(shape)
    c = _win(C, "C", aligned=False)
    d = _win(D, "D", aligned=False)
    if spec.mode is StoreMode.GENERALIZED:
        if d.ai & (PS - 1) != spec.panel_row_offset:
            raise DimensionError(
                f"D window row {d.ai} does not sit at panel offset {spec.panel_row_offset}")
    elif d.ai % PS or c.ai % PS:
        raise DimensionError(f"{spec.mode.value} stores need panel-aligned C and D windows")
    return _block(c) + _block(d)


def kernel_gemm_nt(k, alpha, A, B, beta, C, D, spec, shape=SHAPE_4X4):
    """One block of D = alpha*A*B' + beta*C; A and B read along panels."""
    a = _stream(_win(A, "A", aligned=True))
    b = _stream(_win(B, "B", aligned=True))
    cd = _cd(C, D, spec, shape)
    _core.kgemm_nt(k, alpha, *a, *b, beta, *cd, shape.mr, spec.m_store, spec.n_store)


def kernel_gemm_nn(k, alpha, A, B, offset_b, beta, C, D, spec, shape=SHAPE_4X4):
    """One block of D = alpha*A*B + beta*C; B read across panels.

    ``offset_b`` is the within-panel row position of B's first row and
    must equal B.ai % ps.
    """
    a = _stream(_win(A, "A", aligned=True))
    b = _win(B, "B", aligned=False)
    if b.ai & (PS - 1) != offset_b:
        raise DimensionError(f"offset_b={offset_b} does not match B window row {b.ai}")
    bo = element_offset(b.ai - offset_b, b.aj, PS, b.mat.panel_length)
    cd = _cd(C, D, spec, shape)
    _core.kgemm_nn(k, alpha, *a, b.mat.data, bo, offset_b, b.mat.panel_length,
                   beta, *cd, shape.mr, spec.m_store, spec.n_store)


def kernel_syrk_ln(k, alpha, A, B, beta, C, D, spec, shape=SHAPE_4X4, diag_shift=0):
    """gemm_nt block masked to the lower triangle (i >= j + diag_shift)."""
    a = _stream(_win(A, "A", aligned=True))
    b = _stream(_win(B, "B", aligned=True))
    cd = _cd(C, D, spec, shape)
    _core.ksyrk_ln(k, alpha, *a, *b, beta, *cd,
                   shape.mr, spec.m_store, spec.n_store, diag_shift)


def kernel_trsm_rltn(k, A, B, C, D, E, diag_inv, spec, shape=SHAPE_4X4, unit=False):
    """Downgrade then substitute: D*E' = C - A*B' on one block.

    E is an n_store x n_store lower-triangular panel window; diag_inv
    holds reciprocals of its diagonal (ignored for unit=True).
    """
    a = _stream(_win(A, "A", aligned=True))
    b = _stream(_win(B, "B", aligned=True))
    e = _stream(_win(E, "E", aligned=True))
    cd = _cd(C, D, spec, shape)
    _core.ktrsm_rltn(0, a[0], 0, a[2], a[0], 0, a[2], k, *a, *b, 1.0, *cd,
                     *e, diag_inv, 0, unit, shape.mr, spec.m_store, spec.n_store)


def kernel_potrf(k, A, B, C, D, diag_inv_out, spec, shape=SHAPE_4X4):
    """Factorize one block of C - A*B'; returns None or the failing index.

    The leading n_store columns get the Cholesky factor; rows past
    n_store (m_store > n_store) get the triangular-solve treatment.
    diag_inv_out receives one reciprocal per pivot.
    """
    if spec.n_store > spec.m_store:
        raise DimensionError("factorization blocks need m_store >= n_store")
    a = _stream(_win(A, "A", aligned=True))
    cd = _cd(C, D, spec, shape)
    b = _stream(_win(B, "B", aligned=True))
    st = _core.kpotrf(0, a[0], 0, a[2], a[0], 0, a[2], k, *a, *b, *cd,
                      diag_inv_out, 0, shape.mr, spec.m_store, spec.n_store)
    return None if st < 0 else st


def kernel_syrk_potrf(k_syrk, k_potrf, A_syrk, B_syrk, A_potrf, B_potrf,
                      C, D, diag_inv_out, spec, shape=SHAPE_4X4):
    """Fused update and downdate then factorize, one load/store cycle.

    Equivalent to kernel_syrk_ln(alpha=beta=1) followed by kernel_potrf
    with the same operand order (accumulation order differs, so the
    match is to rounding, not bit-exact).
    """
    if spec.n_store > spec.m_store:
        raise DimensionError("factorization blocks need m_store >= n_store")
    ap = _stream(_win(A_syrk, "A_syrk", aligned=True))
    bp = _stream(_win(B_syrk, "B_syrk", aligned=True))
    am = _stream(_win(A_potrf, "A_potrf", aligned=True))
    bm = _stream(_win(B_potrf, "B_potrf", aligned=True))
    cd = _cd(C, D, spec, shape)
    st = _core.kpotrf(k_syrk, *ap, *bp, k_potrf, *am, *bm, *cd,
                      diag_inv_out, 0, shape.mr, spec.m_store, spec.n_store)
    return None if st < 0 else st


def kernel_trmm_rlnn(k, alpha, A, B, D, spec, shape=SHAPE_4X4):
    """One block of D = alpha*B*A with A lower triangular.

    The A window starts at its diagonal row and is read across panels;
    B is read along panels.  There is no C term.
    """
    b = _stream(_win(B, "B", aligned=True))
    a = _win(A, "A", aligned=False)
    aair = a.ai & (PS - 1)
    ao = element_offset(a.ai - aair, a.aj, PS, a.mat.panel_length)
    spec.check(shape)
    d = _win(D, "D", aligned=False)
    if spec.mode is StoreMode.GENERALIZED:
        if d.ai & (PS - 1) != spec.panel_row_offset:
            raise DimensionError(
                f"D window row {d.ai} does not sit at panel offset {spec.panel_row_offset}")
    elif d.ai % PS:
        raise DimensionError(f"{spec.mode.value} stores need a panel-aligned D window")
    dd = _block(d)
    _core.ktrmm_rlnn(k, alpha, *b, a.mat.data, ao, aair, a.mat.panel_length,
                     *dd, shape.mr, spec.m_store, spec.n_store)
