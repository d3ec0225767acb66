"""Matrix and vector containers and the panel-major storage layout.

The native format stores a matrix in horizontal panels of PS rows each.
Within a panel, elements of one column are contiguous, and consecutive
columns of the same panel follow each other, so a kernel that walks a
panel left to right touches memory strictly sequentially.  The element
with matrix coordinates (ai, aj) lives at

    (ai - ai % PS) * panel_length + aj * PS + ai % PS

which is what :func:`element_offset` computes.

Matrices carry an auxiliary ``diag_inv`` array where factorizations
deposit the reciprocals of their pivots; triangular solves can then
multiply instead of divide.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, MemoryLayoutError

# Panel height (rows per panel).  Library-wide constant, power of two.
PS = 4
# Alignment, in bytes, of every carve-out from an externally supplied
# arena.  One cache line on all targets of interest.
ALIGN = 64

_ELEM = 8  # bytes per float64


def _round_up(x, to):
    return -(-x // to) * to


def element_offset(ai, aj, ps, sda):
    """Linear index of element (ai, aj) in a panel-major array.

    ``ps`` is the panel height (a power of two) and ``sda`` the panel
    length (allocated columns per panel).  Pure arithmetic, no bounds
    checking.
    """
    air = ai & (ps - 1)
    return (ai - air) * sda + aj * ps + air


class SubRef:
    """A matrix handle plus the (ai, aj) top-left corner of a window.

    Sizes are not part of the reference; each operation takes its own
    size arguments and checks bounds against the underlying matrix.
    """

    __slots__ = ("mat", "ai", "aj")

    def __init__(self, mat, ai, aj):
        if ai < 0 or aj < 0:
            raise DimensionError(f"negative sub-matrix origin ({ai}, {aj})")
        self.mat = mat
        self.ai = ai
        self.aj = aj

    def __repr__(self):
        return f"SubRef({self.mat!r}, ai={self.ai}, aj={self.aj})"


class PanelMatrix:
    """An m x n matrix stored in panel-major format.

    Use :func:`allocate_panel_matrix` or :func:`create_panel_matrix` to
    build one; the constructor itself is internal.  ``data`` holds
    ceil(rows/PS)*PS * panel_length float64 elements; ``diag_inv`` holds
    min(rows, cols) reciprocals filled by factorizations.
    """

    __slots__ = ("rows", "cols", "panel_size", "panel_length", "data",
                 "diag_inv", "memsize", "diag_lo", "diag_hi", "_base")

    def __init__(self, rows, cols, data, diag_inv, memsize, base=None):
        self.rows = rows
        self.cols = cols
        self.panel_size = PS
        self.panel_length = _round_up(cols, PS)
        self.data = data
        self.diag_inv = diag_inv
        self.memsize = memsize
        # Columns [diag_lo, diag_hi) of diag_inv hold reciprocals from the
        # most recent diagonal-window factorization; empty range otherwise.
        self.diag_lo = 0
        self.diag_hi = 0
        self._base = base  # keeps externally viewed memory alive

    def __repr__(self):
        return f"PanelMatrix({self.rows}x{self.cols}, cn={self.panel_length})"

    def ref(self, ai=0, aj=0):
        return SubRef(self, ai, aj)

    def _check(self, ai, aj):
        if not (0 <= ai < self.rows and 0 <= aj < self.cols):
            raise DimensionError(
                f"element ({ai}, {aj}) outside {self.rows}x{self.cols} matrix")

    def get(self, ai, aj):
        self._check(ai, aj)
        return float(self.data[element_offset(ai, aj, PS, self.panel_length)])

    def set(self, ai, aj, v):
        self._check(ai, aj)
        self.data[element_offset(ai, aj, PS, self.panel_length)] = v

    def diag_inv_valid(self, ai, n):
        """True if diag_inv covers columns [ai, ai+n) from a factorization."""
        return self.diag_lo <= ai and ai + n <= self.diag_hi


class ColMatrix:
    """Column-major matrix with a leading dimension (reference format)."""

    __slots__ = ("rows", "cols", "lda", "data")

    def __init__(self, rows, cols, lda, data):
        if lda < rows:
            raise DimensionError(f"lda {lda} < rows {rows}")
        if len(data) < lda * cols:
            raise DimensionError("column-major backing storage too small")
        self.rows = rows
        self.cols = cols
        self.lda = lda
        self.data = data

    def __repr__(self):
        return f"ColMatrix({self.rows}x{self.cols}, lda={self.lda})"

    def ref(self, ai=0, aj=0):
        return SubRef(self, ai, aj)

    def _check(self, ai, aj):
        if not (0 <= ai < self.rows and 0 <= aj < self.cols):
            raise DimensionError(
                f"element ({ai}, {aj}) outside {self.rows}x{self.cols} matrix")

    def get(self, ai, aj):
        self._check(ai, aj)
        return float(self.data[ai + aj * self.lda])

    def set(self, ai, aj, v):
        self._check(ai, aj)
        self.data[ai + aj * self.lda] = v

    @classmethod
    def from_array(cls, arr):
        a = np.asarray(arr, dtype=np.float64)
        if a.ndim != 2:
            raise DimensionError("expected a 2-d array")
        m, n = a.shape
        return cls(m, n, max(m, 1), np.asfortranarray(a).reshape(-1, order="F").copy())

    def to_array(self):
        out = np.empty((self.rows, self.cols))
        for j in range(self.cols):
            out[:, j] = self.data[j * self.lda:j * self.lda + self.rows]
        return out


class DenseVector:
    """Contiguous (unit-stride) float64 vector."""

    __slots__ = ("len", "data", "memsize", "_base")

    def __init__(self, length, data, memsize, base=None):
        self.len = length
        self.data = data
        self.memsize = memsize
        self._base = base

    def __repr__(self):
        return f"DenseVector(len={self.len})"

    def get(self, i):
        if not 0 <= i < self.len:
            raise DimensionError(f"element {i} outside vector of length {self.len}")
        return float(self.data[i])

    def set(self, i, v):
        if not 0 <= i < self.len:
            raise DimensionError(f"element {i} outside vector of length {self.len}")
        self.data[i] = v

    def to_array(self):
        return self.data[:self.len].copy()


def get_element(ref):
    """Read the element a SubRef points at (bit-exact round trip with set)."""
    return ref.mat.get(ref.ai, ref.aj)


def set_element(ref, v):
    ref.mat.set(ref.ai, ref.aj, v)


# ---------------------------------------------------------------------------
# sizing and construction


def memsize_panel_matrix(m, n):
    """Bytes needed to back an m x n panel matrix (data + diag_inv).

    Each component is rounded up to ALIGN so consecutive carve-outs from
    one arena stay aligned; the result is a multiple of ALIGN.
    """
    if m < 0 or n < 0:
        raise DimensionError(f"negative matrix size {m}x{n}")
    data_b = _round_up(m, PS) * _round_up(n, PS) * _ELEM
    diag_b = min(m, n) * _ELEM
    return _round_up(data_b, ALIGN) + _round_up(diag_b, ALIGN)


def _as_byte_view(memory):
    raw = np.frombuffer(memory, dtype=np.uint8)
    if not raw.flags.writeable:
        # np.frombuffer inherits read-only buffers; matrices need writes.
        raise MemoryLayoutError("supplied memory region is read-only")
    return raw


def create_panel_matrix(m, n, memory):
    """Build a panel matrix on externally supplied aligned storage.

    The region must be at least memsize_panel_matrix(m, n) bytes and
    ALIGN-aligned.  Its contents are not touched, so a region already
    holding panel-major data is reinterpreted as-is.
    """
    need = memsize_panel_matrix(m, n)
    raw = _as_byte_view(memory)
    if raw.nbytes < need:
        raise MemoryLayoutError(
            f"memory region holds {raw.nbytes} bytes, "
            f"{need} required for a {m}x{n} panel matrix")
    if need and raw.ctypes.data % ALIGN != 0:
        raise MemoryLayoutError(
            f"memory region must be {ALIGN}-byte aligned "
            f"(address {raw.ctypes.data:#x})")
    data_elems = _round_up(m, PS) * _round_up(n, PS)
    diag_off = _round_up(data_elems * _ELEM, ALIGN)
    data = raw[:data_elems * _ELEM].view(np.float64)
    diag = raw[diag_off:diag_off + min(m, n) * _ELEM].view(np.float64)
    return PanelMatrix(m, n, data, diag, need, base=memory)


def allocate_panel_matrix(m, n):
    """Convenience constructor with internal (aligned) allocation."""
    need = memsize_panel_matrix(m, n)
    backing = np.empty(need + ALIGN, dtype=np.uint8)
    shift = (-backing.ctypes.data) % ALIGN
    return create_panel_matrix(m, n, backing[shift:shift + need])


def memsize_vector(m):
    if m < 0:
        raise DimensionError(f"negative vector length {m}")
    return _round_up(m * _ELEM, ALIGN)


def create_vector(m, memory):
    need = memsize_vector(m)
    raw = _as_byte_view(memory)
    if raw.nbytes < need:
        raise MemoryLayoutError(
            f"memory region holds {raw.nbytes} bytes, "
            f"{need} required for a length-{m} vector")
    if need and raw.ctypes.data % ALIGN != 0:
        raise MemoryLayoutError(
            f"memory region must be {ALIGN}-byte aligned "
            f"(address {raw.ctypes.data:#x})")
    return DenseVector(m, raw[:m * _ELEM].view(np.float64), need, base=memory)


def allocate_vector(m):
    need = memsize_vector(m)
    backing = np.empty(need + ALIGN, dtype=np.uint8)
    shift = (-backing.ctypes.data) % ALIGN
    return create_vector(m, backing[shift:shift + need])


def allocate_col_matrix(m, n, lda=None):
    """Column-major matrix with fresh (uninitialized) storage."""
    if m < 0 or n < 0:
        raise DimensionError(f"negative matrix size {m}x{n}")
    if lda is None:
        lda = max(m, 1)
    return ColMatrix(m, n, lda, np.empty(lda * n))


# ---------------------------------------------------------------------------
# fixture file format: first line "m n", then m rows of n floats


def write_fixture(path, mat):
    """Write a ColMatrix as a plain-text fixture."""
    with open(path, "w") as fh:
        fh.write(f"{mat.rows} {mat.cols}\n")
        for i in range(mat.rows):
            fh.write(" ".join(f"{mat.get(i, j):.17g}" for j in range(mat.cols)))
            fh.write("\n")


def read_fixture(path):
    """Read a plain-text fixture back into a ColMatrix."""
    with open(path) as fh:
        m, n = (int(t) for t in fh.readline().split())
        out = allocate_col_matrix(m, n)
        for i in range(m):
            row = fh.readline().split()
            if len(row) != n:
                raise ValueError(f"fixture row {i} has {len(row)} values, expected {n}")
            for j, tok in enumerate(row):
                out.set(i, j, float(tok))
    return out
