"""Embedded-optimization building blocks on top of level3/level12.

Three algorithm families, all built exclusively from the library's own
routines:

  * range-space (Schur-complement) factorization and solve of an
    equality-constrained QP's KKT system, in a four-call form and a
    fused form that stacks the Hessian and constraint matrix,
  * the backward Riccati recursion in its stacked square-root form:
    per stage, C <- [B'; A'] * L_next followed by a fused
    update-and-factorize of [R S; S' Q] + C*C',
  * Cholesky factorization and solve of symmetric positive definite
    block-tridiagonal systems, with cost linear in the number of blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import level12, level3, pack
from .errors import DimensionError, FactorizationError
from .matstore import allocate_panel_matrix, allocate_vector


# ---------------------------------------------------------------------------
# Schur-complement KKT factorization


@dataclass
class KktSchurFactor:
    """Outputs of the range-space factorization.

    L_H is the Cholesky factor of the Hessian, M = A * L_H^{-T}, and
    L_S is the Cholesky factor of M * M' (= A H^{-1} A').
    """

    n: int
    m: int
    L_H: "PanelMatrix"
    M: "PanelMatrix"
    L_S: "PanelMatrix"


def kkt_schur_factor(n, m, H, A):
    """Factor the KKT system via four routine calls.

    H is n x n SPD (lower stored), A is m x n with full row rank.
    """
    lh = allocate_panel_matrix(n, n)
    mm = allocate_panel_matrix(m, n)
    ls = allocate_panel_matrix(m, m)
    level3.potrf_l(n, H, lh)
    level3.trsm_rltn(m, n, 1.0, lh, A, mm)
    sig = allocate_panel_matrix(m, m)
    level3.syrk_ln(m, n, 1.0, mm, mm, 0.0, sig, sig)
    level3.potrf_l(m, sig, ls)
    return KktSchurFactor(n, m, lh, mm, ls)


def kkt_schur_factor_fused(n, m, H, A):
    """Same outputs via the stacked-matrix trick and the fused kernel.

    [H; A] is factored in one non-squared Cholesky sweep (producing L_H
    and M together), then L_S comes from one fused update-factorize.
    """
    stack = allocate_panel_matrix(n + m, n)
    pack.gecp(n, n, H, stack.ref(0, 0))
    pack.gecp(m, n, A, stack.ref(n, 0))
    tfac = allocate_panel_matrix(n + m, n)
    level3.potrf_l(n + m, stack, tfac, n=n)
    lh = allocate_panel_matrix(n, n)
    mm = allocate_panel_matrix(m, n)
    _copy_lower_tri(n, tfac.ref(0, 0), lh.ref(0, 0))
    pack.gecp(m, n, tfac.ref(n, 0), mm.ref(0, 0))
    zero = allocate_panel_matrix(m, m)
    pack.gese(m, m, 0.0, zero.ref(0, 0))
    ls = allocate_panel_matrix(m, m)
    level3.syrk_potrf_ln(m, n, mm, mm, zero, ls)
    return KktSchurFactor(n, m, lh, mm, ls)


def _copy_lower_tri(n, src, dst):
    for j in range(n):
        pack.gecp(n - j, 1, src.mat.ref(src.ai + j, src.aj + j),
                  dst.mat.ref(dst.ai + j, dst.aj + j))


def kkt_schur_solve(factor, g, b):
    """Solve [H A'; A 0] [x; lam] = [-g; -b] given a KktSchurFactor."""
    n, m = factor.n, factor.m
    if g.len < n or b.len < m:
        raise DimensionError("right-hand sides shorter than the factorization sizes")
    u = allocate_vector(n)
    level12.trsv("lnn", n, factor.L_H, g, u)
    # lam solves (A H^{-1} A') lam = b - A H^{-1} g, and A H^{-1} g = M u
    lam = allocate_vector(m)
    level12.gemv("n", m, n, -1.0, factor.M, u, 0, 1.0, b, 0, lam, 0)
    level12.trsv("lnn", m, factor.L_S, lam, lam)
    level12.trsv("ltn", m, factor.L_S, lam, lam)
    # x = -H^{-1} (g + A' lam); A' lam = L_H (M' lam) since A = M L_H'
    w = allocate_vector(n)
    level12.gemv("t", m, n, 1.0, factor.M, lam, 0, 0.0, w, 0, w, 0)
    v = allocate_vector(n)
    level12.trmv("lnn", n, factor.L_H, w, v)
    level12.axpy(n, 1.0, g, v, v)
    x = allocate_vector(n)
    level12.trsv("lnn", n, factor.L_H, v, x)
    level12.trsv("ltn", n, factor.L_H, x, x)
    for i in range(n):
        x.data[i] = -x.data[i]
    return x, lam


# ---------------------------------------------------------------------------
# backward Riccati recursion


@dataclass(frozen=True)
class OcpDims:
    """Optimal-control problem dimensions: states, controls, horizon."""

    nx: int
    nu: int
    N: int

    def __post_init__(self):
        if self.nx < 1:
            raise DimensionError(f"nx must be >= 1, got {self.nx}")
        if self.nu < 0:
            raise DimensionError(f"nu must be >= 0, got {self.nu}")
        if self.N < 1:
            raise DimensionError(f"N must be >= 1, got {self.N}")


class RiccatiStage:
    """One stage's data, pre-packed for the recursion.

    ``bat`` holds the (nu+nx) x nx stack [B'; A'] and ``rsq`` the
    (nu+nx) square cost stack [R S; S' Q] (lower part referenced).
    The original arrays are kept for fixture round trips.
    """

    def __init__(self, A, B, Q, R, S):
        self.A = np.asarray(A, dtype=np.float64)
        self.B = np.asarray(B, dtype=np.float64)
        self.Q = np.asarray(Q, dtype=np.float64)
        self.R = np.asarray(R, dtype=np.float64)
        self.S = np.asarray(S, dtype=np.float64)
        nx = self.A.shape[0]
        nu = self.B.shape[1]
        if self.A.shape != (nx, nx) or self.B.shape != (nx, nu):
            raise DimensionError("stage A must be nx x nx and B nx x nu")
        if self.Q.shape != (nx, nx) or self.R.shape != (nu, nu) or self.S.shape != (nu, nx):
            raise DimensionError("stage cost blocks must be Q: nx x nx, R: nu x nu, S: nu x nx")
        self.bat = pack.panel_from_array(np.vstack([self.B.T, self.A.T]))
        self.rsq = pack.panel_from_array(
            np.block([[self.R, self.S], [self.S.T, self.Q]]))


class OcpData:
    """Stage data A, B, Q, R, S for n = 0..N-1 plus the terminal cost P_N."""

    def __init__(self, dims, stages, P):
        if len(stages) != dims.N:
            raise DimensionError(f"expected {dims.N} stages, got {len(stages)}")
        self.dims = dims
        self.stages = stages
        self.P = np.asarray(P, dtype=np.float64)
        if self.P.shape != (dims.nx, dims.nx):
            raise DimensionError("terminal cost must be nx x nx")
        self.p_panel = pack.panel_from_array(self.P)

    @classmethod
    def from_arrays(cls, dims, A, B, Q, R, S, P):
        stages = [RiccatiStage(A[i], B[i], Q[i], R[i], S[i]) for i in range(dims.N)]
        return cls(dims, stages, P)


class RiccatiWorkspace:
    """Per-horizon buffers: the C product, stage factors, terminal factor."""

    def __init__(self, dims):
        ns = dims.nu + dims.nx
        self.dims = dims
        self.cbuf = allocate_panel_matrix(ns, dims.nx)
        self.factors = [allocate_panel_matrix(ns, ns) for _ in range(dims.N)]
        self.terminal = allocate_panel_matrix(dims.nx, dims.nx)


class RiccatiStageFactor:
    """View on one stage's factor [Lambda 0; L Lcal] (lower triangular)."""

    def __init__(self, dims, full):
        self.dims = dims
        self.full = full

    @property
    def lam(self):
        return self.full.ref(0, 0)

    @property
    def l(self):
        return self.full.ref(self.dims.nu, 0)

    @property
    def lcal(self):
        return self.full.ref(self.dims.nu, self.dims.nu)

    def cost_to_go(self):
        """Dense P_n = Lcal * Lcal' reconstructed from the factor."""
        nx, nu = self.dims.nx, self.dims.nu
        lc = np.tril(pack.panel_to_array(self.full, nu + nx, nu + nx)[nu:, nu:])
        return lc @ lc.T


def riccati_factor_step(stage, L_next, cbuf, out):
    """One backward step: factor [R S; S' Q] + ([B'; A'] L)([B'; A'] L)'.

    L_next is an nx x nx lower Cholesky factor window; the result factor
    [Lambda 0; L Lcal] lands in ``out`` and its lower-right block is the
    next step's L.
    """
    ns = stage.rsq.rows
    nx = stage.bat.cols
    level3.trmm_rlnn(ns, nx, 1.0, L_next, stage.bat, cbuf)
    level3.syrk_potrf_ln(ns, nx, cbuf, cbuf, stage.rsq, out)


def riccati_factorize(data, workspace=None):
    """Run the recursion backward over the whole horizon.

    Returns a list of RiccatiStageFactor, index n = 0..N-1, plus the
    factored terminal cost as the final element's successor; failures
    carry the stage index in the message.
    """
    dims = data.dims
    ws = workspace or RiccatiWorkspace(dims)
    try:
        level3.potrf_l(dims.nx, data.p_panel, ws.terminal)
    except FactorizationError as e:
        raise type(e)(f"terminal cost: {e}", e.index) from e
    l_next = ws.terminal.ref(0, 0)
    out = [None] * dims.N
    for n in range(dims.N - 1, -1, -1):
        try:
            riccati_factor_step(data.stages[n], l_next, ws.cbuf, ws.factors[n])
        except FactorizationError as e:
            raise type(e)(f"stage {n}: {e}", e.index) from e
        out[n] = RiccatiStageFactor(dims, ws.factors[n])
        l_next = ws.factors[n].ref(dims.nu, dims.nu)
    return out


# ---------------------------------------------------------------------------
# block-tridiagonal Cholesky


@dataclass
class BlockTridiagFactor:
    nx: int
    N: int
    diag: list
    offdiag: list


def block_tridiag_chol_factor(N, diag_blocks, offdiag_blocks):
    """Factor an SPD block-tridiagonal matrix (lower blocks supplied).

    diag_blocks[i] is the i-th nx x nx diagonal block (lower stored);
    offdiag_blocks[i] is the sub-diagonal block coupling i+1 to i.
    Cost is linear in N: one trsm, one syrk and one potrf per block.
    """
    if len(diag_blocks) != N or len(offdiag_blocks) != N - 1:
        raise DimensionError(f"need {N} diagonal and {N - 1} off-diagonal blocks")
    nx = diag_blocks[0].rows
    ld = [allocate_panel_matrix(nx, nx) for _ in range(N)]
    lo = [allocate_panel_matrix(nx, nx) for _ in range(N - 1)]
    work = allocate_panel_matrix(nx, nx)
    try:
        level3.potrf_l(nx, diag_blocks[0], ld[0])
    except FactorizationError as e:
        raise type(e)(f"block 0: {e}", e.index) from e
    for i in range(1, N):
        level3.trsm_rltn(nx, nx, 1.0, ld[i - 1], offdiag_blocks[i - 1], lo[i - 1])
        pack.gecp(nx, nx, diag_blocks[i], work.ref(0, 0))
        level3.syrk_ln(nx, nx, -1.0, lo[i - 1], lo[i - 1], 1.0, work, work)
        try:
            level3.potrf_l(nx, work, ld[i])
        except FactorizationError as e:
            raise type(e)(f"block {i}: {e}", e.index) from e
    return BlockTridiagFactor(nx, N, ld, lo)


def block_tridiag_chol_solve(factor, rhs):
    """Solve L L' x = rhs; rhs is one DenseVector of length N*nx."""
    nx, N = factor.nx, factor.N
    if rhs.len < N * nx:
        raise DimensionError(f"rhs needs {N * nx} entries, has {rhs.len}")
    x = allocate_vector(N * nx)
    for i in range(N * nx):
        x.data[i] = rhs.data[i]
    level12.trsv("lnn", nx, factor.diag[0], x, x)
    for i in range(1, N):
        level12.gemv("n", nx, nx, -1.0, factor.offdiag[i - 1],
                     x, (i - 1) * nx, 1.0, x, i * nx, x, i * nx)
        level12.trsv("lnn", nx, factor.diag[i], x, x, xi=i * nx, zi=i * nx)
    level12.trsv("ltn", nx, factor.diag[N - 1], x, x,
                 xi=(N - 1) * nx, zi=(N - 1) * nx)
    for i in range(N - 2, -1, -1):
        level12.gemv("t", nx, nx, -1.0, factor.offdiag[i],
                     x, (i + 1) * nx, 1.0, x, i * nx, x, i * nx)
        level12.trsv("ltn", nx, factor.diag[i], x, x, xi=i * nx, zi=i * nx)
    return x


# ---------------------------------------------------------------------------
# problem fixture files: header "nx nu N", then per-stage A, B, Q, R, S
# in the matstore fixture format, then P_N


def write_ocp_fixture(path, data):
    dims = data.dims
    with open(path, "w") as fh:
        fh.write(f"{dims.nx} {dims.nu} {dims.N}\n")
        for st in data.stages:
            for arr in (st.A, st.B, st.Q, st.R, st.S):
                _write_array(fh, arr)
        _write_array(fh, data.P)


def read_ocp_fixture(path):
    with open(path) as fh:
        nx, nu, N = (int(t) for t in fh.readline().split())
        dims = OcpDims(nx, nu, N)
        stages = []
        for _ in range(N):
            A = _read_array(fh)
            B = _read_array(fh)
            Q = _read_array(fh)
            R = _read_array(fh)
            S = _read_array(fh)
            stages.append(RiccatiStage(A, B, Q, R, S))
        P = _read_array(fh)
    return OcpData(dims, stages, P)


def _write_array(fh, arr):
    m, n = arr.shape
    fh.write(f"{m} {n}\n")
    for i in range(m):
        fh.write(" ".join(f"{arr[i, j]:.17g}" for j in range(n)))
        fh.write("\n")


def _read_array(fh):
    m, n = (int(t) for t in fh.readline().split())
    out = np.empty((m, n))
    for i in range(m):
        row = fh.readline().split()
        if len(row) != n:
            raise ValueError(f"fixture row has {len(row)} values, expected {n}")
        out[i] = [float(t) for t in row]
    return out
