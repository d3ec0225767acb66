"""Acceptance criteria, one test per criterion.

Each test prints one "ACCEPTANCE <n> PASS/REPORT" line (run pytest with -s
to see them) and enforces the stated tolerance and time budget.
"""

import hashlib
import time

import numpy as np
import numpy.linalg as la
import pytest

from conftest import rel, to_panel, unpack
from panelblas import apps, bench, level12, level3, pack, ref_impl
from panelblas.matstore import ColMatrix, allocate_col_matrix, allocate_panel_matrix, allocate_vector

SIZES = list(range(1, 17)) + list(range(17, 48, 3))
ORIGINS = [(0, 0), (1, 3), (3, 1), (4, 4)]
SEEDS = [11, 22, 33]


def zpanel(arr):
    arr = np.asarray(arr, dtype=np.float64)
    p = allocate_panel_matrix(max(arr.shape[0], 1), max(arr.shape[1], 1))
    p.data[:] = 0.0
    if arr.size:
        pack.gecp(arr.shape[0], arr.shape[1], to_panel(arr).ref(0, 0), p.ref(0, 0))
    return p


def win(arr, ai, aj):
    arr = np.asarray(arr, dtype=np.float64)
    m, n = arr.shape
    big = allocate_panel_matrix(ai + m + 4, aj + n + 4)
    big.data[:] = 0.0
    if arr.size:
        pack.gecp(m, n, to_panel(arr).ref(0, 0), big.ref(ai, aj))
    return big.ref(ai, aj)


def col(arr):
    return ColMatrix.from_array(np.asarray(arr, dtype=np.float64))


def vec(arr):
    v = allocate_vector(len(arr))
    v.data[:] = arr
    return v


def spd(rng, n, shift=None):
    g = rng.uniform(-1, 1, (n, n))
    return g @ g.T + (shift if shift is not None else n) * np.eye(n)


# ---------------------------------------------------------------------------
# criterion 1: oracle equivalence over the full size grid


def _check_level3(rng, s, o):
    tol = 1e-13
    ai, aj = o
    a = rng.uniform(-1, 1, (s, s))
    b = rng.uniform(-1, 1, (s, s))
    c = rng.uniform(-1, 1, (s, s))
    lw = la.cholesky(spd(rng, s))

    d = win(np.zeros((s, s)), aj, ai)
    level3.gemm_nt(s, s, s, 1.5, win(a, ai, aj), win(b, aj, ai), -0.5, win(c, ai, ai), d)
    want = ref_impl.oracle_gemm_nt(s, s, s, 1.5, col(a), col(b), -0.5, col(c))
    assert rel(unpack(d, s, s), want.to_array()) < tol, ("gemm_nt", s, o)

    d = win(np.zeros((s, s)), ai, aj)
    level3.gemm_nn(s, s, s, 1.5, win(a, ai, aj), win(b, aj, ai), -0.5, win(c, ai, ai), d)
    want = ref_impl.oracle_gemm_nn(s, s, s, 1.5, col(a), col(b), -0.5, col(c))
    assert rel(unpack(d, s, s), want.to_array()) < tol, ("gemm_nn", s, o)

    d = win(np.zeros((s, s)), ai, aj)
    level3.syrk_ln(s, s, 1.5, win(a, ai, aj), win(b, ai, aj), -0.5, win(c, aj, ai), d)
    want = ref_impl.oracle_syrk_ln(s, s, 1.5, col(a), col(b), -0.5, col(c))
    assert rel(np.tril(unpack(d, s, s)), np.tril(want.to_array())) < tol, ("syrk", s, o)

    d = win(np.zeros((s, s)), ai, aj)
    level3.trmm_rlnn(s, s, 1.5, win(np.tril(a), ai, ai), win(b, aj, aj), d)
    want = ref_impl.oracle_trmm_rlnn(s, s, 1.5, col(np.tril(a)), col(b))
    assert rel(unpack(d, s, s), want.to_array()) < tol, ("trmm", s, o)

    for var in level3.TRSM_VARIANTS:
        tri = lw if var in ("llnu", "rltn", "rltu") else lw.T
        d = win(np.zeros((s, s)), ai, aj)
        level3.trsm(s, s, 1.5, win(tri, ai, ai), win(b, aj, aj), d, var)
        want = ref_impl.oracle_trsm(var, s, s, 1.5, col(tri), col(b))
        assert rel(unpack(d, s, s), want.to_array()) < 1e-12, (var, s, o)

    cs = spd(rng, s)
    d = win(np.zeros((s, s)), ai, aj)
    level3.potrf_l(s, win(cs, aj, aj), d)
    want = ref_impl.oracle_potrf(s, col(cs))
    assert rel(np.tril(unpack(d, s, s)), np.tril(want.to_array())) < tol, ("potrf", s, o)

    d = win(np.zeros((s, s)), ai, aj)
    level3.syrk_potrf_ln(s, s, win(a, ai, aj), win(a, ai, aj), win(cs, aj, aj), d)
    seq = ref_impl.oracle_syrk_ln(s, s, 1.0, col(a), col(a), 1.0, col(cs))
    want = ref_impl.oracle_potrf(s, seq)
    assert rel(np.tril(unpack(d, s, s)), np.tril(want.to_array())) < tol, ("syrk_potrf", s, o)

    d = win(np.zeros((s, s)), ai, aj)
    ipiv = level3.getrf_pivot(s, s, win(a, ai, aj), d)
    want, wpiv = ref_impl.oracle_getrf(s, s, col(a))
    assert np.array_equal(ipiv, wpiv), ("getrf ipiv", s, o)
    assert rel(unpack(d, s, s), want.to_array()) < 1e-12, ("getrf", s, o)

    dd = a + s * np.eye(s)
    d = win(np.zeros((s, s)), ai, aj)
    level3.getrf_nopivot(s, s, win(dd, ai, aj), d)
    got = unpack(d, s, s)
    lo = np.tril(got, -1) + np.eye(s)
    up = np.triu(got)
    assert la.norm(lo @ up - dd) <= 1e-12 * max(1.0, la.norm(dd)) * 10, ("nopivot", s, o)

    d = win(np.zeros((s, s)), ai, aj)
    tau = level3.gelqf(s, s, win(a, ai, aj), d)
    want, wtau = ref_impl.oracle_gelqf(s, s, col(a))
    assert rel(unpack(d, s, s), want.to_array()) < tol, ("gelqf", s, o)
    assert rel(tau, wtau) < tol, ("gelqf tau", s, o)


def _check_level12(rng, s, o):
    tol = 1e-13
    ai, aj = o
    a = rng.uniform(-1, 1, (s, s))
    x = rng.uniform(-1, 1, s)
    y = rng.uniform(-1, 1, s)
    lw = la.cholesky(spd(rng, s))
    aw = win(a, ai, aj)
    lww = win(lw, ai, ai)

    z = vec(np.zeros(s))
    level12.gemv("n", s, s, 1.5, aw, vec(x), 0, -0.5, vec(y), 0, z, 0)
    assert rel(z.to_array(), 1.5 * a @ x - 0.5 * y) < tol, ("gemv_n", s)
    level12.gemv("t", s, s, 1.5, aw, vec(x), 0, -0.5, vec(y), 0, z, 0)
    assert rel(z.to_array(), 1.5 * a.T @ x - 0.5 * y) < tol, ("gemv_t", s)

    sym = np.tril(a) + np.tril(a, -1).T
    level12.symv_l(s, 2.0, aw, vec(x), 0, 1.0, vec(y), 0, z, 0)
    assert rel(z.to_array(), 2.0 * sym @ x + y) < tol, ("symv", s)

    for var in level12.TRMV_VARIANTS:
        tri = lw if var[0] == "l" else lw.T
        op = tri if var[1] == "n" else tri.T
        level12.trmv(var, s, win(tri, ai, ai), vec(x), z)
        assert rel(z.to_array(), op @ x) < tol, ("trmv_" + var, s)

    for var in level12.TRSV_VARIANTS:
        unit = var.endswith("u")
        tri = lw if var[0] == "l" else lw.T
        if unit:
            tri = (np.tril(tri, -1) if var[0] == "l" else np.triu(tri, 1)) + np.eye(s)
        op = tri if var[1] == "n" else tri.T
        level12.trsv(var, s, win(tri, ai, ai), vec(x), z)
        assert rel(op @ z.to_array(), x) < 1e-12, ("trsv_" + var, s)

    level12.axpy(s, 2.0, vec(x), vec(y), z)
    assert rel(z.to_array(), 2.0 * x + y) < tol
    level12.axpby(s, 2.0, vec(x), -3.0, vec(y), z)
    assert rel(z.to_array(), 2.0 * x - 3.0 * y) < tol
    want = 0.0
    for i in range(s):
        want += x[i] * y[i]
    assert level12.dot(s, vec(x), vec(y)) == want


def test_acceptance_1_oracle_equivalence():
    t0 = time.perf_counter()
    cases = 0
    for seed in SEEDS:
        for s in SIZES:
            for o in ORIGINS:
                rng = np.random.default_rng([seed, s, o[0], o[1]])
                _check_level3(rng, s, o)
                _check_level12(np.random.default_rng([seed, s, 7, o[0], o[1]]), s, o)
                cases += 1
    dt = time.perf_counter() - t0
    assert dt < 60.0, f"criterion 1 exceeded its 60 s budget: {dt:.1f} s"
    print(f"\nACCEPTANCE 1 PASS: oracle equivalence, {cases} level3 case groups "
          f"+ level12 sweep, {dt:.1f} s")


# ---------------------------------------------------------------------------
# criterion 2: pack round trip


def test_acceptance_2_pack_roundtrip():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    for trial in range(500):
        m = int(rng.integers(0, 33))
        n = int(rng.integers(0, 33))
        ai = int(rng.integers(0, 9))
        aj = int(rng.integers(0, 9))
        arr = rng.uniform(-1, 1, (m, n))
        big = allocate_panel_matrix(ai + m + 3, aj + n + 3)
        big.data[:] = 0.0
        src = col(arr) if m * n else allocate_col_matrix(m, n)
        pack.pack_matrix(src, m, n, big.ref(ai, aj))
        out = allocate_col_matrix(m, n)
        pack.unpack_matrix(big.ref(ai, aj), m, n, out)
        if m * n:
            assert np.array_equal(out.to_array(), arr), (m, n, ai, aj)
        back = allocate_panel_matrix(ai + m + 3, aj + n + 3)
        back.data[:] = 0.0
        pack.pack_matrix(out, m, n, back.ref(ai, aj))
        assert np.array_equal(np.asarray(back.data), np.asarray(big.data))
    dt = time.perf_counter() - t0
    assert dt < 5.0, f"criterion 2 exceeded its 5 s budget: {dt:.1f} s"
    print(f"\nACCEPTANCE 2 PASS: 500 pack/unpack round trips bit-exact, {dt:.1f} s")


# ---------------------------------------------------------------------------
# criterion 3: kernel store-variant consistency


def test_acceptance_3_variant_consistency():
    from test_kernels import KERNEL_IDS, filled, run_kernel
    from panelblas.kernels import SHAPES, StoreSpec

    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    checks = 0
    for name in KERNEL_IDS:
        for shape in SHAPES:
            for k in range(0, 17):
                seed = int(rng.integers(0, 2 ** 31))
                outs = []
                for spec in (StoreSpec.nominal(shape),
                             StoreSpec.variable(shape.mr, 4),
                             StoreSpec.generalized(shape.mr, 4, 0)):
                    r = np.random.default_rng(seed)
                    c = filled(shape.mr, 4, 0.25)
                    d = filled(shape.mr, 4, 0.0)
                    run_kernel(name, r, shape, k, c.ref(0, 0), d.ref(0, 0), spec)
                    outs.append(np.asarray(d.data).copy())
                assert np.array_equal(outs[0], outs[1]), (name, shape, k, "nominal/variable")
                assert np.array_equal(outs[1], outs[2]), (name, shape, k, "variable/generalized")
                checks += 1
    dt = time.perf_counter() - t0
    assert dt < 10.0, f"criterion 3 exceeded its 10 s budget: {dt:.1f} s"
    print(f"\nACCEPTANCE 3 PASS: {checks} kernel variant triples bit-identical, {dt:.1f} s")


# ---------------------------------------------------------------------------
# criterion 4: factorization residuals


def test_acceptance_4_factorization_residuals():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    for trial in range(200):
        m = int(rng.integers(1, 65))
        cs = spd(rng, m)
        d = zpanel(np.zeros((m, m)))
        level3.potrf_l(m, zpanel(cs), d)
        lo = np.tril(unpack(d.ref(0, 0), m, m))
        assert la.norm(lo @ lo.T - cs) <= 1e-12 * la.norm(cs), ("potrf", m, trial)
        dv = np.asarray(d.diag_inv[:m])
        assert np.max(np.abs(dv * np.diag(lo) - 1.0)) <= 1e-15, ("potrf dinv", m)

    for trial in range(200):
        m = int(rng.integers(1, 65))
        a = rng.uniform(-1, 1, (m, m))
        d = zpanel(np.zeros((m, m)))
        ipiv = level3.getrf_pivot(m, m, zpanel(a), d)
        got = unpack(d.ref(0, 0), m, m)
        lo = np.tril(got, -1) + np.eye(m)
        up = np.triu(got)
        pc = a.copy()
        for kk in range(m):
            r = int(ipiv[kk])
            if r != kk:
                pc[[kk, r]] = pc[[r, kk]]
        assert la.norm(lo @ up - pc) <= 1e-12 * la.norm(a), ("getrf", m, trial)
        assert np.max(np.abs(np.tril(got, -1))) <= 1.0, ("multipliers", m)
        dv = np.asarray(d.diag_inv[:m])
        assert np.max(np.abs(dv * np.diag(up) - 1.0)) <= 1e-15, ("getrf dinv", m)

    for trial in range(200):
        m = int(rng.integers(1, 65))
        n = int(rng.integers(m, 65 + 16))
        a = rng.uniform(-1, 1, (m, n))
        d = zpanel(np.zeros((m, n)))
        tau = level3.gelqf(m, n, zpanel(a), d)
        got = unpack(d.ref(0, 0), m, n)
        q = ref_impl.lq_build_q(col(got), tau, m, n)
        lo = np.tril(got[:, :m])
        assert la.norm(lo @ q - a) <= 1e-12 * la.norm(a), ("gelqf", m, n, trial)
        assert la.norm(q @ q.T - np.eye(m)) <= 1e-12, ("gelqf orth", m, n)
    dt = time.perf_counter() - t0
    assert dt < 30.0, f"criterion 4 exceeded its 30 s budget: {dt:.1f} s"
    print(f"\nACCEPTANCE 4 PASS: 3 x 200 factorization residuals within 1e-12, {dt:.1f} s")


# ---------------------------------------------------------------------------
# criterion 5: fusion equivalence


def test_acceptance_5_fusion_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    for trial in range(100):
        m = int(rng.integers(1, 40))
        k = int(rng.integers(0, 40))
        a = rng.uniform(-1, 1, (m, max(k, 1)))
        cs = spd(rng, m)
        fused = zpanel(np.zeros((m, m)))
        level3.syrk_potrf_ln(m, k, zpanel(a), zpanel(a), zpanel(cs), fused)
        tmp = zpanel(np.zeros((m, m)))
        level3.syrk_ln(m, k, 1.0, zpanel(a), zpanel(a), 1.0, zpanel(cs), tmp)
        seq = zpanel(np.zeros((m, m)))
        level3.potrf_l(m, tmp, seq)
        g1 = np.tril(unpack(fused.ref(0, 0), m, m))
        g2 = np.tril(unpack(seq.ref(0, 0), m, m))
        assert rel(g1, g2) < 1e-13, ("syrk_potrf", m, k, trial)

    for n, m in [(5, 2), (9, 4), (16, 8), (24, 10), (12, 12)]:
        h = spd(rng, n)
        a = rng.uniform(-1, 1, (m, n))
        f1 = apps.kkt_schur_factor(n, m, zpanel(h), zpanel(a))
        f2 = apps.kkt_schur_factor_fused(n, m, zpanel(h), zpanel(a))
        for x, y, mm, nn, tri in [(f1.L_H, f2.L_H, n, n, True),
                                  (f1.M, f2.M, m, n, False),
                                  (f1.L_S, f2.L_S, m, m, True)]:
            ax = unpack(x.ref(0, 0), mm, nn)
            ay = unpack(y.ref(0, 0), mm, nn)
            if tri:
                ax, ay = np.tril(ax), np.tril(ay)
            assert rel(ax, ay) < 1e-12, ("kkt fusion", n, m)
    dt = time.perf_counter() - t0
    assert dt < 10.0, f"criterion 5 exceeded its 10 s budget: {dt:.1f} s"
    print(f"\nACCEPTANCE 5 PASS: fused = sequential (100 syrk_potrf, 5 kkt), {dt:.1f} s")


# ---------------------------------------------------------------------------
# criterion 6: Riccati correctness


def test_acceptance_6_riccati():
    from test_apps import dense_riccati, random_ocp

    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    dims = apps.OcpDims(1, 1, 1)
    data = apps.OcpData.from_arrays(dims, [np.eye(1)], [np.eye(1)], [np.eye(1)],
                                    [np.eye(1)], [np.zeros((1, 1))], np.eye(1))
    p0 = apps.riccati_factorize(data)[0].cost_to_go()[0, 0]
    assert abs(p0 - 1.5) <= 1e-15, p0

    worst = 0.0
    for nx in range(1, 9):
        for nu in range(0, 5):
            N = 20
            d = apps.OcpDims(nx, nu, N)
            As, Bs, Qs, Rs, Ss, P = random_ocp(rng, nx, max(nu, 1), N)
            if nu == 0:
                Bs = [b[:, :0] for b in Bs]
                Rs = [r[:0, :0] for r in Rs]
                Ss = [s[:0, :] for s in Ss]
            data = apps.OcpData.from_arrays(d, As, Bs, Qs, Rs, Ss, P)
            fac = apps.riccati_factorize(data)
            want = dense_riccati(As, Bs, Qs, Rs, Ss, P, N)
            for n in range(N):
                err = rel(fac[n].cost_to_go(), want[n])
                worst = max(worst, err)
                assert err < 1e-10, (nx, nu, n, err)
    dt = time.perf_counter() - t0
    assert dt < 10.0, f"criterion 6 exceeded its 10 s budget: {dt:.1f} s"
    print(f"\nACCEPTANCE 6 PASS: riccati vs dense oracle (worst {worst:.2e}), "
          f"scalar case exact, {dt:.1f} s")


# ---------------------------------------------------------------------------
# criterion 7: block-tridiagonal Cholesky


def test_acceptance_7_block_tridiag():
    from test_apps import assemble, build_tridiag

    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    for nx, N in [(2, 2), (4, 4), (8, 8), (8, 5), (3, 8)]:
        ds, os_ = build_tridiag(rng, nx, N)
        fac = apps.block_tridiag_chol_factor(N, [zpanel(d) for d in ds],
                                             [zpanel(o) for o in os_])
        full = assemble(ds, os_, nx, N)
        rhs = rng.uniform(-1, 1, N * nx)
        x = apps.block_tridiag_chol_solve(fac, vec(rhs))
        assert rel(x.to_array(), la.solve(full, rhs)) < 1e-10, (nx, N)

    nx = 10
    probs = {}
    for N in (20, 40, 80):
        ds, os_ = build_tridiag(rng, nx, N)
        dp = [zpanel(d) for d in ds]
        op = [zpanel(o) for o in os_]
        rhs = vec(rng.uniform(-1, 1, N * nx))

        def work(N=N, dp=dp, op=op, rhs=rhs):
            f = apps.block_tridiag_chol_factor(N, dp, op)
            apps.block_tridiag_chol_solve(f, rhs)

        probs[N] = work
        work()
        work()

    # the wall-time slope over N must stay constant within 30%; the three
    # horizons are timed round-robin (so load bursts hit them alike), the
    # best rep per horizon is kept, and a bounded retry absorbs the rest
    import gc

    ratio = None
    gc.disable()
    try:
        for attempt in range(5):
            best = {N: float("inf") for N in probs}
            for _ in range(25):
                for N, work in probs.items():
                    t1 = time.perf_counter()
                    work()
                    best[N] = min(best[N], time.perf_counter() - t1)
            slope_lo = (best[40] - best[20]) / 20.0
            slope_hi = (best[80] - best[40]) / 40.0
            ratio = max(slope_lo, slope_hi) / min(slope_lo, slope_hi)
            if ratio <= 1.3:
                break
    finally:
        gc.enable()
    assert ratio <= 1.3, f"wall-time slope varies {ratio:.2f}x over N in (20, 40, 80)"
    dt = time.perf_counter() - t0
    assert dt < 30.0, f"criterion 7 exceeded its 30 s budget: {dt:.1f} s"
    print(f"\nACCEPTANCE 7 PASS: dense-oracle match and linear scaling "
          f"(slope spread {ratio:.2f}x <= 1.3x), {dt:.1f} s")


# ---------------------------------------------------------------------------
# criterion 8: relative performance (reported, not hard-failed)


def test_acceptance_8_relative_performance():
    recs = {}
    # interleave the implementations inside each attempt and keep the best
    # of three, so host-load bursts hit all sides alike
    for _ in range(3):
        for impl, sizes in (("hp", [64, 128]), ("rf", [64, 128]), ("naive", [128])):
            for r in bench.run_sweep("gemm_nt", impl, sizes, reps=9, warmup=2, seed=0):
                recs[(impl, r.m)] = max(recs.get((impl, r.m), 0.0), r.gflops)
                assert r.gflops > 0
    vs_naive = recs[("hp", 128)] / recs[("naive", 128)]
    vs_rf64 = recs[("hp", 64)] / recs[("rf", 64)]
    vs_rf128 = recs[("hp", 128)] / recs[("rf", 128)]
    status = "PASS" if (vs_naive >= 2.0 and vs_rf64 >= 1.0 and vs_rf128 >= 1.0) else "REPORT"
    print(f"\nACCEPTANCE 8 {status}: hp/naive at n=128: {vs_naive:.2f}x "
          f"(target >= 2), hp/rf at n=64: {vs_rf64:.2f}x, at n=128: {vs_rf128:.2f}x "
          f"(target >= 1); soft criterion, reported not hard-failed")


# ---------------------------------------------------------------------------
# criterion 9: determinism


def _battery_digest():
    h = hashlib.sha256()
    rng = np.random.default_rng(909)

    m = n = k = 13
    a = rng.uniform(-1, 1, (m, k))
    b = rng.uniform(-1, 1, (n, k))
    c = rng.uniform(-1, 1, (m, n))
    d = zpanel(np.zeros((m, n)))
    level3.gemm_nt(m, n, k, 1.0, zpanel(a), zpanel(b), 0.5, zpanel(c), d)
    h.update(unpack(d.ref(0, 0), m, n).tobytes())
    d2 = zpanel(np.zeros((m, n)))
    level3.gemm_nn(m, n, k, 1.0, zpanel(a), zpanel(b.T.copy()), 0.5, zpanel(c), d2)
    h.update(unpack(d2.ref(0, 0), m, n).tobytes())

    cs = spd(rng, 12)
    f = zpanel(np.zeros((12, 12)))
    level3.potrf_l(12, zpanel(cs), f)
    h.update(np.tril(unpack(f.ref(0, 0), 12, 12)).tobytes())
    h.update(np.asarray(f.diag_inv[:12]).tobytes())

    g = rng.uniform(-1, 1, (9, 9))
    lu = zpanel(np.zeros((9, 9)))
    ipiv = level3.getrf_pivot(9, 9, zpanel(g), lu)
    h.update(unpack(lu.ref(0, 0), 9, 9).tobytes())
    h.update(np.asarray(ipiv).tobytes())

    q = rng.uniform(-1, 1, (6, 10))
    lq = zpanel(np.zeros((6, 10)))
    tau = level3.gelqf(6, 10, zpanel(q), lq)
    h.update(unpack(lq.ref(0, 0), 6, 10).tobytes())
    h.update(np.asarray(tau).tobytes())

    lw = la.cholesky(spd(rng, 8))
    tr = zpanel(np.zeros((7, 8)))
    level3.trsm_rltn(7, 8, 1.0, zpanel(lw), zpanel(rng.uniform(-1, 1, (7, 8))), tr)
    h.update(unpack(tr.ref(0, 0), 7, 8).tobytes())

    from test_apps import build_tridiag, random_ocp
    As, Bs, Qs, Rs, Ss, P = random_ocp(rng, 3, 2, 5)
    data = apps.OcpData.from_arrays(apps.OcpDims(3, 2, 5), As, Bs, Qs, Rs, Ss, P)
    for fac in apps.riccati_factorize(data):
        h.update(fac.cost_to_go().tobytes())
    ds, os_ = build_tridiag(rng, 4, 6)
    fac = apps.block_tridiag_chol_factor(6, [zpanel(x) for x in ds],
                                         [zpanel(x) for x in os_])
    x = apps.block_tridiag_chol_solve(fac, vec(rng.uniform(-1, 1, 24)))
    h.update(x.to_array().tobytes())

    case = bench._Case("gemm_nt", "hp", 16, seed=42)
    for key in sorted(case.arrays):
        h.update(np.asarray(case.arrays[key]).tobytes())
    return h.hexdigest()


def test_acceptance_9_determinism():
    d1 = _battery_digest()
    d2 = _battery_digest()
    assert d1 == d2
    print(f"\nACCEPTANCE 9 PASS: two consecutive runs bit-identical (sha256 {d1[:16]}...)")
