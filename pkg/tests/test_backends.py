"""Cross-backend checks: the compiled core and the pure-Python twin must
produce bit-identical results (same accumulation order, IEEE doubles)."""

import os
import subprocess
import sys

import numpy as np
import pytest

from panelblas import pack
from panelblas._backend import BACKEND, get_core
from panelblas.matstore import allocate_panel_matrix

try:
    CC = get_core("c")
except ImportError:  # pragma: no cover - source tree without the extension
    CC = None
PY = get_core("py")

pytestmark = pytest.mark.skipif(CC is None, reason="compiled core not built")


def zpanel(arr):
    arr = np.asarray(arr, dtype=np.float64)
    p = allocate_panel_matrix(*arr.shape)
    p.data[:] = 0.0
    pack.gecp(arr.shape[0], arr.shape[1], pack.panel_from_array(arr).ref(0, 0),
              p.ref(0, 0))
    return p


def test_backend_surfaces_match():
    public = [n for n in dir(PY) if not n.startswith("_") and callable(getattr(PY, n))]
    for name in public:
        assert hasattr(CC, name), name


def test_gemm_drivers_bit_identical(rng):
    for _ in range(25):
        m, n, k = (int(x) for x in rng.integers(1, 18, 3))
        a = rng.uniform(-1, 1, (m, k))
        bt = rng.uniform(-1, 1, (n, k))
        bn = rng.uniform(-1, 1, (k, n))
        c = rng.uniform(-1, 1, (m, n))
        ap, btp, bnp, cp = map(zpanel, (a, bt, bn, c))
        outs = []
        for core in (CC, PY):
            d = zpanel(np.zeros((m, n)))
            core.gemm_nt_drv(m, n, k, 1.25, ap.data, 0, 0, ap.panel_length,
                             btp.data, 0, 0, btp.panel_length, -0.5,
                             cp.data, 0, 0, cp.panel_length,
                             d.data, 0, 0, d.panel_length)
            outs.append(np.asarray(d.data).copy())
        assert np.array_equal(outs[0], outs[1])
        outs = []
        for core in (CC, PY):
            d = zpanel(np.zeros((m, n)))
            core.gemm_nn_drv(m, n, k, 2.0, ap.data, 0, 0, ap.panel_length,
                             bnp.data, 0, 0, bnp.panel_length, 1.0,
                             cp.data, 0, 0, cp.panel_length,
                             d.data, 0, 0, d.panel_length)
            outs.append(np.asarray(d.data).copy())
        assert np.array_equal(outs[0], outs[1])


def test_factorizations_bit_identical(rng):
    for _ in range(12):
        m = int(rng.integers(1, 22))
        g = rng.uniform(-1, 1, (m, m))
        cm = g @ g.T + m * np.eye(m)
        cp = zpanel(cm)
        outs = []
        for core in (CC, PY):
            d = zpanel(np.zeros((m, m)))
            dv = np.zeros(m)
            st = core.potrf_drv(m, m, cp.data, 0, 0, cp.panel_length,
                                d.data, 0, 0, d.panel_length, dv, 0)
            assert st == -1
            outs.append((np.asarray(d.data).copy(), dv.copy()))
        assert np.array_equal(outs[0][0], outs[1][0])
        assert np.array_equal(outs[0][1], outs[1][1])


def test_panel_helpers_bit_identical(rng):
    for _ in range(12):
        m, n = (int(x) for x in rng.integers(2, 15, 2))
        cm = rng.uniform(-1, 1, (m, n))
        jb = min(4, min(m, n))
        res = []
        for core in (CC, PY):
            p = zpanel(cm)
            ipiv = np.zeros(4, dtype=np.int64)
            dv = np.zeros(8)
            st = core.kgetrf_panel(p.data, 0, p.panel_length, m, jb, True, ipiv, 0, dv, 0)
            res.append((st, np.asarray(p.data).copy(), ipiv.copy(), dv.copy()))
        assert res[0][0] == res[1][0]
        for x, y in zip(res[0][1:], res[1][1:]):
            assert np.array_equal(x, y)

        ncols = int(rng.integers(4, 16))
        lq = rng.uniform(-1, 1, (4, ncols))
        res = []
        for core in (CC, PY):
            p = zpanel(lq)
            tau = np.zeros(4)
            core.klq_panel(p.data, 0, p.panel_length, 4, ncols, tau, 0)
            res.append((np.asarray(p.data).copy(), tau.copy()))
        assert np.array_equal(res[0][0], res[1][0])
        assert np.array_equal(res[0][1], res[1][1])


def test_rf_and_oracles_bit_identical(rng):
    for _ in range(10):
        m, n, k = (int(x) for x in rng.integers(1, 14, 3))
        lda = m
        a = rng.uniform(-1, 1, m * k + 1)
        b = rng.uniform(-1, 1, max(n, k) * max(n, k) + k * n + 1)
        c = rng.uniform(-1, 1, m * n + 1)
        outs = []
        for core in (CC, PY):
            d = np.zeros(m * n + 1)
            core.rf_gemm_nt_drv(m, n, k, 1.5, a, 0, lda, b, 0, n, 0.5, c, 0, lda,
                                d, 0, lda)
            outs.append(d.copy())
        assert np.array_equal(outs[0], outs[1])
        outs = []
        for core in (CC, PY):
            d = np.zeros(m * n + 1)
            core.o_gemm_nn(m, n, k, 1.5, a, 0, lda, b, 0, k if k else 1, 0.5,
                           c, 0, lda, d, 0, lda)
            outs.append(d.copy())
        assert np.array_equal(outs[0], outs[1])


def test_full_stack_matches_across_backends():
    """The same level3 computation in a PANELBLAS_BACKEND=py subprocess
    reproduces the compiled backend's bytes exactly."""
    prog = (
        "import numpy as np, hashlib\n"
        "from panelblas import level3, pack, backend_name\n"
        "rng = np.random.default_rng(99)\n"
        "m = n = k = 13\n"
        "a = pack.panel_from_array(rng.uniform(-1, 1, (m, k)))\n"
        "b = pack.panel_from_array(rng.uniform(-1, 1, (n, k)))\n"
        "c = pack.panel_from_array(rng.uniform(-1, 1, (m, n)))\n"
        "d = pack.panel_from_array(np.zeros((m, n)))\n"
        "level3.gemm_nt(m, n, k, 1.0, a, b, 0.5, c, d)\n"
        "g = rng.uniform(-1, 1, (m, m))\n"
        "cc = pack.panel_from_array(g @ g.T + m * np.eye(m))\n"
        "f = pack.panel_from_array(np.zeros((m, m)))\n"
        "level3.potrf_l(m, cc, f)\n"
        "h = hashlib.sha256()\n"
        "h.update(pack.panel_to_array(d, m, n).tobytes())\n"
        "h.update(np.tril(pack.panel_to_array(f, m, m)).tobytes())\n"
        "print(backend_name(), h.hexdigest())\n"
    )
    outs = {}
    for backend in ("c", "py"):
        env = dict(os.environ, PANELBLAS_BACKEND=backend)
        cp = subprocess.run([sys.executable, "-c", prog], env=env,
                            capture_output=True, text=True)
        assert cp.returncode == 0, cp.stderr
        name, digest = cp.stdout.split()
        assert name == backend
        outs[backend] = digest
    assert outs["c"] == outs["py"]


def test_active_backend_is_compiled_here():
    assert BACKEND == "c"


def test_syrk_trmm_drivers_bit_identical(rng):
    for _ in range(15):
        m, k = (int(x) for x in rng.integers(1, 20, 2))
        a = rng.uniform(-1, 1, (m, k))
        b = rng.uniform(-1, 1, (m, k))
        c = rng.uniform(-1, 1, (m, m))
        ap, bp, cp = map(zpanel, (a, b, c))
        outs = []
        for core in (CC, PY):
            d = zpanel(np.zeros((m, m)))
            core.syrk_ln_drv(m, k, 1.5, ap.data, 0, 0, ap.panel_length,
                             bp.data, 0, 0, bp.panel_length, -0.5,
                             cp.data, 0, 0, cp.panel_length,
                             d.data, 0, 0, d.panel_length)
            outs.append(np.asarray(d.data).copy())
        assert np.array_equal(outs[0], outs[1])
        n = int(rng.integers(1, 18))
        t = np.tril(rng.uniform(-1, 1, (n, n)))
        x = rng.uniform(-1, 1, (m, n))
        tp, xp = zpanel(t), zpanel(x)
        outs = []
        for core in (CC, PY):
            d = zpanel(np.zeros((m, n)))
            core.trmm_rlnn_drv(m, n, 1.5, xp.data, 0, 0, xp.panel_length,
                               tp.data, 0, 0, tp.panel_length,
                               d.data, 0, 0, d.panel_length)
            outs.append(np.asarray(d.data).copy())
        assert np.array_equal(outs[0], outs[1])


def test_lu_rowsolve_bit_identical(rng):
    for _ in range(10):
        jb = int(rng.integers(1, 5))
        width = int(rng.integers(1, 20))
        block = rng.uniform(-1, 1, (4, 4 + width))
        outs = []
        for core in (CC, PY):
            p = zpanel(block)
            core.lu_rowsolve_drv(jb, width, p.data, 0, 0, 4, p.panel_length)
            outs.append(np.asarray(p.data).copy())
        assert np.array_equal(outs[0], outs[1])
