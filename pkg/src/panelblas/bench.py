"""Benchmark harness: size sweeps, Gflops accounting, CSV emission.

Every timed (routine, impl, size) combination is first checked once
against the naive oracle; timing only starts after the check passes.
Operands are seeded deterministically, allocated once per size, and the
reported time is the median of the timed repetitions.

Flop count conventions (documented constants):
    gemm            2*m*n*k
    syrk_ln         m*(m+1)*k
    trmm/trsm (r)   m*n*n      (triangular factor on the right)
    trmm/trsm (l)   m*m*n      (triangular factor on the left)
    potrf_l         m**3/3
    syrk_potrf_ln   m*(m+1)*k + m**3/3
    getrf           2*m**3/3   (square)
    gelqf           2*m*m*n - 2*m**3/3
    riccati         N * (s*nx*nx + s*(s+1)*nx + s**3/3), s = nx+nu
"""

from __future__ import annotations

import argparse
import os
import statistics
import subprocess
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import apps, level3, pack, ref_impl
from ._backend import BACKEND, core as _core
from .errors import PanelBlasError
from .matstore import (ColMatrix, allocate_col_matrix, allocate_panel_matrix,
                       write_fixture)


class UsageError(PanelBlasError):
    pass


class GateError(PanelBlasError):
    pass


@dataclass
class SweepRecord:
    """One measurement row of a size sweep."""

    routine: str
    impl: str
    m: int
    n: int
    k: int
    reps: int
    seconds: float
    gflops: float


ROUTINES = ("gemm_nt", "gemm_nn", "syrk_ln", "trmm_rlnn", "trsm_rltn",
            "potrf_l", "syrk_potrf_ln", "getrf", "gelqf",
            "riccati", "riccati_conv")
IMPLS = ("hp", "rf", "naive")

_PAIRS = {
    "gemm_nt": ("hp", "rf", "naive"),
    "gemm_nn": ("hp", "rf", "naive"),
    "potrf_l": ("hp", "rf", "naive"),
    "syrk_ln": ("hp", "naive"),
    "trmm_rlnn": ("hp", "naive"),
    "trsm_rltn": ("hp", "naive"),
    "syrk_potrf_ln": ("hp", "naive"),
    "getrf": ("hp", "naive"),
    "gelqf": ("hp", "naive"),
    "riccati": ("hp",),
    "riccati_conv": ("hp",),
}


def valid_pairs():
    return {r: _PAIRS[r] for r in ROUTINES}


def flop_count(routine, m, n, k):
    """Flops for one call at the given operation sizes."""
    if routine in ("gemm_nt", "gemm_nn"):
        return 2.0 * m * n * k
    if routine == "syrk_ln":
        return float(m) * (m + 1) * k
    if routine in ("trmm_rlnn", "trsm_rltn"):
        return float(m) * n * n
    if routine == "potrf_l":
        return m ** 3 / 3.0
    if routine == "syrk_potrf_ln":
        return float(m) * (m + 1) * k + m ** 3 / 3.0
    if routine == "getrf":
        return 2.0 * m ** 3 / 3.0
    if routine == "gelqf":
        return 2.0 * m * m * n - 2.0 * m ** 3 / 3.0
    if routine in ("riccati", "riccati_conv"):
        nx, nu, N = m, n, k
        s = nx + nu
        return N * (float(s) * nx * nx + float(s) * (s + 1) * nx + s ** 3 / 3.0)
    raise UsageError(f"unknown routine {routine!r}; one of {ROUTINES}")


def _rng(routine, size, seed):
    rid = ROUTINES.index(routine)
    return np.random.default_rng([seed, size, rid])


def _col(arr):
    return ColMatrix.from_array(arr)


def _rel(a, b):
    scale = max(1.0, float(np.max(np.abs(b))) if b.size else 0.0)
    return float(np.max(np.abs(a - b))) / scale if a.size else 0.0


_GATE_TOL = 1e-11


class _Case:
    """Operands, a timed closure, and a correctness gate for one size."""

    def __init__(self, routine, impl, size, seed):
        self.routine = routine
        self.impl = impl
        self.size = size
        rng = _rng(routine, size, seed)
        self.arrays = self._generate(rng, size)
        self._prepare()

    def _generate(self, rng, s):
        u = lambda *sh: rng.uniform(-1.0, 1.0, sh)
        r = self.routine
        if r in ("gemm_nt", "gemm_nn", "syrk_ln"):
            return {"A": u(s, s), "B": u(s, s), "C": u(s, s)}
        if r == "trmm_rlnn":
            return {"A": np.tril(u(s, s)), "B": u(s, s)}
        if r == "trsm_rltn":
            mm = u(s, s)
            spd = mm @ mm.T + s * np.eye(s)
            return {"A": np.linalg.cholesky(spd), "B": u(s, s)}
        if r == "potrf_l":
            mm = u(s, s)
            return {"C": mm @ mm.T + s * np.eye(s)}
        if r == "syrk_potrf_ln":
            mm = u(s, s)
            return {"A": u(s, s), "C": mm @ mm.T + s * np.eye(s)}
        if r in ("getrf", "gelqf"):
            return {"C": u(s, s)}
        if r in ("riccati", "riccati_conv"):
            nx, nu, N = s, max(1, s // 2), 20
            A = [u(nx, nx) * (0.8 / nx) for _ in range(N)]
            B = [u(nx, nu) for _ in range(N)]
            Q = []
            R = []
            S = []
            for _ in range(N):
                q = u(nx, nx)
                rr = u(nu, nu)
                Q.append(q @ q.T + np.eye(nx))
                R.append(rr @ rr.T + np.eye(nu))
                S.append(0.05 * u(nu, nx))
            p = u(nx, nx)
            P = p @ p.T + np.eye(nx)
            return {"A": A, "B": B, "Q": Q, "R": R, "S": S, "P": P,
                    "dims": apps.OcpDims(nx, nu, N)}
        raise UsageError(f"unknown routine {self.routine!r}")

    def _prepare(self):
        r, impl, s = self.routine, self.impl, self.size
        a = self.arrays
        if r in ("riccati", "riccati_conv"):
            dims = a["dims"]
            self.dims_tuple = (dims.nx, dims.nu, dims.N)
            data = apps.OcpData.from_arrays(dims, a["A"], a["B"], a["Q"], a["R"], a["S"], a["P"])
            ws = apps.RiccatiWorkspace(dims)
            if r == "riccati":
                self.run = lambda: apps.riccati_factorize(data, ws)
                self.result = lambda: apps.riccati_factorize(data, ws)
            else:
                def conv_and_factor():
                    d = apps.OcpData.from_arrays(dims, a["A"], a["B"], a["Q"],
                                                 a["R"], a["S"], a["P"])
                    return apps.riccati_factorize(d, ws)
                self.run = conv_and_factor
                self.result = conv_and_factor
            return
        self.dims_tuple = self._sizes()
        if impl == "hp":
            self._prepare_hp()
        elif impl == "rf":
            self._prepare_rf()
        else:
            self._prepare_naive()

    def _sizes(self):
        s = self.size
        return (s, s, s)

    def _prepare_hp(self):
        r, s = self.routine, self.size
        a = self.arrays
        P = {k: pack.panel_from_array(v) for k, v in a.items()}
        D = allocate_panel_matrix(s, s)
        pack.gese(s, s, 0.0, D.ref(0, 0))
        self._dpanel = D
        if r == "gemm_nt":
            self.run = lambda: level3.gemm_nt(s, s, s, 1.0, P["A"], P["B"], 1.0, P["C"], D)
        elif r == "gemm_nn":
            self.run = lambda: level3.gemm_nn(s, s, s, 1.0, P["A"], P["B"], 1.0, P["C"], D)
        elif r == "syrk_ln":
            self.run = lambda: level3.syrk_ln(s, s, 1.0, P["A"], P["B"], 1.0, P["C"], D)
        elif r == "trmm_rlnn":
            self.run = lambda: level3.trmm_rlnn(s, s, 1.0, P["A"], P["B"], D)
        elif r == "trsm_rltn":
            self.run = lambda: level3.trsm_rltn(s, s, 1.0, P["A"], P["B"], D)
        elif r == "potrf_l":
            self.run = lambda: level3.potrf_l(s, P["C"], D)
        elif r == "syrk_potrf_ln":
            self.run = lambda: level3.syrk_potrf_ln(s, s, P["A"], P["A"], P["C"], D)
        elif r == "getrf":
            ipiv = np.zeros(s, dtype=np.int64)
            self.run = lambda: level3.getrf_pivot(s, s, P["C"], D, ipiv)
            self._ipiv = ipiv
        elif r == "gelqf":
            work = np.empty(level3.gelqf_worksize(s, s))
            self.run = lambda: level3.gelqf(s, s, P["C"], D, work)
            self._work = work
        self.result = lambda: pack.panel_to_array(D, s, s)

    def _prepare_rf(self):
        r, s = self.routine, self.size
        a = self.arrays
        Cm = {k: _col(v) for k, v in a.items()}
        D = allocate_col_matrix(s, s)
        D.data[:] = 0.0
        self._dcol = D
        if r == "gemm_nt":
            self.run = lambda: ref_impl.rf_gemm_nt(s, s, s, 1.0, Cm["A"], Cm["B"], 1.0, Cm["C"], D)
        elif r == "gemm_nn":
            self.run = lambda: ref_impl.rf_gemm_nn(s, s, s, 1.0, Cm["A"], Cm["B"], 1.0, Cm["C"], D)
        elif r == "potrf_l":
            self.run = lambda: ref_impl.rf_potrf_l(s, Cm["C"], D)
        else:
            raise UsageError(self._pair_msg())
        self.result = lambda: D.to_array()

    def _prepare_naive(self):
        r, s = self.routine, self.size
        a = self.arrays
        Cm = {k: _col(v) for k, v in a.items()}
        D = allocate_col_matrix(s, s)
        D.data[:] = 0.0
        self._dcol = D
        lda = s
        if r == "gemm_nt":
            self.run = lambda: _core.o_gemm_nt(s, s, s, 1.0, Cm["A"].data, 0, lda,
                                               Cm["B"].data, 0, lda, 1.0,
                                               Cm["C"].data, 0, lda, D.data, 0, lda)
        elif r == "gemm_nn":
            self.run = lambda: _core.o_gemm_nn(s, s, s, 1.0, Cm["A"].data, 0, lda,
                                               Cm["B"].data, 0, lda, 1.0,
                                               Cm["C"].data, 0, lda, D.data, 0, lda)
        elif r == "syrk_ln":
            self.run = lambda: _core.o_syrk_ln(s, s, 1.0, Cm["A"].data, 0, lda,
                                               Cm["B"].data, 0, lda, 1.0,
                                               Cm["C"].data, 0, lda, D.data, 0, lda)
        elif r == "trmm_rlnn":
            self.run = lambda: _core.o_trmm_rlnn(s, s, 1.0, Cm["A"].data, 0, lda,
                                                 Cm["B"].data, 0, lda, D.data, 0, lda)
        elif r == "trsm_rltn":
            self.run = lambda: _core.o_trsm(2, s, s, 1.0, Cm["A"].data, 0, lda,
                                            Cm["B"].data, 0, lda, D.data, 0, lda)
        elif r == "potrf_l":
            self.run = lambda: _core.o_potrf(s, Cm["C"].data, 0, lda, D.data, 0, lda)
        elif r == "syrk_potrf_ln":
            def run():
                _core.o_syrk_ln(s, s, 1.0, Cm["A"].data, 0, lda, Cm["A"].data, 0, lda,
                                1.0, Cm["C"].data, 0, lda, D.data, 0, lda)
                _core.o_potrf(s, D.data, 0, lda, D.data, 0, lda)
            self.run = run
        elif r == "getrf":
            ipiv = np.zeros(s, dtype=np.int64)
            src = Cm["C"].data.copy()

            def run():
                D.data[:] = src
                _core.o_getrf(s, s, D.data, 0, lda, ipiv, 0)
            self.run = run
        elif r == "gelqf":
            tau = np.zeros(s)
            src = Cm["C"].data.copy()

            def run():
                D.data[:] = src
                _core.o_gelqf(s, s, D.data, 0, lda, tau, 0)
            self.run = run
        self.result = lambda: D.to_array()

    def _pair_msg(self):
        lines = [f"routine {self.routine!r} does not support impl {self.impl!r};",
                 "valid pairs:"]
        for r, impls in valid_pairs().items():
            lines.append(f"  {r}: {', '.join(impls)}")
        return "\n".join(lines)

    def gate(self):
        """Check one call's output against the oracle; raises GateError."""
        r, s = self.routine, self.size
        a = self.arrays
        self.run()
        if r in ("riccati", "riccati_conv"):
            self._gate_riccati()
            return
        got = self.result()
        want = self._oracle()
        mask = self._mask(want)
        err = _rel(got * mask, want * mask)
        if err > _GATE_TOL:
            raise GateError(
                f"correctness gate failed: {r}/{self.impl} n={s} err={err:.3e}")

    def _mask(self, want):
        r, s = self.routine, self.size
        if r in ("syrk_ln", "potrf_l", "syrk_potrf_ln"):
            return np.tril(np.ones((s, s)))
        return np.ones_like(want)

    def _oracle(self):
        r, s = self.routine, self.size
        a = self.arrays
        if r == "gemm_nt":
            return ref_impl.oracle_gemm_nt(s, s, s, 1.0, _col(a["A"]), _col(a["B"]),
                                           1.0, _col(a["C"])).to_array()
        if r == "gemm_nn":
            return ref_impl.oracle_gemm_nn(s, s, s, 1.0, _col(a["A"]), _col(a["B"]),
                                           1.0, _col(a["C"])).to_array()
        if r == "syrk_ln":
            return ref_impl.oracle_syrk_ln(s, s, 1.0, _col(a["A"]), _col(a["B"]),
                                           1.0, _col(a["C"])).to_array()
        if r == "trmm_rlnn":
            return ref_impl.oracle_trmm_rlnn(s, s, 1.0, _col(a["A"]), _col(a["B"])).to_array()
        if r == "trsm_rltn":
            return ref_impl.oracle_trsm("rltn", s, s, 1.0, _col(a["A"]), _col(a["B"])).to_array()
        if r == "potrf_l":
            return ref_impl.oracle_potrf(s, _col(a["C"])).to_array()
        if r == "syrk_potrf_ln":
            acc = ref_impl.oracle_syrk_ln(s, s, 1.0, _col(a["A"]), _col(a["A"]),
                                          1.0, _col(a["C"]))
            return ref_impl.oracle_potrf(s, acc).to_array()
        if r == "getrf":
            want, wpiv = ref_impl.oracle_getrf(s, s, _col(a["C"]))
            if self.impl == "hp" and not np.array_equal(wpiv, self._ipiv):
                raise GateError(f"correctness gate failed: getrf pivots differ at n={s}")
            return want.to_array()
        if r == "gelqf":
            want, _ = ref_impl.oracle_gelqf(s, s, _col(a["C"]))
            return want.to_array()
        raise UsageError(f"no oracle for {r}")

    def _gate_riccati(self):
        a = self.arrays
        dims = a["dims"]
        factors = self.result()
        lnext = np.linalg.cholesky(a["P"])
        for n in range(dims.N - 1, -1, -1):
            st = a
            bat = np.vstack([st["B"][n].T, st["A"][n].T])
            rsq = np.block([[st["R"][n], st["S"][n]],
                            [st["S"][n].T, st["Q"][n]]])
            c = bat @ lnext
            m = rsq + c @ c.T
            f = np.tril(pack.panel_to_array(factors[n].full))
            err = _rel(f @ f.T, m)
            if err > 1e-10:
                raise GateError(
                    f"correctness gate failed: riccati stage {n} residual {err:.3e}")
            lnext = f[dims.nu:, dims.nu:]


def _median_time(fn, reps, warmup):
    for _ in range(warmup):
        fn()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def run_sweep(routine, impl, sizes, reps=10, warmup=2, seed=0, dump=None):
    """Sweep one routine/impl pair over sizes; returns SweepRecords."""
    if routine not in ROUTINES:
        lines = [f"unknown routine {routine!r}; valid pairs:"]
        for r, impls in valid_pairs().items():
            lines.append(f"  {r}: {', '.join(impls)}")
        raise UsageError("\n".join(lines))
    if impl not in _PAIRS[routine]:
        lines = [f"routine {routine!r} does not support impl {impl!r}; valid pairs:"]
        for r, impls in valid_pairs().items():
            lines.append(f"  {r}: {', '.join(impls)}")
        raise UsageError("\n".join(lines))
    records = []
    for size in sizes:
        case = _Case(routine, impl, size, seed)
        if dump:
            _dump_case(dump, case)
        case.gate()
        sec = _median_time(case.run, reps, warmup)
        m, n, k = case.dims_tuple
        fl = flop_count(routine, m, n, k)
        records.append(SweepRecord(routine, impl, m, n, k, reps, sec,
                                   fl / sec / 1e9 if sec > 0 else 0.0))
    return records


def _dump_case(dump, case):
    os.makedirs(dump, exist_ok=True)
    r, s = case.routine, case.size
    if r in ("riccati", "riccati_conv"):
        a = case.arrays
        data = apps.OcpData.from_arrays(a["dims"], a["A"], a["B"], a["Q"],
                                        a["R"], a["S"], a["P"])
        apps.write_ocp_fixture(os.path.join(dump, f"{r}_{s}.txt"), data)
        return
    for name, arr in case.arrays.items():
        write_fixture(os.path.join(dump, f"{r}_{case.impl}_{s}_{name}.txt"), _col(arr))


def emit_csv(records, destination):
    """Write records as CSV (header + one row each, sorted, 17 digits)."""
    rows = sorted(records, key=lambda r: (r.routine, r.impl, r.m))
    own = isinstance(destination, (str, os.PathLike))
    fh = open(destination, "w") if own else destination
    try:
        fh.write("routine,impl,m,n,k,seconds,gflops\n")
        for r in rows:
            fh.write(f"{r.routine},{r.impl},{r.m},{r.n},{r.k},"
                     f"{r.seconds:.17g},{r.gflops:.17g}\n")
    finally:
        if own:
            fh.close()


def parse_csv(path):
    """Read emit_csv output back into SweepRecords (reps unknown: 0)."""
    out = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "routine,impl,m,n,k,seconds,gflops":
            raise ValueError(f"unexpected CSV header: {header}")
        for line in fh:
            routine, impl, m, n, k, sec, gf = line.strip().split(",")
            out.append(SweepRecord(routine, impl, int(m), int(n), int(k),
                                   0, float(sec), float(gf)))
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="bench",
        description="Size sweeps over panelblas routines; emits CSV of "
                    "median wall time and Gflops per size.")
    parser.add_argument("--routine", required=True,
                        help=f"one of {', '.join(ROUTINES)}")
    parser.add_argument("--impl", required=True, choices=IMPLS,
                        help="implementation to time")
    parser.add_argument("--min", type=int, default=4)
    parser.add_argument("--max", type=int, default=300)
    parser.add_argument("--step", type=int, default=4)
    parser.add_argument("--reps", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default=None, help="CSV destination (default stdout)")
    parser.add_argument("--dump", default=None,
                        help="directory for operand fixture dumps")
    parser.add_argument("--backend", choices=("auto", "c", "py"), default="auto",
                        help="force the compute backend (re-runs under "
                             "PANELBLAS_BACKEND if it differs from the active one)")
    args = parser.parse_args(argv)

    if args.backend != "auto" and args.backend != BACKEND:
        env = dict(os.environ, PANELBLAS_BACKEND=args.backend)
        sub = [sys.executable, "-m", "panelblas.bench"]
        skip = False
        for tok in (argv if argv is not None else sys.argv[1:]):
            if skip:
                skip = False
                continue
            if tok == "--backend":
                skip = True
                continue
            if tok.startswith("--backend="):
                continue
            sub.append(tok)
        return subprocess.run(sub, env=env).returncode

    if args.min < 1 or args.step < 1 or args.max < args.min:
        parser.error("need 1 <= min <= max and step >= 1")
    sizes = range(args.min, args.max + 1, args.step)
    try:
        records = run_sweep(args.routine, args.impl, sizes, reps=args.reps,
                            seed=args.seed, dump=args.dump)
    except UsageError as e:
        print(f"bench: {e}", file=sys.stderr)
        return 2
    except GateError as e:
        print(f"bench: {e}", file=sys.stderr)
        return 1
    if args.out:
        emit_csv(records, args.out)
    else:
        emit_csv(records, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
