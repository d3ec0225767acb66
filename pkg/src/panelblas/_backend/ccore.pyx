# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled backend twin.

Mirrors pycore.py operation for operation (same accumulation order, so
results are bit-identical); see that module for the addressing
conventions.  Hot gemm loops get specialized 4- and 8-row paths.
"""

from libc.math cimport copysign, fabs, sqrt

PS = 4

HAS_C = True


cdef inline Py_ssize_t _eo(Py_ssize_t ai, Py_ssize_t aj, Py_ssize_t sd) noexcept:
    cdef Py_ssize_t air = ai & 3
    return (ai - air) * sd + aj * 4 + air


cdef inline Py_ssize_t _bidx(Py_ssize_t off, Py_ssize_t air, Py_ssize_t sd,
                             Py_ssize_t r, Py_ssize_t j) noexcept:
    return off + 4 * j + r + 4 * (sd - 1) * ((air + r) >> 2)


cdef void _store_block(double alpha, double *acc, double beta,
                       double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
                       double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
                       int mr, int ms, int ns) noexcept:
    cdef int i, j
    cdef double v
    for j in range(ns):
        for i in range(ms):
            if alpha != 0.0:
                v = alpha * acc[j * mr + i]
                if beta != 0.0:
                    v += beta * C[_bidx(co, cair, sdc, i, j)]
            elif beta != 0.0:
                v = beta * C[_bidx(co, cair, sdc, i, j)]
            else:
                v = 0.0
            D[_bidx(do_, dair, sdd, i, j)] = v


cdef void _acc_nt(int k, double *acc, double[::1] A, Py_ssize_t ao, Py_ssize_t sda,
                  double[::1] B, Py_ssize_t bo, Py_ssize_t sdb, int mr,
                  double sign) noexcept:
    cdef Py_ssize_t l, ab, bb, a2
    cdef double a0, a1, a2v, a3, b0, b1, b2, b3
    cdef double a4, a5, a6, a7
    if mr == 8:
        a2 = 4 * sda
        for l in range(k):
            ab = ao + 4 * l
            bb = bo + 4 * l
            a0 = A[ab]
            a1 = A[ab + 1]
            a2v = A[ab + 2]
            a3 = A[ab + 3]
            a4 = A[ab + a2]
            a5 = A[ab + a2 + 1]
            a6 = A[ab + a2 + 2]
            a7 = A[ab + a2 + 3]
            b0 = sign * B[bb]
            b1 = sign * B[bb + 1]
            b2 = sign * B[bb + 2]
            b3 = sign * B[bb + 3]
            acc[0] += a0 * b0
            acc[1] += a1 * b0
            acc[2] += a2v * b0
            acc[3] += a3 * b0
            acc[4] += a4 * b0
            acc[5] += a5 * b0
            acc[6] += a6 * b0
            acc[7] += a7 * b0
            acc[8] += a0 * b1
            acc[9] += a1 * b1
            acc[10] += a2v * b1
            acc[11] += a3 * b1
            acc[12] += a4 * b1
            acc[13] += a5 * b1
            acc[14] += a6 * b1
            acc[15] += a7 * b1
            acc[16] += a0 * b2
            acc[17] += a1 * b2
            acc[18] += a2v * b2
            acc[19] += a3 * b2
            acc[20] += a4 * b2
            acc[21] += a5 * b2
            acc[22] += a6 * b2
            acc[23] += a7 * b2
            acc[24] += a0 * b3
            acc[25] += a1 * b3
            acc[26] += a2v * b3
            acc[27] += a3 * b3
            acc[28] += a4 * b3
            acc[29] += a5 * b3
            acc[30] += a6 * b3
            acc[31] += a7 * b3
    else:
        for l in range(k):
            ab = ao + 4 * l
            bb = bo + 4 * l
            a0 = A[ab]
            a1 = A[ab + 1]
            a2v = A[ab + 2]
            a3 = A[ab + 3]
            b0 = sign * B[bb]
            b1 = sign * B[bb + 1]
            b2 = sign * B[bb + 2]
            b3 = sign * B[bb + 3]
            acc[0] += a0 * b0
            acc[1] += a1 * b0
            acc[2] += a2v * b0
            acc[3] += a3 * b0
            acc[4] += a0 * b1
            acc[5] += a1 * b1
            acc[6] += a2v * b1
            acc[7] += a3 * b1
            acc[8] += a0 * b2
            acc[9] += a1 * b2
            acc[10] += a2v * b2
            acc[11] += a3 * b2
            acc[12] += a0 * b3
            acc[13] += a1 * b3
            acc[14] += a2v * b3
            acc[15] += a3 * b3


cdef void _acc_nn(int k, double *acc, double[::1] A, Py_ssize_t ao, Py_ssize_t sda,
                  double[::1] B, Py_ssize_t bo, Py_ssize_t bair, Py_ssize_t sdb,
                  int mr, int ns, double sign) noexcept:
    cdef Py_ssize_t l, ab, bb, bpan, bidx, a2
    cdef int i, j
    cdef double av[8]
    cdef double b, b0, b1, b2, b3
    cdef double a0, a1, a2v, a3, a4, a5, a6, a7
    bpan = bo
    bidx = bair
    a2 = 4 * sda
    if ns == 4 and mr == 8:
        for l in range(k):
            ab = ao + 4 * l
            bb = bpan + bidx
            a0 = A[ab]
            a1 = A[ab + 1]
            a2v = A[ab + 2]
            a3 = A[ab + 3]
            a4 = A[ab + a2]
            a5 = A[ab + a2 + 1]
            a6 = A[ab + a2 + 2]
            a7 = A[ab + a2 + 3]
            b0 = sign * B[bb]
            b1 = sign * B[bb + 4]
            b2 = sign * B[bb + 8]
            b3 = sign * B[bb + 12]
            acc[0] += a0 * b0
            acc[1] += a1 * b0
            acc[2] += a2v * b0
            acc[3] += a3 * b0
            acc[4] += a4 * b0
            acc[5] += a5 * b0
            acc[6] += a6 * b0
            acc[7] += a7 * b0
            acc[8] += a0 * b1
            acc[9] += a1 * b1
            acc[10] += a2v * b1
            acc[11] += a3 * b1
            acc[12] += a4 * b1
            acc[13] += a5 * b1
            acc[14] += a6 * b1
            acc[15] += a7 * b1
            acc[16] += a0 * b2
            acc[17] += a1 * b2
            acc[18] += a2v * b2
            acc[19] += a3 * b2
            acc[20] += a4 * b2
            acc[21] += a5 * b2
            acc[22] += a6 * b2
            acc[23] += a7 * b2
            acc[24] += a0 * b3
            acc[25] += a1 * b3
            acc[26] += a2v * b3
            acc[27] += a3 * b3
            acc[28] += a4 * b3
            acc[29] += a5 * b3
            acc[30] += a6 * b3
            acc[31] += a7 * b3
            bidx += 1
            if bidx == 4:
                bidx = 0
                bpan += 4 * sdb
        return
    if ns == 4 and mr == 4:
        for l in range(k):
            ab = ao + 4 * l
            bb = bpan + bidx
            a0 = A[ab]
            a1 = A[ab + 1]
            a2v = A[ab + 2]
            a3 = A[ab + 3]
            b0 = sign * B[bb]
            b1 = sign * B[bb + 4]
            b2 = sign * B[bb + 8]
            b3 = sign * B[bb + 12]
            acc[0] += a0 * b0
            acc[1] += a1 * b0
            acc[2] += a2v * b0
            acc[3] += a3 * b0
            acc[4] += a0 * b1
            acc[5] += a1 * b1
            acc[6] += a2v * b1
            acc[7] += a3 * b1
            acc[8] += a0 * b2
            acc[9] += a1 * b2
            acc[10] += a2v * b2
            acc[11] += a3 * b2
            acc[12] += a0 * b3
            acc[13] += a1 * b3
            acc[14] += a2v * b3
            acc[15] += a3 * b3
            bidx += 1
            if bidx == 4:
                bidx = 0
                bpan += 4 * sdb
        return
    for l in range(k):
        ab = ao + 4 * l
        av[0] = A[ab]
        av[1] = A[ab + 1]
        av[2] = A[ab + 2]
        av[3] = A[ab + 3]
        if mr == 8:
            av[4] = A[ab + a2]
            av[5] = A[ab + a2 + 1]
            av[6] = A[ab + a2 + 2]
            av[7] = A[ab + a2 + 3]
        for j in range(4):
            b = sign * B[bpan + 4 * j + bidx] if j < ns else 0.0
            for i in range(mr):
                acc[j * mr + i] += av[i] * b
        bidx += 1
        if bidx == 4:
            bidx = 0
            bpan += 4 * sdb


def kgemm_nt(int k, double alpha, double[::1] A, Py_ssize_t ao, Py_ssize_t sda,
             double[::1] B, Py_ssize_t bo, Py_ssize_t sdb, double beta,
             double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
             double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
             int mr, int ms, int ns):
    cdef double acc[32]
    cdef int t
    for t in range(4 * mr):
        acc[t] = 0.0
    _acc_nt(k, acc, A, ao, sda, B, bo, sdb, mr, 1.0)
    _store_block(alpha, acc, beta, C, co, cair, sdc, D, do_, dair, sdd, mr, ms, ns)


def kgemm_nn(int k, double alpha, double[::1] A, Py_ssize_t ao, Py_ssize_t sda,
             double[::1] B, Py_ssize_t bo, Py_ssize_t bair, Py_ssize_t sdb,
             double beta,
             double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
             double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
             int mr, int ms, int ns):
    cdef double acc[32]
    cdef int t
    for t in range(4 * mr):
        acc[t] = 0.0
    _acc_nn(k, acc, A, ao, sda, B, bo, bair, sdb, mr, ns, 1.0)
    _store_block(alpha, acc, beta, C, co, cair, sdc, D, do_, dair, sdd, mr, ms, ns)


cdef void _ksyrk_core(int k, double alpha, double[::1] A, Py_ssize_t ao, Py_ssize_t sda,
                      double[::1] B, Py_ssize_t bo, Py_ssize_t sdb, double beta,
                      double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
                      double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
                      int mr, int ms, int ns, int shift) noexcept:
    cdef double acc[32]
    cdef int t, i, j
    cdef double v
    for t in range(4 * mr):
        acc[t] = 0.0
    _acc_nt(k, acc, A, ao, sda, B, bo, sdb, mr, 1.0)
    for j in range(ns):
        for i in range(ms):
            if i < j + shift:
                continue
            v = beta * C[_bidx(co, cair, sdc, i, j)] if beta != 0.0 else 0.0
            if alpha != 0.0:
                v = alpha * acc[j * mr + i] + v
            D[_bidx(do_, dair, sdd, i, j)] = v


def ksyrk_ln(int k, double alpha, double[::1] A, Py_ssize_t ao, Py_ssize_t sda,
             double[::1] B, Py_ssize_t bo, Py_ssize_t sdb, double beta,
             double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
             double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
             int mr, int ms, int ns, int shift):
    _ksyrk_core(k, alpha, A, ao, sda, B, bo, sdb, beta, C, co, cair, sdc,
                D, do_, dair, sdd, mr, ms, ns, shift)


cdef void _ktrmm_core(int k, double alpha, double[::1] X, Py_ssize_t xo, Py_ssize_t sdx,
                      double[::1] T, Py_ssize_t to, Py_ssize_t tair, Py_ssize_t sdt,
                      double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
                      int mr, int ms, int ns) noexcept:
    cdef double acc[32]
    cdef double xv[8]
    cdef double tv
    cdef Py_ssize_t l, xb, tpan, tidx, x2
    cdef int t, i, j, head
    for t in range(4 * mr):
        acc[t] = 0.0
    tpan = to
    tidx = tair
    x2 = 4 * sdx
    # triangle head: only T(l, j) with l >= j participates
    head = min(4, k)
    for l in range(head):
        xb = xo + 4 * l
        xv[0] = X[xb]
        xv[1] = X[xb + 1]
        xv[2] = X[xb + 2]
        xv[3] = X[xb + 3]
        if mr == 8:
            xv[4] = X[xb + x2]
            xv[5] = X[xb + x2 + 1]
            xv[6] = X[xb + x2 + 2]
            xv[7] = X[xb + x2 + 3]
        for j in range(4):
            if j < ns and l >= j:
                tv = T[tpan + 4 * j + tidx]
            else:
                tv = 0.0
            for i in range(mr):
                acc[j * mr + i] += xv[i] * tv
        tidx += 1
        if tidx == 4:
            tidx = 0
            tpan += 4 * sdt
    # past the diagonal block the factor is read like a full gemm stream
    if k > 4:
        _acc_nn(k - 4, acc, X, xo + 16, sdx, T, tpan, tidx, sdt, mr, ns, 1.0)
    for j in range(ns):
        for i in range(ms):
            D[_bidx(do_, dair, sdd, i, j)] = alpha * acc[j * mr + i]


def ktrmm_rlnn(int k, double alpha, double[::1] X, Py_ssize_t xo, Py_ssize_t sdx,
               double[::1] T, Py_ssize_t to, Py_ssize_t tair, Py_ssize_t sdt,
               double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
               int mr, int ms, int ns):
    _ktrmm_core(k, alpha, X, xo, sdx, T, to, tair, sdt, D, do_, dair, sdd, mr, ms, ns)


cdef void _trsm_rltn_core(int kp, double[::1] Ap, Py_ssize_t apo, Py_ssize_t sdap,
                          double[::1] Bp, Py_ssize_t bpo, Py_ssize_t sdbp,
                          int km, double[::1] Am, Py_ssize_t amo, Py_ssize_t sdam,
                          double[::1] Bm, Py_ssize_t bmo, Py_ssize_t sdbm,
                          double alpha,
                          double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
                          double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
                          double[::1] E, Py_ssize_t eo, Py_ssize_t sde,
                          double[::1] dinv, Py_ssize_t dio, bint unit,
                          int mr, int ms, int ns) noexcept:
    cdef double acc[32]
    cdef int t, i, j
    cdef Py_ssize_t tt
    cdef double e, inv
    for t in range(4 * mr):
        acc[t] = 0.0
    _acc_nt(kp, acc, Ap, apo, sdap, Bp, bpo, sdbp, mr, 1.0)
    _acc_nt(km, acc, Am, amo, sdam, Bm, bmo, sdbm, mr, -1.0)
    for j in range(ns):
        for i in range(ms):
            acc[j * mr + i] += alpha * C[_bidx(co, cair, sdc, i, j)]
        for tt in range(j):
            e = E[eo + 4 * tt + j]
            for i in range(ms):
                acc[j * mr + i] -= acc[tt * mr + i] * e
        if not unit:
            inv = dinv[dio + j]
            for i in range(ms):
                acc[j * mr + i] *= inv
        for i in range(ms):
            D[_bidx(do_, dair, sdd, i, j)] = acc[j * mr + i]


def ktrsm_rltn(int kp, double[::1] Ap, Py_ssize_t apo, Py_ssize_t sdap,
               double[::1] Bp, Py_ssize_t bpo, Py_ssize_t sdbp,
               int km, double[::1] Am, Py_ssize_t amo, Py_ssize_t sdam,
               double[::1] Bm, Py_ssize_t bmo, Py_ssize_t sdbm, double alpha,
               double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
               double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
               double[::1] E, Py_ssize_t eo, Py_ssize_t sde,
               double[::1] dinv, Py_ssize_t dio, bint unit, int mr, int ms, int ns):
    _trsm_rltn_core(kp, Ap, apo, sdap, Bp, bpo, sdbp, km, Am, amo, sdam,
                    Bm, bmo, sdbm, alpha, C, co, cair, sdc, D, do_, dair, sdd,
                    E, eo, sde, dinv, dio, unit, mr, ms, ns)


cdef int _kpotrf_core(int kp, double[::1] Ap, Py_ssize_t apo, Py_ssize_t sdap,
                      double[::1] Bp, Py_ssize_t bpo, Py_ssize_t sdbp,
                      int km, double[::1] Am, Py_ssize_t amo, Py_ssize_t sdam,
                      double[::1] Bm, Py_ssize_t bmo, Py_ssize_t sdbm,
                      double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
                      double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
                      double[::1] dinv, Py_ssize_t dio, int mr, int ms, int ns) noexcept:
    cdef double acc[32]
    cdef int t, i, j, c
    cdef double d, ljj, inv, lcj
    for t in range(4 * mr):
        acc[t] = 0.0
    _acc_nt(kp, acc, Ap, apo, sdap, Bp, bpo, sdbp, mr, 1.0)
    _acc_nt(km, acc, Am, amo, sdam, Bm, bmo, sdbm, mr, -1.0)
    for j in range(ns):
        for i in range(ms):
            acc[j * mr + i] += C[_bidx(co, cair, sdc, i, j)]
    for j in range(ns):
        d = acc[j * mr + j]
        if d <= 0.0:
            return j
        ljj = sqrt(d)
        inv = 1.0 / ljj
        acc[j * mr + j] = ljj
        dinv[dio + j] = inv
        for i in range(j + 1, ms):
            acc[j * mr + i] *= inv
        for c in range(j + 1, ns):
            lcj = acc[j * mr + c]
            for i in range(c, ms):
                acc[c * mr + i] -= acc[j * mr + i] * lcj
    for j in range(ns):
        for i in range(j, ms):
            D[_bidx(do_, dair, sdd, i, j)] = acc[j * mr + i]
    return -1


def kpotrf(int kp, double[::1] Ap, Py_ssize_t apo, Py_ssize_t sdap,
           double[::1] Bp, Py_ssize_t bpo, Py_ssize_t sdbp,
           int km, double[::1] Am, Py_ssize_t amo, Py_ssize_t sdam,
           double[::1] Bm, Py_ssize_t bmo, Py_ssize_t sdbm,
           double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
           double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
           double[::1] dinv, Py_ssize_t dio, int mr, int ms, int ns):
    return _kpotrf_core(kp, Ap, apo, sdap, Bp, bpo, sdbp, km, Am, amo, sdam,
                        Bm, bmo, sdbm, C, co, cair, sdc, D, do_, dair, sdd,
                        dinv, dio, mr, ms, ns)


cdef void _ktrsm_llnu_core(int km, double[::1] Am, Py_ssize_t amo, Py_ssize_t sdam,
                           double[::1] Bm, Py_ssize_t bmo, Py_ssize_t bmair, Py_ssize_t sdbm,
                           double alpha,
                           double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
                           double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
                           double[::1] E, Py_ssize_t eo, Py_ssize_t sde,
                           int ms, int ns) noexcept:
    cdef double acc[16]
    cdef int t, i, j
    cdef Py_ssize_t tt
    cdef double x
    for t in range(16):
        acc[t] = 0.0
    _acc_nn(km, acc, Am, amo, sdam, Bm, bmo, bmair, sdbm, 4, ns, -1.0)
    for j in range(ns):
        for i in range(ms):
            acc[j * 4 + i] += alpha * C[_bidx(co, cair, sdc, i, j)]
        for i in range(ms):
            x = acc[j * 4 + i]
            for tt in range(i + 1, ms):
                acc[j * 4 + tt] -= E[eo + 4 * i + tt] * x
        for i in range(ms):
            D[_bidx(do_, dair, sdd, i, j)] = acc[j * 4 + i]


def ktrsm_llnu(int km, double[::1] Am, Py_ssize_t amo, Py_ssize_t sdam,
               double[::1] Bm, Py_ssize_t bmo, Py_ssize_t bmair, Py_ssize_t sdbm,
               double alpha,
               double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
               double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
               double[::1] E, Py_ssize_t eo, Py_ssize_t sde, int ms, int ns):
    _ktrsm_llnu_core(km, Am, amo, sdam, Bm, bmo, bmair, sdbm, alpha,
                     C, co, cair, sdc, D, do_, dair, sdd, E, eo, sde, ms, ns)


def lu_rowsolve_drv(int jb, int width, double[::1] D,
                    Py_ssize_t di, Py_ssize_t djl, Py_ssize_t djr, Py_ssize_t sdd):
    # in-place unit-lower solve of one LU panel's row block against the
    # columns right of it; di is the (aligned) panel row, djl the panel's
    # diagonal column, djr the first trailing column
    cdef Py_ssize_t eo = _eo(di, djl, sdd)
    cdef int jj, ns
    cdef Py_ssize_t off
    for jj in range(0, width, 4):
        ns = min(4, width - jj)
        off = _eo(di, djr + jj, sdd)
        _ktrsm_llnu_core(0, D, 0, sdd, D, 0, 0, sdd, 1.0,
                         D, off, 0, sdd, D, off, 0, sdd,
                         D, eo, sdd, jb, ns)


def ktrsm_lunn(int km, double[::1] Am, Py_ssize_t amo, Py_ssize_t sdam,
               double[::1] Bm, Py_ssize_t bmo, Py_ssize_t bmair, Py_ssize_t sdbm,
               double alpha,
               double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
               double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
               double[::1] E, Py_ssize_t eo, Py_ssize_t sde,
               double[::1] dinv, Py_ssize_t dio, int ms, int ns):
    cdef double acc[16]
    cdef int t, i, j
    cdef Py_ssize_t tt
    cdef double x
    for t in range(16):
        acc[t] = 0.0
    _acc_nn(km, acc, Am, amo, sdam, Bm, bmo, bmair, sdbm, 4, ns, -1.0)
    for j in range(ns):
        for i in range(ms):
            acc[j * 4 + i] += alpha * C[_bidx(co, cair, sdc, i, j)]
        for i in range(ms - 1, -1, -1):
            x = acc[j * 4 + i]
            for tt in range(i + 1, ms):
                x -= E[eo + 4 * tt + i] * acc[j * 4 + tt]
            acc[j * 4 + i] = x * dinv[dio + i]
        for i in range(ms):
            D[_bidx(do_, dair, sdd, i, j)] = acc[j * 4 + i]


def ktrsm_rutn(int km, double[::1] Am, Py_ssize_t amo, Py_ssize_t sdam,
               double[::1] Bm, Py_ssize_t bmo, Py_ssize_t sdbm, double alpha,
               double[::1] C, Py_ssize_t co, Py_ssize_t cair, Py_ssize_t sdc,
               double[::1] D, Py_ssize_t do_, Py_ssize_t dair, Py_ssize_t sdd,
               double[::1] E, Py_ssize_t eo, Py_ssize_t sde,
               double[::1] dinv, Py_ssize_t dio, int ms, int ns):
    cdef double acc[16]
    cdef int t, i, j
    cdef Py_ssize_t tt
    cdef double e, inv
    for t in range(16):
        acc[t] = 0.0
    _acc_nt(km, acc, Am, amo, sdam, Bm, bmo, sdbm, 4, -1.0)
    for j in range(ns):
        for i in range(ms):
            acc[j * 4 + i] += alpha * C[_bidx(co, cair, sdc, i, j)]
    for j in range(ns - 1, -1, -1):
        for tt in range(j + 1, ns):
            e = E[eo + 4 * tt + j]
            for i in range(ms):
                acc[j * 4 + i] -= acc[tt * 4 + i] * e
        inv = dinv[dio + j]
        for i in range(ms):
            acc[j * 4 + i] *= inv
    for j in range(ns):
        for i in range(ms):
            D[_bidx(do_, dair, sdd, i, j)] = acc[j * 4 + i]


# ---------------------------------------------------------------------------
# panel-level factorization helpers


def kgetrf_panel(double[::1] D, Py_ssize_t base, Py_ssize_t sdd,
                 int mrows, int jb, bint pivot,
                 long[::1] ipiv, Py_ssize_t ipo,
                 double[::1] dinv, Py_ssize_t dio):
    cdef int c, r, cc, best, air
    cdef double bv, v, u, inv, ucc, tmp
    cdef Py_ssize_t i1, i2, off, offc, hop
    hop = 4 * sdd - 3  # step from a panel's last row to the next panel's first
    for c in range(jb):
        if pivot:
            best = c
            bv = fabs(D[_pidx(base, sdd, c, c)])
            off = _pidx(base, sdd, c + 1, c)
            air = (c + 1) & 3
            for r in range(c + 1, mrows):
                v = fabs(D[off])
                if v > bv:
                    bv = v
                    best = r
                off += hop if air == 3 else 1
                air = (air + 1) & 3
            if bv == 0.0:
                return c
            ipiv[ipo + c] = best
            if best != c:
                for cc in range(jb):
                    i1 = _pidx(base, sdd, c, cc)
                    i2 = _pidx(base, sdd, best, cc)
                    tmp = D[i1]
                    D[i1] = D[i2]
                    D[i2] = tmp
        else:
            if D[_pidx(base, sdd, c, c)] == 0.0:
                return c
        u = D[_pidx(base, sdd, c, c)]
        inv = 1.0 / u
        dinv[dio + c] = inv
        off = _pidx(base, sdd, c + 1, c)
        air = (c + 1) & 3
        for r in range(c + 1, mrows):
            D[off] *= inv
            off += hop if air == 3 else 1
            air = (air + 1) & 3
        for cc in range(c + 1, jb):
            ucc = D[_pidx(base, sdd, c, cc)]
            if ucc != 0.0:
                off = _pidx(base, sdd, c + 1, c)
                offc = _pidx(base, sdd, c + 1, cc)
                air = (c + 1) & 3
                for r in range(c + 1, mrows):
                    D[offc] -= D[off] * ucc
                    if air == 3:
                        off += hop
                        offc += hop
                    else:
                        off += 1
                        offc += 1
                    air = (air + 1) & 3
    return -1


cdef inline Py_ssize_t _pidx(Py_ssize_t base, Py_ssize_t sdd,
                             Py_ssize_t r, Py_ssize_t c) noexcept:
    return base + (r >> 2) * 4 * sdd + 4 * c + (r & 3)


def klq_panel(double[::1] D, Py_ssize_t base, Py_ssize_t sdd,
              int jb, int ncols, double[::1] tau, Py_ssize_t tauo):
    cdef int r, c, i
    cdef double alpha, nx2, v, beta, t, scale, w
    cdef Py_ssize_t doff
    for r in range(jb):
        doff = base + 4 * r + r
        alpha = D[doff]
        nx2 = 0.0
        for c in range(r + 1, ncols):
            v = D[base + 4 * c + r]
            nx2 += v * v
        if nx2 == 0.0:
            tau[tauo + r] = 0.0
            continue
        beta = -copysign(sqrt(alpha * alpha + nx2), alpha)
        t = (beta - alpha) / beta
        tau[tauo + r] = t
        scale = 1.0 / (alpha - beta)
        for c in range(r + 1, ncols):
            D[base + 4 * c + r] *= scale
        D[doff] = beta
        for i in range(r + 1, jb):
            w = D[base + 4 * r + i]
            for c in range(r + 1, ncols):
                w += D[base + 4 * c + i] * D[base + 4 * c + r]
            w *= t
            D[base + 4 * r + i] -= w
            for c in range(r + 1, ncols):
                D[base + 4 * c + i] -= w * D[base + 4 * c + r]


def krowswap(Py_ssize_t n, double[::1] A, Py_ssize_t o1,
             double[::1] B, Py_ssize_t o2):
    cdef Py_ssize_t j, i1, i2
    cdef double t
    for j in range(n):
        i1 = o1 + 4 * j
        i2 = o2 + 4 * j
        t = A[i1]
        A[i1] = B[i2]
        B[i2] = t


# ---------------------------------------------------------------------------
# elementwise window helpers


def kgecp(Py_ssize_t m, Py_ssize_t n, double[::1] S, Py_ssize_t si, Py_ssize_t sj,
          Py_ssize_t sds, double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd):
    cdef Py_ssize_t i, j
    for j in range(n):
        for i in range(m):
            D[_eo(di + i, dj + j, sdd)] = S[_eo(si + i, sj + j, sds)]


def kgetr(Py_ssize_t m, Py_ssize_t n, double[::1] S, Py_ssize_t si, Py_ssize_t sj,
          Py_ssize_t sds, double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd):
    cdef Py_ssize_t i, j
    for j in range(n):
        for i in range(m):
            D[_eo(di + j, dj + i, sdd)] = S[_eo(si + i, sj + j, sds)]


def kgead(Py_ssize_t m, Py_ssize_t n, double alpha, double[::1] S, Py_ssize_t si,
          Py_ssize_t sj, Py_ssize_t sds, double[::1] D, Py_ssize_t di, Py_ssize_t dj,
          Py_ssize_t sdd):
    cdef Py_ssize_t i, j
    for j in range(n):
        for i in range(m):
            D[_eo(di + i, dj + j, sdd)] += alpha * S[_eo(si + i, sj + j, sds)]


def kgesc(Py_ssize_t m, Py_ssize_t n, double alpha, double[::1] A, Py_ssize_t ai,
          Py_ssize_t aj, Py_ssize_t sda):
    cdef Py_ssize_t i, j
    for j in range(n):
        for i in range(m):
            A[_eo(ai + i, aj + j, sda)] *= alpha


def kgese(Py_ssize_t m, Py_ssize_t n, double alpha, double[::1] A, Py_ssize_t ai,
          Py_ssize_t aj, Py_ssize_t sda):
    cdef Py_ssize_t i, j
    for j in range(n):
        for i in range(m):
            A[_eo(ai + i, aj + j, sda)] = alpha


def kpack_cm(Py_ssize_t m, Py_ssize_t n, double[::1] S, Py_ssize_t so, Py_ssize_t lds,
             double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd):
    cdef Py_ssize_t i, j
    for j in range(n):
        for i in range(m):
            D[_eo(di + i, dj + j, sdd)] = S[so + i + j * lds]


def kpack_cm_tr(Py_ssize_t m, Py_ssize_t n, double[::1] S, Py_ssize_t so, Py_ssize_t lds,
                double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd):
    cdef Py_ssize_t i, j
    for j in range(n):
        for i in range(m):
            D[_eo(di + j, dj + i, sdd)] = S[so + i + j * lds]


def kunpack_cm(Py_ssize_t m, Py_ssize_t n, double[::1] S, Py_ssize_t si, Py_ssize_t sj,
               Py_ssize_t sds, double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef Py_ssize_t i, j
    for j in range(n):
        for i in range(m):
            D[do_ + i + j * ldd] = S[_eo(si + i, sj + j, sds)]


# ---------------------------------------------------------------------------
# routine-level drivers


def gemm_nt_drv(int m, int n, int k, double alpha,
                double[::1] A, Py_ssize_t ai, Py_ssize_t aj, Py_ssize_t sda,
                double[::1] B, Py_ssize_t bi, Py_ssize_t bj, Py_ssize_t sdb,
                double beta,
                double[::1] C, Py_ssize_t ci, Py_ssize_t cj, Py_ssize_t sdc,
                double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd):
    cdef Py_ssize_t cair = ci & 3
    cdef Py_ssize_t dair = di & 3
    cdef int ii, jj, mr, ms, ns, left
    cdef Py_ssize_t ao
    cdef double acc[32]
    cdef int t
    ii = 0
    while ii < m:
        left = m - ii
        mr = 8 if left > 4 else 4
        ms = left if left < mr else mr
        ao = _eo(ai + ii, aj, sda)
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            for t in range(4 * mr):
                acc[t] = 0.0
            _acc_nt(k, acc, A, ao, sda, B, _eo(bi + jj, bj, sdb), sdb, mr, 1.0)
            _store_block(alpha, acc, beta, C, _eo(ci + ii, cj + jj, sdc), cair, sdc,
                         D, _eo(di + ii, dj + jj, sdd), dair, sdd, mr, ms, ns)
        ii += mr


def gemm_nn_drv(int m, int n, int k, double alpha,
                double[::1] A, Py_ssize_t ai, Py_ssize_t aj, Py_ssize_t sda,
                double[::1] B, Py_ssize_t bi, Py_ssize_t bj, Py_ssize_t sdb,
                double beta,
                double[::1] C, Py_ssize_t ci, Py_ssize_t cj, Py_ssize_t sdc,
                double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd):
    cdef Py_ssize_t cair = ci & 3
    cdef Py_ssize_t dair = di & 3
    cdef Py_ssize_t bair = bi & 3
    cdef int ii, jj, mr, ms, ns, left
    cdef Py_ssize_t ao
    cdef double acc[32]
    cdef int t
    ii = 0
    while ii < m:
        left = m - ii
        mr = 8 if left > 4 else 4
        ms = left if left < mr else mr
        ao = _eo(ai + ii, aj, sda)
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            for t in range(4 * mr):
                acc[t] = 0.0
            _acc_nn(k, acc, A, ao, sda, B, _eo(bi - bair, bj + jj, sdb), bair, sdb,
                    mr, ns, 1.0)
            _store_block(alpha, acc, beta, C, _eo(ci + ii, cj + jj, sdc), cair, sdc,
                         D, _eo(di + ii, dj + jj, sdd), dair, sdd, mr, ms, ns)
        ii += mr


def syrk_ln_drv(int m, int k, double alpha,
                double[::1] A, Py_ssize_t ai, Py_ssize_t aj, Py_ssize_t sda,
                double[::1] B, Py_ssize_t bi, Py_ssize_t bj, Py_ssize_t sdb,
                double beta,
                double[::1] C, Py_ssize_t ci, Py_ssize_t cj, Py_ssize_t sdc,
                double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd):
    cdef Py_ssize_t cair = ci & 3
    cdef Py_ssize_t dair = di & 3
    cdef int ii, jj, ms, ns
    cdef Py_ssize_t ao, bo
    cdef double acc[32]
    cdef int t
    for ii in range(0, m, 4):
        ms = min(4, m - ii)
        ao = _eo(ai + ii, aj, sda)
        for jj in range(0, ii + 1, 4):
            ns = min(4, m - jj)
            bo = _eo(bi + jj, bj, sdb)
            if jj == ii:
                _ksyrk_core(k, alpha, A, ao, sda, B, bo, sdb, beta,
                            C, _eo(ci + ii, cj + jj, sdc), cair, sdc,
                            D, _eo(di + ii, dj + jj, sdd), dair, sdd, 4, ms, ns, 0)
            else:
                for t in range(16):
                    acc[t] = 0.0
                _acc_nt(k, acc, A, ao, sda, B, bo, sdb, 4, 1.0)
                _store_block(alpha, acc, beta, C, _eo(ci + ii, cj + jj, sdc), cair, sdc,
                             D, _eo(di + ii, dj + jj, sdd), dair, sdd, 4, ms, ns)


def trmm_rlnn_drv(int m, int n, double alpha,
                  double[::1] X, Py_ssize_t xi, Py_ssize_t xj, Py_ssize_t sdx,
                  double[::1] T, Py_ssize_t ti, Py_ssize_t tj, Py_ssize_t sdt,
                  double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd):
    cdef Py_ssize_t dair = di & 3
    cdef int ii, jj, mr, ms, ns, left
    cdef Py_ssize_t tair
    ii = 0
    while ii < m:
        left = m - ii
        mr = 8 if left > 4 else 4
        ms = left if left < mr else mr
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            tair = (ti + jj) & 3
            _ktrmm_core(n - jj, alpha, X, _eo(xi + ii, xj + jj, sdx), sdx,
                        T, _eo(ti + jj - tair, tj + jj, sdt), tair, sdt,
                        D, _eo(di + ii, dj + jj, sdd), dair, sdd, mr, ms, ns)
        ii += mr


def trsm_rltn_drv(int m, int n, double alpha,
                  double[::1] A, Py_ssize_t ai, Py_ssize_t aj, Py_ssize_t sda,
                  bint unit,
                  double[::1] B, Py_ssize_t bi, Py_ssize_t bj, Py_ssize_t sdb,
                  double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd,
                  double[::1] dinv, Py_ssize_t dio):
    cdef Py_ssize_t cair = bi & 3
    cdef int ii, jj, ms, ns
    cdef Py_ssize_t amo
    for ii in range(0, m, 4):
        ms = min(4, m - ii)
        amo = _eo(di + ii, dj, sdd)
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            _trsm_rltn_core(0, A, 0, sda, A, 0, sda,
                            jj, D, amo, sdd, A, _eo(ai + jj, aj, sda), sda, alpha,
                            B, _eo(bi + ii, bj + jj, sdb), cair, sdb,
                            D, _eo(di + ii, dj + jj, sdd), 0, sdd,
                            A, _eo(ai + jj, aj + jj, sda), sda,
                            dinv, dio + jj, unit, 4, ms, ns)


def potrf_drv(int m, int n,
              double[::1] C, Py_ssize_t ci, Py_ssize_t cj, Py_ssize_t sdc,
              double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd,
              double[::1] dinv, Py_ssize_t dio):
    cdef Py_ssize_t cair = ci & 3
    cdef int ii, jj, ms, ns, jmax, st
    cdef Py_ssize_t amo, co, do_, bmo
    for ii in range(0, m, 4):
        ms = min(4, m - ii)
        amo = _eo(di + ii, dj, sdd)
        jmax = min(ii + 4, n)
        for jj in range(0, jmax, 4):
            ns = min(4, n - jj)
            co = _eo(ci + ii, cj + jj, sdc)
            do_ = _eo(di + ii, dj + jj, sdd)
            bmo = _eo(di + jj, dj, sdd)
            if jj == ii:
                st = _kpotrf_core(0, D, 0, sdd, D, 0, sdd, jj, D, amo, sdd, D, bmo, sdd,
                                  C, co, cair, sdc, D, do_, 0, sdd,
                                  dinv, dio + jj, 4, ms, ns)
                if st >= 0:
                    return jj + st
            elif jj < ii:
                _trsm_rltn_core(0, D, 0, sdd, D, 0, sdd,
                                jj, D, amo, sdd, D, bmo, sdd, 1.0,
                                C, co, cair, sdc, D, do_, 0, sdd,
                                D, _eo(di + jj, dj + jj, sdd), sdd,
                                dinv, dio + jj, False, 4, ms, ns)
    return -1


def syrk_potrf_drv(int m, int n, int k,
                   double[::1] A, Py_ssize_t ai, Py_ssize_t aj, Py_ssize_t sda,
                   double[::1] B, Py_ssize_t bi, Py_ssize_t bj, Py_ssize_t sdb,
                   double[::1] C, Py_ssize_t ci, Py_ssize_t cj, Py_ssize_t sdc,
                   double[::1] D, Py_ssize_t di, Py_ssize_t dj, Py_ssize_t sdd,
                   double[::1] dinv, Py_ssize_t dio):
    cdef Py_ssize_t cair = ci & 3
    cdef int ii, jj, ms, ns, jmax, st
    cdef Py_ssize_t apo, amo, co, do_, bpo, bmo
    for ii in range(0, m, 4):
        ms = min(4, m - ii)
        apo = _eo(ai + ii, aj, sda)
        amo = _eo(di + ii, dj, sdd)
        jmax = min(ii + 4, n)
        for jj in range(0, jmax, 4):
            ns = min(4, n - jj)
            co = _eo(ci + ii, cj + jj, sdc)
            do_ = _eo(di + ii, dj + jj, sdd)
            bpo = _eo(bi + jj, bj, sdb)
            bmo = _eo(di + jj, dj, sdd)
            if jj == ii:
                st = _kpotrf_core(k, A, apo, sda, B, bpo, sdb,
                                  jj, D, amo, sdd, D, bmo, sdd,
                                  C, co, cair, sdc, D, do_, 0, sdd,
                                  dinv, dio + jj, 4, ms, ns)
                if st >= 0:
                    return jj + st
            elif jj < ii:
                _trsm_rltn_core(k, A, apo, sda, B, bpo, sdb,
                                jj, D, amo, sdd, D, bmo, sdd, 1.0,
                                C, co, cair, sdc, D, do_, 0, sdd,
                                D, _eo(di + jj, dj + jj, sdd), sdd,
                                dinv, dio + jj, False, 4, ms, ns)
    return -1


# ---------------------------------------------------------------------------
# column-major reference implementation (2x2 register blocking)


cdef inline void _rf_put(double alpha, double acc, double beta,
                         double[::1] C, Py_ssize_t coff,
                         double[::1] D, Py_ssize_t doff) noexcept:
    cdef double v
    if alpha != 0.0:
        v = alpha * acc
        if beta != 0.0:
            v += beta * C[coff]
    elif beta != 0.0:
        v = beta * C[coff]
    else:
        v = 0.0
    D[doff] = v


def rf_gemm_nt_drv(int m, int n, int k, double alpha,
                   double[::1] A, Py_ssize_t ao, Py_ssize_t lda,
                   double[::1] B, Py_ssize_t bo, Py_ssize_t ldb, double beta,
                   double[::1] C, Py_ssize_t co, Py_ssize_t ldc,
                   double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef int i, j, jc, l
    cdef double c00, c10, c01, c11, a0, a1, b0, b1, s
    j = 0
    while j < n - 1:
        i = 0
        while i < m - 1:
            c00 = 0.0
            c10 = 0.0
            c01 = 0.0
            c11 = 0.0
            for l in range(k):
                a0 = A[ao + i + l * lda]
                a1 = A[ao + i + 1 + l * lda]
                b0 = B[bo + j + l * ldb]
                b1 = B[bo + j + 1 + l * ldb]
                c00 += a0 * b0
                c10 += a1 * b0
                c01 += a0 * b1
                c11 += a1 * b1
            _rf_put(alpha, c00, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)
            _rf_put(alpha, c10, beta, C, co + i + 1 + j * ldc, D, do_ + i + 1 + j * ldd)
            _rf_put(alpha, c01, beta, C, co + i + (j + 1) * ldc, D, do_ + i + (j + 1) * ldd)
            _rf_put(alpha, c11, beta, C, co + i + 1 + (j + 1) * ldc, D, do_ + i + 1 + (j + 1) * ldd)
            i += 2
        if i < m:
            for jc in range(j, j + 2):
                s = 0.0
                for l in range(k):
                    s += A[ao + i + l * lda] * B[bo + jc + l * ldb]
                _rf_put(alpha, s, beta, C, co + i + jc * ldc, D, do_ + i + jc * ldd)
        j += 2
    if j < n:
        for i in range(m):
            s = 0.0
            for l in range(k):
                s += A[ao + i + l * lda] * B[bo + j + l * ldb]
            _rf_put(alpha, s, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)


def rf_gemm_nn_drv(int m, int n, int k, double alpha,
                   double[::1] A, Py_ssize_t ao, Py_ssize_t lda,
                   double[::1] B, Py_ssize_t bo, Py_ssize_t ldb, double beta,
                   double[::1] C, Py_ssize_t co, Py_ssize_t ldc,
                   double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef int i, j, jc, l
    cdef double c00, c10, c01, c11, a0, a1, b0, b1, s
    j = 0
    while j < n - 1:
        i = 0
        while i < m - 1:
            c00 = 0.0
            c10 = 0.0
            c01 = 0.0
            c11 = 0.0
            for l in range(k):
                a0 = A[ao + i + l * lda]
                a1 = A[ao + i + 1 + l * lda]
                b0 = B[bo + l + j * ldb]
                b1 = B[bo + l + (j + 1) * ldb]
                c00 += a0 * b0
                c10 += a1 * b0
                c01 += a0 * b1
                c11 += a1 * b1
            _rf_put(alpha, c00, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)
            _rf_put(alpha, c10, beta, C, co + i + 1 + j * ldc, D, do_ + i + 1 + j * ldd)
            _rf_put(alpha, c01, beta, C, co + i + (j + 1) * ldc, D, do_ + i + (j + 1) * ldd)
            _rf_put(alpha, c11, beta, C, co + i + 1 + (j + 1) * ldc, D, do_ + i + 1 + (j + 1) * ldd)
            i += 2
        if i < m:
            for jc in range(j, j + 2):
                s = 0.0
                for l in range(k):
                    s += A[ao + i + l * lda] * B[bo + l + jc * ldb]
                _rf_put(alpha, s, beta, C, co + i + jc * ldc, D, do_ + i + jc * ldd)
        j += 2
    if j < n:
        for i in range(m):
            s = 0.0
            for l in range(k):
                s += A[ao + i + l * lda] * B[bo + l + j * ldb]
            _rf_put(alpha, s, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)


def rf_potrf_drv(int m, double[::1] C, Py_ssize_t co, Py_ssize_t ldc,
                 double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef int i, j, l, ib, jb, r
    cdef double c00, c10, c01, c11, a0, a1, b0, b1, d, ljj, inv, l10, l11, inv1
    j = 0
    while j < m:
        jb = 2 if m - j > 1 else 1
        i = j
        while i < m:
            ib = 2 if m - i > 1 else 1
            c00 = 0.0
            c10 = 0.0
            c01 = 0.0
            c11 = 0.0
            for l in range(j):
                a0 = D[do_ + i + l * ldd]
                a1 = D[do_ + i + 1 + l * ldd] if ib == 2 else 0.0
                b0 = D[do_ + j + l * ldd]
                b1 = D[do_ + j + 1 + l * ldd] if jb == 2 else 0.0
                c00 += a0 * b0
                c10 += a1 * b0
                c01 += a0 * b1
                c11 += a1 * b1
            D[do_ + i + j * ldd] = C[co + i + j * ldc] - c00
            if ib == 2:
                D[do_ + i + 1 + j * ldd] = C[co + i + 1 + j * ldc] - c10
            if jb == 2 and i >= j + 1:
                D[do_ + i + (j + 1) * ldd] = C[co + i + (j + 1) * ldc] - c01
            if jb == 2 and ib == 2:
                D[do_ + i + 1 + (j + 1) * ldd] = C[co + i + 1 + (j + 1) * ldc] - c11
            i += ib
        d = D[do_ + j + j * ldd]
        if d <= 0.0:
            return j
        ljj = sqrt(d)
        inv = 1.0 / ljj
        D[do_ + j + j * ldd] = ljj
        for r in range(j + 1, m):
            D[do_ + r + j * ldd] *= inv
        if jb == 2:
            l10 = D[do_ + j + 1 + j * ldd]
            d = D[do_ + j + 1 + (j + 1) * ldd] - l10 * l10
            if d <= 0.0:
                return j + 1
            l11 = sqrt(d)
            inv1 = 1.0 / l11
            D[do_ + j + 1 + (j + 1) * ldd] = l11
            for r in range(j + 2, m):
                D[do_ + r + (j + 1) * ldd] = (D[do_ + r + (j + 1) * ldd]
                                              - D[do_ + r + j * ldd] * l10) * inv1
        j += jb
    return -1


# ---------------------------------------------------------------------------
# naive column-major oracles


def o_gemm_nt(int m, int n, int k, double alpha,
              double[::1] A, Py_ssize_t ao, Py_ssize_t lda,
              double[::1] B, Py_ssize_t bo, Py_ssize_t ldb, double beta,
              double[::1] C, Py_ssize_t co, Py_ssize_t ldc,
              double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef int i, j, l
    cdef double s
    for j in range(n):
        for i in range(m):
            s = 0.0
            for l in range(k):
                s += A[ao + i + l * lda] * B[bo + j + l * ldb]
            _rf_put(alpha, s, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)


def o_gemm_nn(int m, int n, int k, double alpha,
              double[::1] A, Py_ssize_t ao, Py_ssize_t lda,
              double[::1] B, Py_ssize_t bo, Py_ssize_t ldb, double beta,
              double[::1] C, Py_ssize_t co, Py_ssize_t ldc,
              double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef int i, j, l
    cdef double s
    for j in range(n):
        for i in range(m):
            s = 0.0
            for l in range(k):
                s += A[ao + i + l * lda] * B[bo + l + j * ldb]
            _rf_put(alpha, s, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)


def o_syrk_ln(int m, int k, double alpha,
              double[::1] A, Py_ssize_t ao, Py_ssize_t lda,
              double[::1] B, Py_ssize_t bo, Py_ssize_t ldb, double beta,
              double[::1] C, Py_ssize_t co, Py_ssize_t ldc,
              double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef int i, j, l
    cdef double s
    for j in range(m):
        for i in range(j, m):
            s = 0.0
            for l in range(k):
                s += A[ao + i + l * lda] * B[bo + j + l * ldb]
            _rf_put(alpha, s, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)


def o_trmm_rlnn(int m, int n, double alpha,
                double[::1] A, Py_ssize_t ao, Py_ssize_t lda,
                double[::1] B, Py_ssize_t bo, Py_ssize_t ldb,
                double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef int i, j, l
    cdef double s
    for j in range(n):
        for i in range(m):
            s = 0.0
            for l in range(j, n):
                s += B[bo + i + l * ldb] * A[ao + l + j * lda]
            D[do_ + i + j * ldd] = alpha * s


def o_trsm(int var, int m, int n, double alpha,
           double[::1] A, Py_ssize_t ao, Py_ssize_t lda,
           double[::1] B, Py_ssize_t bo, Py_ssize_t ldb,
           double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef int i, j, t
    cdef double s
    if var == 0:
        for j in range(n):
            for i in range(m):
                s = alpha * B[bo + i + j * ldb]
                for t in range(i):
                    s -= A[ao + i + t * lda] * D[do_ + t + j * ldd]
                D[do_ + i + j * ldd] = s
    elif var == 1:
        for j in range(n):
            for i in range(m - 1, -1, -1):
                s = alpha * B[bo + i + j * ldb]
                for t in range(i + 1, m):
                    s -= A[ao + i + t * lda] * D[do_ + t + j * ldd]
                D[do_ + i + j * ldd] = s / A[ao + i + i * lda]
    elif var == 2 or var == 3:
        for i in range(m):
            for j in range(n):
                s = alpha * B[bo + i + j * ldb]
                for t in range(j):
                    s -= D[do_ + i + t * ldd] * A[ao + j + t * lda]
                if var == 2:
                    s /= A[ao + j + j * lda]
                D[do_ + i + j * ldd] = s
    else:
        for i in range(m):
            for j in range(n - 1, -1, -1):
                s = alpha * B[bo + i + j * ldb]
                for t in range(j + 1, n):
                    s -= D[do_ + i + t * ldd] * A[ao + j + t * lda]
                D[do_ + i + j * ldd] = s / A[ao + j + j * lda]


def o_potrf(int m, double[::1] C, Py_ssize_t co, Py_ssize_t ldc,
            double[::1] D, Py_ssize_t do_, Py_ssize_t ldd):
    cdef int i, j, t
    cdef double s, ljj
    for j in range(m):
        s = C[co + j + j * ldc]
        for t in range(j):
            s -= D[do_ + j + t * ldd] * D[do_ + j + t * ldd]
        if s <= 0.0:
            return j
        ljj = sqrt(s)
        D[do_ + j + j * ldd] = ljj
        for i in range(j + 1, m):
            s = C[co + i + j * ldc]
            for t in range(j):
                s -= D[do_ + i + t * ldd] * D[do_ + j + t * ldd]
            D[do_ + i + j * ldd] = s / ljj
    return -1


def o_getrf(int m, int n, double[::1] D, Py_ssize_t do_, Py_ssize_t ldd,
            long[::1] ipiv, Py_ssize_t ipo):
    cdef int mn = min(m, n)
    cdef int c, r, j, best
    cdef double bv, v, piv, u, tmp
    cdef Py_ssize_t i1, i2
    for c in range(mn):
        best = c
        bv = fabs(D[do_ + c + c * ldd])
        for r in range(c + 1, m):
            v = fabs(D[do_ + r + c * ldd])
            if v > bv:
                bv = v
                best = r
        if bv == 0.0:
            return c
        ipiv[ipo + c] = best
        if best != c:
            for j in range(n):
                i1 = do_ + c + j * ldd
                i2 = do_ + best + j * ldd
                tmp = D[i1]
                D[i1] = D[i2]
                D[i2] = tmp
        piv = D[do_ + c + c * ldd]
        for r in range(c + 1, m):
            D[do_ + r + c * ldd] /= piv
        for j in range(c + 1, n):
            u = D[do_ + c + j * ldd]
            if u != 0.0:
                for r in range(c + 1, m):
                    D[do_ + r + j * ldd] -= D[do_ + r + c * ldd] * u
    return -1


def o_gelqf(int m, int n, double[::1] D, Py_ssize_t do_, Py_ssize_t ldd,
            double[::1] tau, Py_ssize_t tauo):
    cdef int mn = min(m, n)
    cdef int r, c, i
    cdef double alpha, nx2, v, beta, t, scale, w
    for r in range(mn):
        alpha = D[do_ + r + r * ldd]
        nx2 = 0.0
        for c in range(r + 1, n):
            v = D[do_ + r + c * ldd]
            nx2 += v * v
        if nx2 == 0.0:
            tau[tauo + r] = 0.0
            continue
        beta = -copysign(sqrt(alpha * alpha + nx2), alpha)
        t = (beta - alpha) / beta
        tau[tauo + r] = t
        scale = 1.0 / (alpha - beta)
        for c in range(r + 1, n):
            D[do_ + r + c * ldd] *= scale
        D[do_ + r + r * ldd] = beta
        for i in range(r + 1, m):
            w = D[do_ + i + r * ldd]
            for c in range(r + 1, n):
                w += D[do_ + i + c * ldd] * D[do_ + r + c * ldd]
            w *= t
            D[do_ + i + r * ldd] -= w
            for c in range(r + 1, n):
                D[do_ + i + c * ldd] -= w * D[do_ + r + c * ldd]
