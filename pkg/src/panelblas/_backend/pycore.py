"""Pure-Python backend twin.

Implements the same function surface as the compiled core (ccore.pyx),
with identical operation ordering so results are bit-identical between
the two backends.  Panel buffers are flat float64 arrays; offsets are
precomputed by the calling layer except where noted.

Addressing conventions (ps = 4 throughout):
  * along-panel stream, row-aligned window: element (i, l) of an
    mr x k operand sits at  off + (i >> 2)*4*sd + 4*l + (i & 3)
  * result block element (r, j) of a window whose first row sits at
    within-panel offset ``air``:  off + 4*j + r + 4*(sd - 1)*((air + r) >> 2)
    where ``off`` points at element (0, 0) itself.
"""

import math

PS = 4

HAS_C = False


def _eo(ai, aj, sd):
    air = ai & 3
    return (ai - air) * sd + aj * 4 + air


# ---------------------------------------------------------------------------
# panel kernels


def kgemm_nt(k, alpha, A, ao, sda, B, bo, sdb, beta,
             C, co, cair, sdc, D, do_, dair, sdd, mr, ms, ns):
    acc = [0.0] * (4 * mr)
    for l in range(k):
        ab = ao + 4 * l
        bb = bo + 4 * l
        for j in range(4):
            b = B[bb + j]
            base = j * mr
            for i in range(mr):
                a = A[ab + i] if i < 4 else A[ab + 4 * (sda - 1) + i]
                acc[base + i] += a * b
    _store(alpha, acc, beta, C, co, cair, sdc, D, do_, dair, sdd, mr, ms, ns)


def kgemm_nn(k, alpha, A, ao, sda, B, bo, bair, sdb, beta,
             C, co, cair, sdc, D, do_, dair, sdd, mr, ms, ns):
    acc = [0.0] * (4 * mr)
    bpan = bo
    bidx = bair
    for l in range(k):
        ab = ao + 4 * l
        for j in range(4):
            # guard: columns beyond ns may fall outside allocated storage
            b = B[bpan + 4 * j + bidx] if j < ns else 0.0
            base = j * mr
            for i in range(mr):
                a = A[ab + i] if i < 4 else A[ab + 4 * (sda - 1) + i]
                acc[base + i] += a * b
        bidx += 1
        if bidx == 4:
            bidx = 0
            bpan += 4 * sdb
    _store(alpha, acc, beta, C, co, cair, sdc, D, do_, dair, sdd, mr, ms, ns)


def ksyrk_ln(k, alpha, A, ao, sda, B, bo, sdb, beta,
             C, co, cair, sdc, D, do_, dair, sdd, mr, ms, ns, shift):
    acc = [0.0] * (4 * mr)
    for l in range(k):
        ab = ao + 4 * l
        bb = bo + 4 * l
        for j in range(4):
            b = B[bb + j]
            base = j * mr
            for i in range(mr):
                a = A[ab + i] if i < 4 else A[ab + 4 * (sda - 1) + i]
                acc[base + i] += a * b
    for j in range(ns):
        for i in range(ms):
            if i < j + shift:
                continue
            v = beta * C[co + 4 * j + i + 4 * (sdc - 1) * ((cair + i) >> 2)] if beta != 0.0 else 0.0
            if alpha != 0.0:
                v = alpha * acc[j * mr + i] + v
            D[do_ + 4 * j + i + 4 * (sdd - 1) * ((dair + i) >> 2)] = v


def ktrmm_rlnn(k, alpha, X, xo, sdx, T, to, tair, sdt,
               D, do_, dair, sdd, mr, ms, ns):
    # D = alpha * X * T with T lower triangular; the T window starts at
    # its own diagonal row, so element (l, j) contributes only if l >= j.
    acc = [0.0] * (4 * mr)
    tpan = to
    tidx = tair
    for l in range(k):
        xb = xo + 4 * l
        for j in range(4):
            if j < ns and l >= j:
                t = T[tpan + 4 * j + tidx]
            else:
                t = 0.0
            base = j * mr
            for i in range(mr):
                x = X[xb + i] if i < 4 else X[xb + 4 * (sdx - 1) + i]
                acc[base + i] += x * t
        tidx += 1
        if tidx == 4:
            tidx = 0
            tpan += 4 * sdt
    for j in range(ns):
        for i in range(ms):
            D[do_ + 4 * j + i + 4 * (sdd - 1) * ((dair + i) >> 2)] = alpha * acc[j * mr + i]


def _downdate_nt(acc, mr, kp, Ap, apo, sdap, Bp, bpo, sdbp,
                 km, Am, amo, sdam, Bm, bmo, sdbm):
    # acc += Ap*Bp' over kp, then acc -= Am*Bm' over km
    for l in range(kp):
        ab = apo + 4 * l
        bb = bpo + 4 * l
        for j in range(4):
            b = Bp[bb + j]
            base = j * mr
            for i in range(mr):
                a = Ap[ab + i] if i < 4 else Ap[ab + 4 * (sdap - 1) + i]
                acc[base + i] += a * b
    for l in range(km):
        ab = amo + 4 * l
        bb = bmo + 4 * l
        for j in range(4):
            b = Bm[bb + j]
            base = j * mr
            for i in range(mr):
                a = Am[ab + i] if i < 4 else Am[ab + 4 * (sdam - 1) + i]
                acc[base + i] -= a * b
    return acc


def ktrsm_rltn(kp, Ap, apo, sdap, Bp, bpo, sdbp,
               km, Am, amo, sdam, Bm, bmo, sdbm, alpha,
               C, co, cair, sdc, D, do_, dair, sdd,
               E, eo, sde, dinv, dio, unit, mr, ms, ns):
    acc = _downdate_nt([0.0] * (4 * mr), mr, kp, Ap, apo, sdap, Bp, bpo, sdbp,
                       km, Am, amo, sdam, Bm, bmo, sdbm)
    for j in range(ns):
        base = j * mr
        for i in range(ms):
            acc[base + i] += alpha * C[co + 4 * j + i + 4 * (sdc - 1) * ((cair + i) >> 2)]
        for t in range(j):
            e = E[eo + 4 * t + j]
            tb = t * mr
            for i in range(ms):
                acc[base + i] -= acc[tb + i] * e
        if not unit:
            inv = dinv[dio + j]
            for i in range(ms):
                acc[base + i] *= inv
        for i in range(ms):
            D[do_ + 4 * j + i + 4 * (sdd - 1) * ((dair + i) >> 2)] = acc[base + i]


def kpotrf(kp, Ap, apo, sdap, Bp, bpo, sdbp,
           km, Am, amo, sdam, Bm, bmo, sdbm,
           C, co, cair, sdc, D, do_, dair, sdd,
           dinv, dio, mr, ms, ns):
    acc = _downdate_nt([0.0] * (4 * mr), mr, kp, Ap, apo, sdap, Bp, bpo, sdbp,
                       km, Am, amo, sdam, Bm, bmo, sdbm)
    for j in range(ns):
        base = j * mr
        for i in range(ms):
            acc[base + i] += C[co + 4 * j + i + 4 * (sdc - 1) * ((cair + i) >> 2)]
    for j in range(ns):
        base = j * mr
        d = acc[base + j]
        if d <= 0.0:
            return j
        ljj = math.sqrt(d)
        inv = 1.0 / ljj
        acc[base + j] = ljj
        dinv[dio + j] = inv
        for i in range(j + 1, ms):
            acc[base + i] *= inv
        for c in range(j + 1, ns):
            lcj = acc[base + c]
            cb = c * mr
            for i in range(c, ms):
                acc[cb + i] -= acc[base + i] * lcj
    for j in range(ns):
        for i in range(j, ms):
            D[do_ + 4 * j + i + 4 * (sdd - 1) * ((dair + i) >> 2)] = acc[j * mr + i]
    return -1


def _downdate_nn(acc, km, Am, amo, sdam, Bm, bmo, bmair, sdbm, ns):
    # acc -= Am*Bm with Am streamed along its panel and Bm across panels
    bpan = bmo
    bidx = bmair
    for l in range(km):
        ab = amo + 4 * l
        for j in range(4):
            b = Bm[bpan + 4 * j + bidx] if j < ns else 0.0
            base = j * 4
            for i in range(4):
                acc[base + i] -= Am[ab + i] * b
        bidx += 1
        if bidx == 4:
            bidx = 0
            bpan += 4 * sdbm
    return acc


def ktrsm_llnu(km, Am, amo, sdam, Bm, bmo, bmair, sdbm, alpha,
               C, co, cair, sdc, D, do_, dair, sdd, E, eo, sde, ms, ns):
    acc = _downdate_nn([0.0] * 16, km, Am, amo, sdam, Bm, bmo, bmair, sdbm, ns)
    for j in range(ns):
        base = j * 4
        for i in range(ms):
            acc[base + i] += alpha * C[co + 4 * j + i + 4 * (sdc - 1) * ((cair + i) >> 2)]
        for i in range(ms):
            x = acc[base + i]
            for t in range(i + 1, ms):
                acc[base + t] -= E[eo + 4 * i + t] * x
        for i in range(ms):
            D[do_ + 4 * j + i + 4 * (sdd - 1) * ((dair + i) >> 2)] = acc[base + i]


def lu_rowsolve_drv(jb, width, D, di, djl, djr, sdd):
    # in-place unit-lower solve of one LU panel's row block against the
    # columns right of it; di is the (aligned) panel row, djl the panel's
    # diagonal column, djr the first trailing column
    eo = _eo(di, djl, sdd)
    for jj in range(0, width, 4):
        ns = min(4, width - jj)
        off = _eo(di, djr + jj, sdd)
        ktrsm_llnu(0, D, 0, sdd, D, 0, 0, sdd, 1.0,
                   D, off, 0, sdd, D, off, 0, sdd, D, eo, sdd, jb, ns)


def ktrsm_lunn(km, Am, amo, sdam, Bm, bmo, bmair, sdbm, alpha,
               C, co, cair, sdc, D, do_, dair, sdd, E, eo, sde,
               dinv, dio, ms, ns):
    acc = _downdate_nn([0.0] * 16, km, Am, amo, sdam, Bm, bmo, bmair, sdbm, ns)
    for j in range(ns):
        base = j * 4
        for i in range(ms):
            acc[base + i] += alpha * C[co + 4 * j + i + 4 * (sdc - 1) * ((cair + i) >> 2)]
        for i in range(ms - 1, -1, -1):
            x = acc[base + i]
            for t in range(i + 1, ms):
                x -= E[eo + 4 * t + i] * acc[base + t]
            acc[base + i] = x * dinv[dio + i]
        for i in range(ms):
            D[do_ + 4 * j + i + 4 * (sdd - 1) * ((dair + i) >> 2)] = acc[base + i]


def ktrsm_rutn(km, Am, amo, sdam, Bm, bmo, sdbm, alpha,
               C, co, cair, sdc, D, do_, dair, sdd, E, eo, sde,
               dinv, dio, ms, ns):
    acc = [0.0] * 16
    for l in range(km):
        ab = amo + 4 * l
        bb = bmo + 4 * l
        for j in range(4):
            b = Bm[bb + j]
            base = j * 4
            for i in range(4):
                acc[base + i] -= Am[ab + i] * b
    for j in range(ns):
        base = j * 4
        for i in range(ms):
            acc[base + i] += alpha * C[co + 4 * j + i + 4 * (sdc - 1) * ((cair + i) >> 2)]
    for j in range(ns - 1, -1, -1):
        base = j * 4
        for t in range(j + 1, ns):
            e = E[eo + 4 * t + j]
            tb = t * 4
            for i in range(ms):
                acc[base + i] -= acc[tb + i] * e
        inv = dinv[dio + j]
        for i in range(ms):
            acc[base + i] *= inv
    for j in range(ns):
        base = j * 4
        for i in range(ms):
            D[do_ + 4 * j + i + 4 * (sdd - 1) * ((dair + i) >> 2)] = acc[base + i]


def _store(alpha, acc, beta, C, co, cair, sdc, D, do_, dair, sdd, mr, ms, ns):
    for j in range(ns):
        base = j * mr
        for i in range(ms):
            if alpha != 0.0:
                v = alpha * acc[base + i]
                if beta != 0.0:
                    v += beta * C[co + 4 * j + i + 4 * (sdc - 1) * ((cair + i) >> 2)]
            elif beta != 0.0:
                v = beta * C[co + 4 * j + i + 4 * (sdc - 1) * ((cair + i) >> 2)]
            else:
                v = 0.0
            D[do_ + 4 * j + i + 4 * (sdd - 1) * ((dair + i) >> 2)] = v


# ---------------------------------------------------------------------------
# panel-level factorization helpers


def kgetrf_panel(D, base, sdd, mrows, jb, pivot, ipiv, ipo, dinv, dio):
    # factor a jb-wide block column in place; base addresses its (0, 0)
    # element and must be panel-aligned.  Row swaps stay inside the block
    # column; the caller applies them to the rest of the matrix.
    def idx(r, c):
        return base + (r >> 2) * 4 * sdd + 4 * c + (r & 3)

    for c in range(jb):
        if pivot:
            best = c
            bv = abs(D[idx(c, c)])
            for r in range(c + 1, mrows):
                v = abs(D[idx(r, c)])
                if v > bv:
                    bv = v
                    best = r
            if bv == 0.0:
                return c
            ipiv[ipo + c] = best
            if best != c:
                for cc in range(jb):
                    i1 = idx(c, cc)
                    i2 = idx(best, cc)
                    D[i1], D[i2] = D[i2], D[i1]
        else:
            if D[idx(c, c)] == 0.0:
                return c
        u = D[idx(c, c)]
        inv = 1.0 / u
        dinv[dio + c] = inv
        for r in range(c + 1, mrows):
            D[idx(r, c)] *= inv
        for cc in range(c + 1, jb):
            ucc = D[idx(c, cc)]
            if ucc != 0.0:
                for r in range(c + 1, mrows):
                    D[idx(r, cc)] -= D[idx(r, c)] * ucc
    return -1


def klq_panel(D, base, sdd, jb, ncols, tau, tauo):
    # Householder LQ of jb panel rows over ncols columns, in place.
    # Row r's reflector annihilates columns r+1..ncols-1 of that row;
    # remaining panel rows are updated immediately.  base addresses the
    # (0, 0) element of the block and must be panel-aligned.
    for r in range(jb):
        doff = base + 4 * r + r  # diagonal element (r, r)
        alpha = D[doff]
        nx2 = 0.0
        for c in range(r + 1, ncols):
            v = D[base + 4 * c + r]
            nx2 += v * v
        if nx2 == 0.0:
            tau[tauo + r] = 0.0
            continue
        beta = -math.copysign(math.sqrt(alpha * alpha + nx2), alpha)
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


def krowswap(n, A, o1, B, o2):
    for j in range(n):
        i1 = o1 + 4 * j
        i2 = o2 + 4 * j
        A[i1], B[i2] = B[i2], A[i1]


# ---------------------------------------------------------------------------
# elementwise window helpers (copy/transpose/scale/set/add, packing)


def kgecp(m, n, S, si, sj, sds, D, di, dj, sdd):
    for j in range(n):
        for i in range(m):
            D[_eo(di + i, dj + j, sdd)] = S[_eo(si + i, sj + j, sds)]


def kgetr(m, n, S, si, sj, sds, D, di, dj, sdd):
    for j in range(n):
        for i in range(m):
            D[_eo(di + j, dj + i, sdd)] = S[_eo(si + i, sj + j, sds)]


def kgead(m, n, alpha, S, si, sj, sds, D, di, dj, sdd):
    for j in range(n):
        for i in range(m):
            D[_eo(di + i, dj + j, sdd)] += alpha * S[_eo(si + i, sj + j, sds)]


def kgesc(m, n, alpha, A, ai, aj, sda):
    for j in range(n):
        for i in range(m):
            A[_eo(ai + i, aj + j, sda)] *= alpha


def kgese(m, n, alpha, A, ai, aj, sda):
    for j in range(n):
        for i in range(m):
            A[_eo(ai + i, aj + j, sda)] = alpha


def kpack_cm(m, n, S, so, lds, D, di, dj, sdd):
    for j in range(n):
        for i in range(m):
            D[_eo(di + i, dj + j, sdd)] = S[so + i + j * lds]


def kpack_cm_tr(m, n, S, so, lds, D, di, dj, sdd):
    for j in range(n):
        for i in range(m):
            D[_eo(di + j, dj + i, sdd)] = S[so + i + j * lds]


def kunpack_cm(m, n, S, si, sj, sds, D, do_, ldd):
    for j in range(n):
        for i in range(m):
            D[do_ + i + j * ldd] = S[_eo(si + i, sj + j, sds)]


# ---------------------------------------------------------------------------
# routine-level drivers (two loops around the kernels; outermost over
# result rows, intermediate over result columns)


def gemm_nt_drv(m, n, k, alpha, A, ai, aj, sda, B, bi, bj, sdb, beta,
                C, ci, cj, sdc, D, di, dj, sdd):
    cair = ci & 3
    dair = di & 3
    ii = 0
    while ii < m:
        left = m - ii
        mr = 8 if left > 4 else 4
        ms = left if left < mr else mr
        ao = _eo(ai + ii, aj, sda)
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            kgemm_nt(k, alpha, A, ao, sda, B, _eo(bi + jj, bj, sdb), sdb, beta,
                     C, _eo(ci + ii, cj + jj, sdc), cair, sdc,
                     D, _eo(di + ii, dj + jj, sdd), dair, sdd, mr, ms, ns)
        ii += mr


def gemm_nn_drv(m, n, k, alpha, A, ai, aj, sda, B, bi, bj, sdb, beta,
                C, ci, cj, sdc, D, di, dj, sdd):
    cair = ci & 3
    dair = di & 3
    bair = bi & 3
    ii = 0
    while ii < m:
        left = m - ii
        mr = 8 if left > 4 else 4
        ms = left if left < mr else mr
        ao = _eo(ai + ii, aj, sda)
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            kgemm_nn(k, alpha, A, ao, sda,
                     B, _eo(bi - bair, bj + jj, sdb), bair, sdb, beta,
                     C, _eo(ci + ii, cj + jj, sdc), cair, sdc,
                     D, _eo(di + ii, dj + jj, sdd), dair, sdd, mr, ms, ns)
        ii += mr


def syrk_ln_drv(m, k, alpha, A, ai, aj, sda, B, bi, bj, sdb, beta,
                C, ci, cj, sdc, D, di, dj, sdd):
    cair = ci & 3
    dair = di & 3
    for ii in range(0, m, 4):
        ms = min(4, m - ii)
        ao = _eo(ai + ii, aj, sda)
        for jj in range(0, ii + 1, 4):
            ns = min(4, m - jj)
            bo = _eo(bi + jj, bj, sdb)
            co = _eo(ci + ii, cj + jj, sdc)
            do_ = _eo(di + ii, dj + jj, sdd)
            if jj == ii:
                ksyrk_ln(k, alpha, A, ao, sda, B, bo, sdb, beta,
                         C, co, cair, sdc, D, do_, dair, sdd, 4, ms, ns, 0)
            else:
                kgemm_nt(k, alpha, A, ao, sda, B, bo, sdb, beta,
                         C, co, cair, sdc, D, do_, dair, sdd, 4, ms, ns)


def trmm_rlnn_drv(m, n, alpha, X, xi, xj, sdx, T, ti, tj, sdt, D, di, dj, sdd):
    dair = di & 3
    ii = 0
    while ii < m:
        left = m - ii
        mr = 8 if left > 4 else 4
        ms = left if left < mr else mr
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            tair = (ti + jj) & 3
            ktrmm_rlnn(n - jj, alpha, X, _eo(xi + ii, xj + jj, sdx), sdx,
                       T, _eo(ti + jj - tair, tj + jj, sdt), tair, sdt,
                       D, _eo(di + ii, dj + jj, sdd), dair, sdd, mr, ms, ns)
        ii += mr


def trsm_rltn_drv(m, n, alpha, A, ai, aj, sda, unit, B, bi, bj, sdb,
                  D, di, dj, sdd, dinv, dio):
    # requires ai % 4 == 0 and di % 4 == 0 (D doubles as a stream operand)
    cair = bi & 3
    for ii in range(0, m, 4):
        ms = min(4, m - ii)
        amo = _eo(di + ii, dj, sdd)
        for jj in range(0, n, 4):
            ns = min(4, n - jj)
            ktrsm_rltn(0, A, 0, sda, A, 0, sda,
                       jj, D, amo, sdd, A, _eo(ai + jj, aj, sda), sda, alpha,
                       B, _eo(bi + ii, bj + jj, sdb), cair, sdb,
                       D, _eo(di + ii, dj + jj, sdd), 0, sdd,
                       A, _eo(ai + jj, aj + jj, sda), sda,
                       dinv, dio + jj, unit, 4, ms, ns)


def potrf_drv(m, n, C, ci, cj, sdc, D, di, dj, sdd, dinv, dio):
    # requires di % 4 == 0; returns the global index of the first bad
    # pivot, or -1
    cair = ci & 3
    for ii in range(0, m, 4):
        ms = min(4, m - ii)
        amo = _eo(di + ii, dj, sdd)
        jmax = min(ii + 4, n)
        for jj in range(0, jmax, 4):
            ns = min(4, n - jj)
            co = _eo(ci + ii, cj + jj, sdc)
            do_ = _eo(di + ii, dj + jj, sdd)
            bmo = _eo(di + jj, dj, sdd)
            if jj == ii and ns > 0 and ii < n:
                st = kpotrf(0, D, 0, sdd, D, 0, sdd, jj, D, amo, sdd, D, bmo, sdd,
                            C, co, cair, sdc, D, do_, 0, sdd,
                            dinv, dio + jj, 4, ms, ns)
                if st >= 0:
                    return jj + st
            elif jj < ii:
                ktrsm_rltn(0, D, 0, sdd, D, 0, sdd,
                           jj, D, amo, sdd, D, bmo, sdd, 1.0,
                           C, co, cair, sdc, D, do_, 0, sdd,
                           D, _eo(di + jj, dj + jj, sdd), sdd,
                           dinv, dio + jj, False, 4, ms, ns)
    return -1


def syrk_potrf_drv(m, n, k, A, ai, aj, sda, B, bi, bj, sdb,
                   C, ci, cj, sdc, D, di, dj, sdd, dinv, dio):
    cair = ci & 3
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
            if jj == ii and ns > 0 and ii < n:
                st = kpotrf(k, A, apo, sda, B, bpo, sdb,
                            jj, D, amo, sdd, D, bmo, sdd,
                            C, co, cair, sdc, D, do_, 0, sdd,
                            dinv, dio + jj, 4, ms, ns)
                if st >= 0:
                    return jj + st
            elif jj < ii:
                ktrsm_rltn(k, A, apo, sda, B, bpo, sdb,
                           jj, D, amo, sdd, D, bmo, sdd, 1.0,
                           C, co, cair, sdc, D, do_, 0, sdd,
                           D, _eo(di + jj, dj + jj, sdd), sdd,
                           dinv, dio + jj, False, 4, ms, ns)
    return -1


# ---------------------------------------------------------------------------
# reference implementation (column-major, 2x2 register blocking, inner
# loop over k)


def rf_gemm_nt_drv(m, n, k, alpha, A, ao, lda, B, bo, ldb, beta,
                   C, co, ldc, D, do_, ldd):
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
            for jc in (j, j + 1):
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


def rf_gemm_nn_drv(m, n, k, alpha, A, ao, lda, B, bo, ldb, beta,
                   C, co, ldc, D, do_, ldd):
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
            for jc in (j, j + 1):
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


def _rf_put(alpha, acc, beta, C, coff, D, doff):
    if alpha != 0.0:
        v = alpha * acc
        if beta != 0.0:
            v += beta * C[coff]
    elif beta != 0.0:
        v = beta * C[coff]
    else:
        v = 0.0
    D[doff] = v


def rf_potrf_drv(m, C, co, ldc, D, do_, ldd):
    # left-looking, two columns at a time, 2x2 accumulators in the
    # downdate loop (inner loop over k)
    j = 0
    while j < m:
        jb = 2 if m - j > 1 else 1
        # downdate block column j..j+jb-1 against factored columns
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
        # factor the jb x jb corner and scale the rows below it
        d = D[do_ + j + j * ldd]
        if d <= 0.0:
            return j
        ljj = math.sqrt(d)
        inv = 1.0 / ljj
        D[do_ + j + j * ldd] = ljj
        for r in range(j + 1, m):
            D[do_ + r + j * ldd] *= inv
        if jb == 2:
            l10 = D[do_ + j + 1 + j * ldd]
            d = D[do_ + j + 1 + (j + 1) * ldd] - l10 * l10
            if d <= 0.0:
                return j + 1
            l11 = math.sqrt(d)
            inv1 = 1.0 / l11
            D[do_ + j + 1 + (j + 1) * ldd] = l11
            for r in range(j + 2, m):
                D[do_ + r + (j + 1) * ldd] = (D[do_ + r + (j + 1) * ldd]
                                              - D[do_ + r + j * ldd] * l10) * inv1
        j += jb
    return -1


# ---------------------------------------------------------------------------
# naive column-major oracles (textbook loops, fixed summation order)


def o_gemm_nt(m, n, k, alpha, A, ao, lda, B, bo, ldb, beta, C, co, ldc,
              D, do_, ldd):
    for j in range(n):
        for i in range(m):
            s = 0.0
            for l in range(k):
                s += A[ao + i + l * lda] * B[bo + j + l * ldb]
            _rf_put(alpha, s, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)


def o_gemm_nn(m, n, k, alpha, A, ao, lda, B, bo, ldb, beta, C, co, ldc,
              D, do_, ldd):
    for j in range(n):
        for i in range(m):
            s = 0.0
            for l in range(k):
                s += A[ao + i + l * lda] * B[bo + l + j * ldb]
            _rf_put(alpha, s, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)


def o_syrk_ln(m, k, alpha, A, ao, lda, B, bo, ldb, beta, C, co, ldc,
              D, do_, ldd):
    for j in range(m):
        for i in range(j, m):
            s = 0.0
            for l in range(k):
                s += A[ao + i + l * lda] * B[bo + j + l * ldb]
            _rf_put(alpha, s, beta, C, co + i + j * ldc, D, do_ + i + j * ldd)


def o_trmm_rlnn(m, n, alpha, A, ao, lda, B, bo, ldb, D, do_, ldd):
    for j in range(n):
        for i in range(m):
            s = 0.0
            for l in range(j, n):
                s += B[bo + i + l * ldb] * A[ao + l + j * lda]
            D[do_ + i + j * ldd] = alpha * s


def o_trsm(var, m, n, alpha, A, ao, lda, B, bo, ldb, D, do_, ldd):
    # var: 0=llnu 1=lunn 2=rltn 3=rltu 4=rutn
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
    elif var in (2, 3):
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


def o_potrf(m, C, co, ldc, D, do_, ldd):
    for j in range(m):
        s = C[co + j + j * ldc]
        for t in range(j):
            s -= D[do_ + j + t * ldd] * D[do_ + j + t * ldd]
        if s <= 0.0:
            return j
        ljj = math.sqrt(s)
        D[do_ + j + j * ldd] = ljj
        for i in range(j + 1, m):
            s = C[co + i + j * ldc]
            for t in range(j):
                s -= D[do_ + i + t * ldd] * D[do_ + j + t * ldd]
            D[do_ + i + j * ldd] = s / ljj
    return -1


def o_getrf(m, n, D, do_, ldd, ipiv, ipo):
    # in place, partial pivoting, outer-product elimination
    mn = min(m, n)
    for c in range(mn):
        best = c
        bv = abs(D[do_ + c + c * ldd])
        for r in range(c + 1, m):
            v = abs(D[do_ + r + c * ldd])
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
                D[i1], D[i2] = D[i2], D[i1]
        piv = D[do_ + c + c * ldd]
        for r in range(c + 1, m):
            D[do_ + r + c * ldd] /= piv
        for j in range(c + 1, n):
            u = D[do_ + c + j * ldd]
            if u != 0.0:
                for r in range(c + 1, m):
                    D[do_ + r + j * ldd] -= D[do_ + r + c * ldd] * u
    return -1


def o_gelqf(m, n, D, do_, ldd, tau, tauo):
    # in place, one reflector per row, applied immediately to all rows below
    mn = min(m, n)
    for r in range(mn):
        alpha = D[do_ + r + r * ldd]
        nx2 = 0.0
        for c in range(r + 1, n):
            v = D[do_ + r + c * ldd]
            nx2 += v * v
        if nx2 == 0.0:
            tau[tauo + r] = 0.0
            continue
        beta = -math.copysign(math.sqrt(alpha * alpha + nx2), alpha)
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
