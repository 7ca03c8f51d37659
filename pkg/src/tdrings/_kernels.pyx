# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Omega_0 kernels on int64 entries.

Same contract as ``_pykernels``. Inputs that could overflow int64 raise
OverflowError so the caller can retry on the arbitrary-precision path.
"""
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

BACKEND = "cython"

cdef enum:
    MAXN = 16
    MAXM = 120     # MAXN * (MAXN - 1) / 2
    SAFE = 2147483647

cdef struct Layout:
    int n
    int m
    int nsteps
    int64_t gaps[MAXM]
    int step_p[MAXM]
    int64_t step_g[MAXM]
    int nrows[MAXM]
    int ncols[MAXM]
    int rows_a[MAXM][MAXN]
    int rows_b[MAXM][MAXN]
    int cols_a[MAXM][MAXN]
    int cols_b[MAXM][MAXN]


cdef int build_layout(Layout* L, roots) except -1:
    cdef int n = len(roots)
    cdef int i, j, k, s
    cdef int pos[MAXN][MAXN]
    if n < 2 or n > MAXN:
        raise OverflowError("unsupported dimension")
    for r in roots:
        if abs(r) > SAFE:
            raise OverflowError("root too large for int64 kernel")
    L.n = n
    L.m = 0
    for i in range(n):
        for j in range(i + 1, n):
            pos[i][j] = L.m
            L.gaps[L.m] = roots[j] - roots[i]
            L.m += 1
    s = 0
    for i in range(n - 2, -1, -1):
        for j in range(i + 1, n):
            L.step_p[s] = pos[i][j]
            L.step_g[s] = roots[j] - roots[i]
            L.nrows[s] = 0
            for k in range(j + 1, n):
                L.rows_a[s][L.nrows[s]] = pos[i][k]
                L.rows_b[s][L.nrows[s]] = pos[j][k]
                L.nrows[s] += 1
            L.ncols[s] = 0
            for k in range(i):
                L.cols_a[s][L.ncols[s]] = pos[k][j]
                L.cols_b[s][L.ncols[s]] = pos[k][i]
                L.ncols[s] += 1
            s += 1
    L.nsteps = s
    return 0


cdef inline int64_t floordiv(int64_t a, int64_t b) nogil:
    cdef int64_t q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline int reduce_c(Layout* L, int64_t* f) nogil:
    """Reduce in place; returns 1 on (potential) overflow.

    Every stored entry is kept within +-SAFE, so each update x + t*y with
    |x|, |t|, |y| <= SAFE stays below 2^63. The pivot itself may land in
    [0, g) with g up to 2*SAFE; it is only ever read back through the same
    bound check.
    """
    cdef int s, r, p, a
    cdef int64_t t, g, y
    for s in range(L.nsteps):
        p = L.step_p[s]
        g = L.step_g[s]
        t = -floordiv(f[p], g)
        if t != 0:
            if t > SAFE or t < -SAFE:
                return 1
            f[p] += t * g
            for r in range(L.nrows[s]):
                y = f[L.rows_b[s][r]]
                a = L.rows_a[s][r]
                if y > SAFE or y < -SAFE or f[a] > SAFE or f[a] < -SAFE:
                    return 1
                f[a] += t * y
                if f[a] > SAFE or f[a] < -SAFE:
                    return 1
            for r in range(L.ncols[s]):
                y = f[L.cols_b[s][r]]
                a = L.cols_a[s][r]
                if y > SAFE or y < -SAFE or f[a] > SAFE or f[a] < -SAFE:
                    return 1
                f[a] -= t * y
                if f[a] > SAFE or f[a] < -SAFE:
                    return 1
    return 0


cdef inline void sign_vector(Layout* L, int s, int* out) nogil:
    cdef int i, j, p = 0
    cdef int eps[MAXN]
    eps[0] = 1
    for i in range(1, L.n):
        eps[i] = -1 if (s >> (i - 1)) & 1 else 1
    for i in range(L.n):
        for j in range(i + 1, L.n):
            out[p] = eps[i] * eps[j]
            p += 1


def reduce_flat(roots, e):
    cdef Layout L
    cdef int64_t f[MAXM]
    cdef int k
    build_layout(&L, tuple(roots))
    for k in range(L.m):
        if abs(e[k]) > SAFE:
            raise OverflowError("entry too large for int64 kernel")
        f[k] = e[k]
    if reduce_c(&L, f):
        raise OverflowError("int64 kernel overflow")
    for k in range(L.m):
        e[k] = f[k]
    return e


def encode(roots, e):
    from ._pykernels import encode as _enc
    return _enc(tuple(roots), e)


def decode(roots, idx):
    from ._pykernels import decode as _dec
    return _dec(tuple(roots), idx)


def canonical_flat(roots, upper):
    cdef Layout L
    cdef int64_t f[MAXM]
    cdef int64_t best[MAXM]
    cdef int sg[MAXM]
    cdef int s, k, have = 0, less
    build_layout(&L, tuple(roots))
    for k in range(L.m):
        if abs(upper[k]) > SAFE:
            raise OverflowError("entry too large for int64 kernel")
    for s in range(1 << (L.n - 1)):
        sign_vector(&L, s, sg)
        for k in range(L.m):
            f[k] = upper[k] * sg[k]
        if reduce_c(&L, f):
            raise OverflowError("int64 kernel overflow")
        less = 0
        if not have:
            less = 1
        else:
            for k in range(L.m):
                if f[k] != best[k]:
                    less = f[k] < best[k]
                    break
        if less:
            for k in range(L.m):
                best[k] = f[k]
            have = 1
    return tuple(best[k] for k in range(L.m))


def scan_omega0(roots, want_reps=False):
    cdef Layout L
    cdef int64_t e[MAXM]
    cdef int64_t f[MAXM]
    cdef int* signs
    cdef int64_t idx, j, total64
    cdef int s, k, nsig, is_min, m
    cdef int64_t* fix
    build_layout(&L, tuple(roots))
    m = L.m
    total = 1
    for k in range(m):
        total *= L.gaps[k]
    if total >= (1 << 62):
        raise OverflowError("Omega_0 too large for int64 indexing")
    total64 = total
    nsig = 1 << (L.n - 1)
    signs = <int*> malloc(nsig * m * sizeof(int))
    fix = <int64_t*> malloc(nsig * sizeof(int64_t))
    if signs == NULL or fix == NULL:
        free(signs)
        free(fix)
        raise MemoryError()
    reps = [] if want_reps else None
    orbits = 0
    overflow = 0
    try:
        for s in range(nsig):
            sign_vector(&L, s, signs + s * m)
            fix[s] = 0
        for k in range(m):
            e[k] = 0
        for idx in range(total64):
            is_min = 1
            fix[0] += 1
            for s in range(1, nsig):
                for k in range(m):
                    f[k] = e[k] * signs[s * m + k]
                if reduce_c(&L, f):
                    overflow = 1
                    break
                j = 0
                for k in range(m):
                    j = j * L.gaps[k] + f[k]
                if j == idx:
                    fix[s] += 1
                elif j < idx:
                    is_min = 0
            if overflow:
                break
            if is_min:
                orbits += 1
                if want_reps:
                    reps.append(idx)
            k = m - 1
            while k >= 0:
                e[k] += 1
                if e[k] < L.gaps[k]:
                    break
                e[k] = 0
                k -= 1
        fix_list = [fix[s] for s in range(nsig)]
    finally:
        free(signs)
        free(fix)
    if overflow:
        raise OverflowError("int64 kernel overflow")
    return orbits, fix_list, reps
