# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels (twin of ``_kernels_py``).

Same three entry points and identical results; limited to word-sized masks
and magnitudes the wrapper in ``kernels.py`` checks before dispatching here.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    ctypedef long long int128 "__int128"

BACKEND_NAME = "compiled"

ctypedef unsigned long long u64


cdef u64* _alloc(Py_ssize_t n) except NULL:
    cdef u64 *p = <u64 *> malloc(n * sizeof(u64))
    if p == NULL:
        raise MemoryError()
    return p


def triangle_count(ab_rows, ac_rows, bc_rows):
    """Triangles of a triad: sum of codegrees over the AB edges."""
    cdef Py_ssize_t n_a = len(ab_rows)
    cdef Py_ssize_t n_b = len(bc_rows)
    cdef u64 *ab = _alloc(n_a)
    cdef u64 *ac = _alloc(n_a)
    cdef u64 *bc = _alloc(n_b)
    cdef Py_ssize_t i
    cdef long long total = 0
    cdef u64 mask, low, row_ac
    cdef int b
    try:
        for i in range(n_a):
            ab[i] = ab_rows[i]
            ac[i] = ac_rows[i]
        for i in range(n_b):
            bc[i] = bc_rows[i]
        for i in range(n_a):
            mask = ab[i]
            row_ac = ac[i]
            while mask:
                low = mask & (~mask + 1)
                b = _bit_index(low)
                mask ^= low
                total += __builtin_popcountll(row_ac & bc[b])
    finally:
        free(ab)
        free(ac)
        free(bc)
    return total


cdef inline int _bit_index(u64 low) nogil:
    cdef int k = 0
    while low > 1:
        low >>= 1
        k += 1
    return k


def octahedron_fast_scaled(int n, long long tau, long long ecount,
                           hm, tm):
    """Octahedron sum scaled by tau**8, via the z-collapse reorganization."""
    cdef long long hi = tau - ecount
    cdef long long lo = -ecount
    cdef Py_ssize_t nn = n * n
    cdef long long *vals = <long long *> malloc(nn * n * sizeof(long long))
    if vals == NULL:
        raise MemoryError()
    cdef Py_ssize_t xy, z
    cdef u64 h, t
    cdef int128 total = 0
    cdef int128 s
    cdef int x0, x1, y0, y1, zz
    cdef long long *g00
    cdef long long *g01
    cdef long long *g10
    cdef long long *g11
    try:
        for xy in range(nn):
            h = hm[xy]
            t = tm[xy]
            for z in range(n):
                if (h >> z) & 1:
                    vals[xy * n + z] = hi
                elif (t >> z) & 1:
                    vals[xy * n + z] = lo
                else:
                    vals[xy * n + z] = 0
        with nogil:
            for x0 in range(n):
                for x1 in range(n):
                    for y0 in range(n):
                        g00 = vals + (x0 * n + y0) * n
                        g10 = vals + (x1 * n + y0) * n
                        for y1 in range(n):
                            g01 = vals + (x0 * n + y1) * n
                            g11 = vals + (x1 * n + y1) * n
                            s = 0
                            for zz in range(n):
                                s += (<int128> (g00[zz] * g01[zz])) * \
                                     (<int128> (g10[zz] * g11[zz]))
                            total += s * s
    finally:
        free(vals)
    # The scaled sum is a sum of squares, hence nonnegative: split into
    # 64-bit halves to rebuild an exact Python int.
    cdef u64 lo64 = <u64> total
    cdef u64 hi64 = <u64> (total >> 64)
    return (int(hi64) << 64) | int(lo64)


def scan_subtriads(ab_edges, ac_edges, bc_edges,
                   int n_a, int n_b, int n_c,
                   h_amask, int mode, long long num, long long den):
    """Enumerate every subtriad; see the pure twin for the predicate."""
    cdef int m1 = len(ab_edges)
    cdef int m2 = len(ac_edges)
    cdef int m3 = len(bc_edges)
    cdef int i
    cdef int *ab_a = <int *> malloc(max(m1, 1) * sizeof(int))
    cdef int *ab_b = <int *> malloc(max(m1, 1) * sizeof(int))
    cdef int *ac_a = <int *> malloc(max(m2, 1) * sizeof(int))
    cdef int *ac_c = <int *> malloc(max(m2, 1) * sizeof(int))
    cdef int *bc_b = <int *> malloc(max(m3, 1) * sizeof(int))
    cdef int *bc_c = <int *> malloc(max(m3, 1) * sizeof(int))
    cdef u64 *hmask = _alloc(max(n_b * n_c, 1))
    cdef u64 *col_ab = _alloc(n_b)
    cdef u64 *col_ac = _alloc(n_c)
    cdef u64 *col_ab_full = _alloc(n_b)
    cdef u64 *col_ac_full = _alloc(n_c)
    if (ab_a == NULL or ab_b == NULL or ac_a == NULL or ac_c == NULL
            or bc_b == NULL or bc_c == NULL):
        raise MemoryError()
    cdef long long t_full = 0, e_full = 0
    cdef long long t, e
    cdef u64 abm, acm, bcm, rest, low, am
    cdef u64 w_abm = 0, w_acm = 0, w_bcm = 0
    cdef long long w_t = 0, w_e = 0
    cdef long long states = 0
    cdef int k, b, c, cnt, hcnt, hit
    cdef u64 g, bit
    result = None
    try:
        for i in range(m1):
            ab_a[i] = ab_edges[i][0]
            ab_b[i] = ab_edges[i][1]
        for i in range(m2):
            ac_a[i] = ac_edges[i][0]
            ac_c[i] = ac_edges[i][1]
        for i in range(m3):
            bc_b[i] = bc_edges[i][0]
            bc_c[i] = bc_edges[i][1]
        for i in range(n_b * n_c):
            hmask[i] = h_amask[i]
        for i in range(n_b):
            col_ab_full[i] = 0
        for i in range(n_c):
            col_ac_full[i] = 0
        for i in range(m1):
            col_ab_full[ab_b[i]] |= (<u64> 1) << ab_a[i]
        for i in range(m2):
            col_ac_full[ac_c[i]] |= (<u64> 1) << ac_a[i]
        for i in range(m3):
            am = col_ab_full[bc_b[i]] & col_ac_full[bc_c[i]]
            t_full += __builtin_popcountll(am)
            e_full += __builtin_popcountll(
                am & hmask[bc_b[i] * n_c + bc_c[i]])

        with nogil:
            hit = 0
            for abm in range(<u64> 1 << m1):
                if hit:
                    break
                for i in range(n_b):
                    col_ab[i] = 0
                rest = abm
                while rest:
                    low = rest & (~rest + 1)
                    k = _bit_index(low)
                    rest ^= low
                    col_ab[ab_b[k]] |= (<u64> 1) << ab_a[k]
                for acm in range(<u64> 1 << m2):
                    if hit:
                        break
                    for i in range(n_c):
                        col_ac[i] = 0
                    rest = acm
                    while rest:
                        low = rest & (~rest + 1)
                        k = _bit_index(low)
                        rest ^= low
                        col_ac[ac_c[k]] |= (<u64> 1) << ac_a[k]
                    t = 0
                    e = 0
                    bcm = 0
                    states += 1
                    if _violated(mode, t, e, t_full, e_full, num, den):
                        hit = 1
                        w_abm = abm; w_acm = acm; w_bcm = bcm
                        w_t = t; w_e = e
                        break
                    for g in range(1, <u64> 1 << m3):
                        k = _bit_index(g & (~g + 1))
                        bit = (<u64> 1) << k
                        bcm ^= bit
                        b = bc_b[k]
                        c = bc_c[k]
                        am = col_ab[b] & col_ac[c]
                        cnt = __builtin_popcountll(am)
                        hcnt = __builtin_popcountll(am & hmask[b * n_c + c])
                        if bcm & bit:
                            t += cnt
                            e += hcnt
                        else:
                            t -= cnt
                            e -= hcnt
                        states += 1
                        if _violated(mode, t, e, t_full, e_full, num, den):
                            hit = 1
                            w_abm = abm; w_acm = acm; w_bcm = bcm
                            w_t = t; w_e = e
                            break
        if hit:
            result = (int(w_abm), int(w_acm), int(w_bcm), int(w_t), int(w_e))
    finally:
        free(ab_a)
        free(ab_b)
        free(ac_a)
        free(ac_c)
        free(bc_b)
        free(bc_c)
        free(hmask)
        free(col_ab)
        free(col_ac)
        free(col_ab_full)
        free(col_ac_full)
    return result, int(states)


cdef inline int _violated(int mode, long long t, long long e,
                          long long t_full, long long e_full,
                          long long num, long long den) nogil:
    cdef int128 dev
    if t * den < num * t_full:
        return 0
    if mode == 0:
        return 3 * e * t_full < 2 * e_full * t
    dev = (<int128> e) * t_full - (<int128> e_full) * t
    if dev < 0:
        dev = -dev
    return dev * den > (<int128> num) * t_full * t
