"""Pure-Python counting kernels.

Reference implementations of the hot inner loops; a compiled twin lives in
``_kernels.pyx``.  Both expose the same three entry points and must agree
exactly.  Masks are Python ints (bit z of ``hm[x*n+y]`` says whether
(x, y, z) is a hyperedge-carrying triangle, etc.).
"""
from __future__ import annotations

from typing import Optional, Sequence

BACKEND_NAME = "python"


def triangle_count(ab_rows: Sequence[int], ac_rows: Sequence[int],
                   bc_rows: Sequence[int]) -> int:
    """Triangles of a triad: sum of codegrees over the AB edges."""
    total = 0
    for a, mask in enumerate(ab_rows):
        ac = ac_rows[a]
        while mask:
            low = mask & -mask
            b = low.bit_length() - 1
            mask ^= low
            total += (ac & bc_rows[b]).bit_count()
    return total


def octahedron_fast_scaled(n: int, tau: int, ecount: int,
                           hm: Sequence[int], tm: Sequence[int]) -> int:
    """Octahedron sum scaled by tau**8, via the z-collapse reorganization.

    Entry (x, y, z) of the scaled weight function is tau - ecount on
    hyperedge triangles, -ecount on the remaining triangles, 0 elsewhere.
    Runs in O(n^5); the returned integer is a sum of squares, hence >= 0.
    """
    hi = tau - ecount
    lo = -ecount
    vals = []
    for xy in range(n * n):
        h = hm[xy]
        t = tm[xy]
        vals.append(tuple(hi if (h >> z) & 1 else (lo if (t >> z) & 1 else 0)
                          for z in range(n)))
    total = 0
    rng = range(n)
    for x0 in rng:
        base0 = x0 * n
        for x1 in rng:
            base1 = x1 * n
            for y0 in rng:
                g00 = vals[base0 + y0]
                g10 = vals[base1 + y0]
                for y1 in rng:
                    g01 = vals[base0 + y1]
                    g11 = vals[base1 + y1]
                    s = 0
                    for z in rng:
                        s += g00[z] * g01[z] * g10[z] * g11[z]
                    total += s * s
    return total


def scan_subtriads(ab_edges: Sequence[tuple[int, int]],
                   ac_edges: Sequence[tuple[int, int]],
                   bc_edges: Sequence[tuple[int, int]],
                   n_a: int, n_b: int, n_c: int,
                   h_amask: Sequence[int],
                   mode: int, num: int, den: int
                   ) -> tuple[Optional[tuple[int, int, int, int, int]], int]:
    """Enumerate every subtriad and report the first predicate violation.

    Subtriads are all subsets of the three edge lists.  ``h_amask[b*n_c+c]``
    is the bitmask of A-vertices a with (a, b, c) a hyperedge.  With the full
    triad carrying ``t_full`` triangles and ``e_full`` hyperedge triangles,
    a subtriad with counts (t, e) violates:

    * mode 0: t*den >= num*t_full and 3*e*t_full < 2*e_full*t
      (triangle-heavy subtriad loses more than a third of the density);
    * mode 1: t*den >= num*t_full and |e*t_full - e_full*t|*den > num*t_full*t
      (triangle-heavy subtriad deviates by more than num/den in density).

    Returns ((ab_mask, ac_mask, bc_mask, t, e) or None, states_examined).
    The scan is exhaustive iff the first component is None.
    """
    m1, m2, m3 = len(ab_edges), len(ac_edges), len(bc_edges)

    col_ab_full = [0] * n_b
    for a, b in ab_edges:
        col_ab_full[b] |= 1 << a
    col_ac_full = [0] * n_c
    for a, c in ac_edges:
        col_ac_full[c] |= 1 << a
    t_full = 0
    e_full = 0
    for b, c in bc_edges:
        am = col_ab_full[b] & col_ac_full[c]
        t_full += am.bit_count()
        e_full += (am & h_amask[b * n_c + c]).bit_count()

    if mode == 0:
        def violated(t: int, e: int) -> bool:
            return t * den >= num * t_full and 3 * e * t_full < 2 * e_full * t
    else:
        def violated(t: int, e: int) -> bool:
            return (t * den >= num * t_full
                    and abs(e * t_full - e_full * t) * den > num * t_full * t)

    states = 0
    for abm in range(1 << m1):
        col_ab = [0] * n_b
        rest = abm
        while rest:
            low = rest & -rest
            a, b = ab_edges[low.bit_length() - 1]
            rest ^= low
            col_ab[b] |= 1 << a
        for acm in range(1 << m2):
            col_ac = [0] * n_c
            rest = acm
            while rest:
                low = rest & -rest
                a, c = ac_edges[low.bit_length() - 1]
                rest ^= low
                col_ac[c] |= 1 << a
            # Gray walk over BC subsets, maintaining (t, e) incrementally.
            t = 0
            e = 0
            bcm = 0
            states += 1
            if violated(t, e):
                return (abm, acm, bcm, t, e), states
            for g in range(1, 1 << m3):
                k = (g & -g).bit_length() - 1
                bit = 1 << k
                bcm ^= bit
                b, c = bc_edges[k]
                am = col_ab[b] & col_ac[c]
                cnt = am.bit_count()
                hcnt = (am & h_amask[b * n_c + c]).bit_count()
                if bcm & bit:
                    t += cnt
                    e += hcnt
                else:
                    t -= cnt
                    e -= hcnt
                states += 1
                if violated(t, e):
                    return (abm, acm, bcm, t, e), states
    return None, states
