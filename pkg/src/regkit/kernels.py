"""Kernel dispatch: compiled extension when available, pure Python otherwise.

The compiled twin is restricted to word-sized masks and int64/int128-safe
magnitudes; each wrapper falls back to the pure implementation outside those
limits, so callers always get exact results.
"""
from __future__ import annotations

from typing import Optional, Sequence

from . import _kernels_py as python_impl

try:  # pragma: no cover - exercised only when the extension is built
    from . import _kernels as compiled_impl  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover
    compiled_impl = None

BACKEND = "compiled" if compiled_impl is not None else "python"

_WORD = 64


def _fits_word(rows: Sequence[int]) -> bool:
    return all(0 <= r < (1 << _WORD) for r in rows)


def triangle_count(ab_rows: Sequence[int], ac_rows: Sequence[int],
                   bc_rows: Sequence[int]) -> int:
    """t(P): sum of codegrees over the AB edges of a triad."""
    if (compiled_impl is not None and len(ab_rows) <= _WORD
            and len(bc_rows) <= _WORD
            and _fits_word(ab_rows) and _fits_word(ac_rows)
            and _fits_word(bc_rows)):
        return compiled_impl.triangle_count(ab_rows, ac_rows, bc_rows)
    return python_impl.triangle_count(ab_rows, ac_rows, bc_rows)


def octahedron_fast_scaled(n: int, tau: int, ecount: int,
                           hm: Sequence[int], tm: Sequence[int]) -> int:
    """Octahedron sum times tau**8 as an exact integer (O(n^5) reorganization)."""
    if compiled_impl is not None and n <= 16:
        return compiled_impl.octahedron_fast_scaled(n, tau, ecount, hm, tm)
    return python_impl.octahedron_fast_scaled(n, tau, ecount, hm, tm)


def scan_subtriads(ab_edges: Sequence[tuple[int, int]],
                   ac_edges: Sequence[tuple[int, int]],
                   bc_edges: Sequence[tuple[int, int]],
                   n_a: int, n_b: int, n_c: int,
                   h_amask: Sequence[int], mode: int, num: int, den: int
                   ) -> tuple[Optional[tuple[int, int, int, int, int]], int]:
    """Exhaustive subtriad scan; see ``_kernels_py.scan_subtriads``."""
    # int64 safety: the predicate multiplies three counts <= t_full by den.
    t_bound = max(1, len(ab_edges)) * max(n_a, n_b, n_c)
    safe = (compiled_impl is not None and n_a <= _WORD
            and num < (1 << 30) and den < (1 << 30)
            and t_bound < (1 << 20))
    impl = compiled_impl if safe else python_impl
    return impl.scan_subtriads(ab_edges, ac_edges, bc_edges,
                               n_a, n_b, n_c, h_amask, mode, num, den)
