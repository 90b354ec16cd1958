"""Compiled and pure-Python kernels must agree bit for bit."""
import random

import pytest

from regkit import kernels
from regkit import _kernels_py as pure

compiled = kernels.compiled_impl

needs_compiled = pytest.mark.skipif(compiled is None,
                                    reason="compiled backend not built")


def _random_rows(rng, n_left, n_right, p):
    return [sum(1 << b for b in range(n_right) if rng.random() < p)
            for _ in range(n_left)]


def _random_triad_rows(rng, n, p=0.5):
    return (_random_rows(rng, n, n, p), _random_rows(rng, n, n, p),
            _random_rows(rng, n, n, p))


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")
    assert pure.BACKEND_NAME == "python"


@needs_compiled
def test_triangle_count_agreement():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 10)
        ab, ac, bc = _random_triad_rows(rng, n, rng.choice([.2, .5, .8]))
        assert (pure.triangle_count(ab, ac, bc)
                == compiled.triangle_count(ab, ac, bc))


@needs_compiled
def test_octahedron_agreement():
    rng = random.Random(12)
    for _ in range(40):
        n = rng.randint(1, 6)
        tm = [0] * (n * n)
        hm = [0] * (n * n)
        for xy in range(n * n):
            tm[xy] = sum(1 << z for z in range(n) if rng.random() < .7)
            hm[xy] = tm[xy] & sum(1 << z for z in range(n)
                                  if rng.random() < .6)
        tau = sum(m.bit_count() for m in tm)
        ecount = sum(m.bit_count() for m in hm)
        got_c = compiled.octahedron_fast_scaled(n, tau, ecount, hm, tm)
        got_p = pure.octahedron_fast_scaled(n, tau, ecount, hm, tm)
        assert got_c == got_p


@needs_compiled
def test_scan_subtriads_agreement_both_modes():
    rng = random.Random(13)
    checked_witness = 0
    for _ in range(60):
        n = 2
        ab = [(a, b) for a in range(n) for b in range(n)
              if rng.random() < .7]
        ac = [(a, c) for a in range(n) for c in range(n)
              if rng.random() < .7]
        bc = [(b, c) for b in range(n) for c in range(n)
              if rng.random() < .7]
        hma = [sum(1 << c for c in range(n) if rng.random() < .5)
               for _ in range(n * n)]
        for mode in (0, 1):
            num, den = rng.choice([(1, 2), (1, 3), (2, 3)])
            got_c = compiled.scan_subtriads(ab, ac, bc, n, n, n, hma,
                                            mode, num, den)
            got_p = pure.scan_subtriads(ab, ac, bc, n, n, n, hma,
                                        mode, num, den)
            assert got_c == got_p
            if got_c[0] is not None:
                checked_witness += 1
    assert checked_witness > 0


@needs_compiled
def test_scan_witness_canonical_order_regression():
    """The compiled scan once reported the loop counter one step past the
    detected AC mask; both backends must return the mask where the
    violation was actually found."""
    rng = random.Random(20240)
    for _ in range(150):
        n = 2
        ab = [(a, b) for a in range(n) for b in range(n)
              if rng.random() < .8]
        ac = [(a, c) for a in range(n) for c in range(n)
              if rng.random() < .8]
        bc = [(b, c) for b in range(n) for c in range(n)
              if rng.random() < .8]
        hma = [sum(1 << c for c in range(n) if rng.random() < .4)
               for _ in range(n * n)]
        got_c = compiled.scan_subtriads(ab, ac, bc, n, n, n, hma, 1, 1, 2)
        got_p = pure.scan_subtriads(ab, ac, bc, n, n, n, hma, 1, 1, 2)
        assert got_c[0] == got_p[0]


def test_dispatch_falls_back_on_large_instances():
    # Dispatch limits route oversized instances to the Python kernel.
    rng = random.Random(14)
    n = 70
    rows = _random_rows(rng, n, n, 0.05)
    got = kernels.triangle_count(rows, rows, rows)
    assert got == pure.triangle_count(rows, rows, rows)
