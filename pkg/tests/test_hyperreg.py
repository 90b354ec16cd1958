import itertools
import random
from fractions import Fraction

import pytest

from regkit import hyperreg
from regkit.errors import BudgetExceeded, ParameterOutOfContract
from regkit.graphs import (BipartiteGraph, ThreeGraph, Triad, VertexClass,
                           density)
from regkit.partitions import ThreePartiteFrame, complete_two_partition
from regkit.regcheck import CERTIFIED, IRREGULAR, CheckParams

EXH = CheckParams(mode="exhaustive")


def rg(rng, left, right, p):
    if p >= 1:
        return BipartiteGraph.complete(left, right)
    return BipartiteGraph(left, right,
                          [(a, b) for a in range(left.size)
                           for b in range(right.size) if rng.random() < p])


def random_h(rng, sizes, p):
    cls = tuple(VertexClass(i, s) for i, s in enumerate(sizes))
    return ThreeGraph(cls, frozenset(
        (a, b, c) for a in range(sizes[0]) for b in range(sizes[1])
        for c in range(sizes[2]) if rng.random() < p))


def test_aux_graph_edge_counts_all_axes():
    rng = random.Random(31)
    h = random_h(rng, (3, 4, 2), .5)
    for axis in (1, 2, 3):
        aux = hyperreg.auxiliary_graph(h, axis)
        assert aux.graph.edge_count == h.edge_count


def test_aux_graph_axis3_incidence():
    rng = random.Random(32)
    h = random_h(rng, (3, 3, 3), .5)
    aux = hyperreg.auxiliary_graph(h, 3)
    for a in range(3):
        for b in range(3):
            for c in range(3):
                assert aux.graph.has_edge(aux.product.index(a, b), c) \
                    == ((a, b, c) in h.triples)


def test_triad_density_product_form():
    """d(E, AxC, BxC) equals the aux-graph density, t(P) = |E| |C|."""
    rng = random.Random(33)
    for _ in range(20):
        na, nb, nc = (rng.randint(2, 5) for _ in range(3))
        h = random_h(rng, (na, nb, nc), .5)
        a, b = h.classes[0], h.classes[1]
        e_edges = [(x, y) for x in range(na) for y in range(nb)
                   if rng.random() < .6] or [(0, 0)]
        c_sub = sorted(rng.sample(range(nc), rng.randint(1, nc)))
        c_cls = VertexClass(2, len(c_sub))
        triad = Triad(BipartiteGraph(a, b, e_edges),
                      BipartiteGraph.complete(a, c_cls),
                      BipartiteGraph.complete(b, c_cls),
                      embedding=(tuple(range(na)), tuple(range(nb)),
                                 tuple(c_sub)))
        stats = hyperreg.triad_density(h, triad)
        assert stats.triangle_count == len(e_edges) * len(c_sub)
        hits = sum(1 for (x, y) in e_edges for c in c_sub
                   if (x, y, c) in h.triples)
        assert stats.density == Fraction(hits, len(e_edges) * len(c_sub))


def _octahedron_oracle(h, t):
    """Definition-literal 8-fold product sum, written independently."""
    n = t.sizes[0]
    ea, eb, ec = t.embedding
    tau = 0
    e = 0
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if (t.ab.has_edge(x, y) and t.ac.has_edge(x, z)
                        and t.bc.has_edge(y, z)):
                    tau += 1
                    if (ea[x], eb[y], ec[z]) in h.triples:
                        e += 1
    if tau == 0:
        return Fraction(0)
    d = Fraction(e, tau)
    total = Fraction(0)
    for xs in itertools.product(range(n), repeat=2):
        for ys in itertools.product(range(n), repeat=2):
            for zs in itertools.product(range(n), repeat=2):
                prod = Fraction(1)
                for x in xs:
                    for y in ys:
                        for z in zs:
                            if (t.ab.has_edge(x, y) and t.ac.has_edge(x, z)
                                    and t.bc.has_edge(y, z)):
                                ind = 1 if (ea[x], eb[y], ec[z]) in h.triples \
                                    else 0
                                prod *= Fraction(ind) - d
                            else:
                                prod = Fraction(0)
                if prod:
                    total += prod
    return total


def test_octahedron_naive_matches_fast_and_oracle():
    rng = random.Random(34)
    for _ in range(8):
        n = rng.choice([2, 3])
        cls = tuple(VertexClass(i, n) for i in range(3))
        h = ThreeGraph(cls, frozenset(
            (a, b, c) for a in range(n) for b in range(n) for c in range(n)
            if rng.random() < .5))
        t = Triad(rg(rng, cls[0], cls[1], .7), rg(rng, cls[0], cls[2], .7),
                  rg(rng, cls[1], cls[2], .7))
        naive = hyperreg.octahedron_sum_naive(h, t)
        fast = hyperreg.octahedron_sum_fast(h, t)
        assert naive == fast
        assert naive == _octahedron_oracle(h, t)
        assert naive >= 0


def test_octahedron_boundaries():
    cls = tuple(VertexClass(i, 3) for i in range(3))
    h = ThreeGraph.complete(cls)
    t = Triad.complete(*cls)
    assert hyperreg.octahedron_sum_naive(h, t) == 0
    assert hyperreg.octahedron_sum_fast(h, t) == 0
    h0 = ThreeGraph(cls, frozenset())
    assert hyperreg.octahedron_sum_fast(h0, t) == 0


def _subtriad_oracle_deviation(h, t, eps):
    """Enumerate all subtriads explicitly; None if eps-regular."""
    full = hyperreg.triad_density(h, t)
    for ab_sub in _powerset(sorted(t.ab.edges)):
        for ac_sub in _powerset(sorted(t.ac.edges)):
            for bc_sub in _powerset(sorted(t.bc.edges)):
                sub = Triad(
                    BipartiteGraph(t.ab.left, t.ab.right, ab_sub),
                    BipartiteGraph(t.ac.left, t.ac.right, ac_sub),
                    BipartiteGraph(t.bc.left, t.bc.right, bc_sub),
                    embedding=t.embedding)
                stats = hyperreg.triad_density(h, sub)
                if Fraction(stats.triangle_count) \
                        < eps * full.triangle_count:
                    continue
                if abs(stats.density - full.density) > eps:
                    return (ab_sub, ac_sub, bc_sub)
    return None


def _powerset(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def test_fr_triad_matches_brute_force():
    rng = random.Random(35)
    for _ in range(6):
        n = 2
        cls = tuple(VertexClass(i, n) for i in range(3))
        h = random_h(rng, (n, n, n), .5)
        t = Triad(rg(rng, cls[0], cls[1], .6), rg(rng, cls[0], cls[2], .6),
                  rg(rng, cls[1], cls[2], .6))
        for eps in (Fraction(1, 2), Fraction(1, 4)):
            verdict = hyperreg.check_fr_triad(h, t, eps, EXH)
            oracle = _subtriad_oracle_deviation(h, t, eps)
            assert (verdict.status == CERTIFIED) == (oracle is None)
            if verdict.status == IRREGULAR:
                assert hyperreg.verify_subtriad_witness(
                    h, t, verdict.witness[:3], hyperreg.MODE_DEVIATION, eps)


def test_exhaustive_budget_enforced():
    cls = tuple(VertexClass(i, 3) for i in range(3))
    h = ThreeGraph.complete(cls)
    t = Triad.complete(*cls)  # 27 edges > budget of 20
    with pytest.raises(BudgetExceeded):
        hyperreg.check_fr_triad(h, t, Fraction(1, 2), EXH)


def test_quasirandom_flags_unequal_densities():
    rng = random.Random(36)
    cls = tuple(VertexClass(i, 3) for i in range(3))
    h = random_h(rng, (3, 3, 3), .5)
    t = Triad(BipartiteGraph.complete(cls[0], cls[1]),
              rg(rng, cls[0], cls[2], .5), rg(rng, cls[1], cls[2], .5))
    rep = hyperreg.check_quasirandom_triad(h, t, Fraction(1, 2))
    assert rep.octahedron_sum >= 0
    if not (rep.d0 == rep.d1 == rep.d2):
        assert rep.unequal_densities


def test_schacht_predicate_contract():
    cls = tuple(VertexClass(i, 2) for i in range(3))
    h = ThreeGraph.complete(cls)
    t = Triad.complete(*cls)
    with pytest.raises(ParameterOutOfContract):
        hyperreg.schacht_predicate(t, h, Fraction(1, 2), 0)
    assert hyperreg.schacht_predicate(t, h, Fraction(1, 2), 2, EXH)


def test_counting_band_complete_sides_exact():
    rng = random.Random(37)
    a, b, c = (VertexClass(i, 4) for i in range(3))
    ab = rg(rng, a, b, .5)
    t = Triad(ab, BipartiteGraph.complete(a, c),
              BipartiteGraph.complete(b, c))
    band = hyperreg.triangle_count_bound(t, Fraction(0))
    assert band.in_band
    assert band.triangle_count == density(ab) * 4 * 4 * 4


def test_partition_triads_enumeration():
    frame = ThreePartiteFrame(tuple(VertexClass(i, 2) for i in range(3)))
    tp = complete_two_partition(frame.frame_partition())
    h = ThreeGraph.complete(frame.classes)
    triads = list(hyperreg.iter_partition_triads(h, tp))
    assert len(triads) == 1  # one cluster triple, ell = 1


def test_is_delta_good_complete():
    frame = ThreePartiteFrame(tuple(VertexClass(i, 2) for i in range(3)))
    tp = complete_two_partition(frame.frame_partition())
    assert hyperreg.is_delta_good(tp, Fraction(1, 4), EXH).certified


def test_full_reduction_pipeline_complete_instance():
    cls = tuple(VertexClass(i, 2) for i in range(3))
    frame = ThreePartiteFrame(cls)
    tp = complete_two_partition(frame.frame_partition())
    h = ThreeGraph.complete(cls)
    delta = Fraction(1, 16)
    eps2 = delta ** 2 / 88
    report = hyperreg.reduction_check(h, tp, delta, 1, 3, eps2, EXH)
    assert report.equip.passed
    assert report.hypothesis.holds
    assert report.eps2_bound_ok
    assert all(i.t_equals_e_times_c and i.densities_equal
               for i in report.identities)
    assert report.passed


def test_reduction_rejects_oversized_eps2():
    cls = tuple(VertexClass(i, 2) for i in range(3))
    frame = ThreePartiteFrame(cls)
    tp = complete_two_partition(frame.frame_partition())
    h = ThreeGraph.complete(cls)
    report = hyperreg.reduction_check(h, tp, Fraction(1, 16), 1, 3,
                                      Fraction(1, 2), EXH)
    assert not report.eps2_bound_ok
    assert not report.passed
