import random
from fractions import Fraction

import numpy as np
import pytest

from regkit.errors import ParameterOutOfContract
from regkit.graphs import BipartiteGraph, VertexClass
from regkit.partitions import VertexPartition
from regkit.regcheck import (AFTER_EDITS, CERTIFIED, IRREGULAR,
                             NOT_CERTIFIED, PERFECT, UNKNOWN, CheckParams,
                             Threshold, check_delta_partition_with_edits,
                             check_delta_regular, check_eps_regular,
                             check_perfect_delta_partition, degree_profile,
                             find_delta_witness_greedy, verify_delta_witness,
                             verify_eps_witness)

EXH = CheckParams(mode="exhaustive")


def random_graph(rng, na, nb, p):
    return BipartiteGraph(VertexClass(0, na), VertexClass(1, nb),
                          [(a, b) for a in range(na) for b in range(nb)
                           if rng.random() < p])


def _subset_tables(g):
    """All subset edge counts via two integer matrix products."""
    na, nb = g.left.size, g.right.size
    m = np.zeros((na, nb), dtype=np.int64)
    for a, b in g.edges:
        m[a, b] = 1
    amasks = np.arange(1 << na)
    bmasks = np.arange(1 << nb)
    amem = ((amasks[:, None] >> np.arange(na)[None, :]) & 1).astype(np.int64)
    bmem = ((bmasks[:, None] >> np.arange(nb)[None, :]) & 1).astype(np.int64)
    counts = amem @ m @ bmem.T          # e(A', B') for every mask pair
    ka = amem.sum(axis=1)
    kb = bmem.sum(axis=1)
    return counts, ka, kb


def oracle_eps_regular(g, eps):
    """Literal quantifier sweep over all subset pairs, exact integers."""
    na, nb = g.left.size, g.right.size
    e = g.edge_count
    counts, ka, kb = _subset_tables(g)
    num, den = eps.numerator, eps.denominator
    qa = (ka * den >= num * na) & (ka > 0)
    qb = (kb * den >= num * nb) & (kb > 0)
    kk = ka[:, None] * kb[None, :]
    lhs = np.abs(counts * na * nb - e * kk) * den
    rhs = num * kk * na * nb
    viol = (lhs > rhs) & qa[:, None] & qb[None, :]
    return not bool(viol.any())


def oracle_delta_regular(g, delta):
    na, nb = g.left.size, g.right.size
    e = g.edge_count
    counts, ka, kb = _subset_tables(g)
    num, den = delta.numerator, delta.denominator
    qa = (ka * den >= num * na) & (ka > 0)
    qb = (kb * den >= num * nb) & (kb > 0)
    viol = (2 * counts * na * nb < e * ka[:, None] * kb[None, :]) \
        & qa[:, None] & qb[None, :]
    return not bool(viol.any())


def test_eps_verdicts_match_oracle():
    rng = random.Random(101)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 7), rng.randint(2, 7),
                         rng.choice([.2, .5, .8]))
        for eps in (Fraction(1, 4), Fraction(1, 2)):
            verdict = check_eps_regular(g, eps, EXH)
            assert verdict.status in (CERTIFIED, IRREGULAR)
            assert (verdict.status == CERTIFIED) == oracle_eps_regular(g, eps)
            if verdict.status == IRREGULAR:
                assert verify_eps_witness(g, eps, verdict.witness)


def test_delta_verdicts_match_oracle():
    rng = random.Random(102)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 7), rng.randint(2, 7),
                         rng.choice([.2, .5, .8]))
        for delta in (Fraction(1, 4), Fraction(1, 2)):
            verdict = check_delta_regular(g, delta, EXH)
            assert verdict.status in (CERTIFIED, IRREGULAR)
            assert (verdict.status == CERTIFIED) == oracle_delta_regular(
                g, delta)
            if verdict.status == IRREGULAR:
                assert verify_delta_witness(g, delta, verdict.witness)


def test_pinned_examples():
    a, b = VertexClass(0, 8), VertexClass(1, 8)
    complete = BipartiteGraph.complete(a, b)
    assert check_delta_regular(complete, Fraction(1, 4), EXH).status \
        == CERTIFIED
    assert check_eps_regular(complete, Fraction(1, 100), EXH).status \
        == CERTIFIED
    empty = BipartiteGraph.empty(a, b)
    assert check_delta_regular(empty, Fraction(1, 4), EXH).status == CERTIFIED
    half = BipartiteGraph(a, b, [(i, j) for i in range(8) for j in range(8)
                                 if (i < 4) == (j < 4)])
    assert check_delta_regular(half, Fraction(1, 4), EXH).status == IRREGULAR
    assert check_eps_regular(half, Fraction(1, 4), EXH).status == IRREGULAR


def test_threshold_floor_and_sqrt():
    thr = Threshold(Fraction(1, 4))
    assert thr.floor_ok(1, 4) and not thr.floor_ok(0, 4)
    s = Threshold.sqrt_of(Fraction(1, 4))  # sqrt(1/4) = 1/2
    assert s.floor_ok(2, 4) and not s.floor_ok(1, 4)


def test_threshold_contract():
    g = BipartiteGraph.complete(VertexClass(0, 3), VertexClass(1, 3))
    with pytest.raises(ParameterOutOfContract):
        check_delta_regular(g, Fraction(3, 2), EXH)
    with pytest.raises(ParameterOutOfContract):
        check_eps_regular(g, Fraction(0), EXH)


def test_randomized_mode_never_claims_certified():
    rng = random.Random(103)
    params = CheckParams(mode="randomized", random_trials=32, seed=5)
    for _ in range(10):
        g = random_graph(rng, 6, 6, .5)
        v = check_delta_regular(g, Fraction(1, 4), params)
        assert v.status in (IRREGULAR, UNKNOWN)
        if v.status == IRREGULAR:
            assert verify_delta_witness(g, Fraction(1, 4), v.witness)


def test_greedy_witness_search_verifies():
    rng = random.Random(104)
    found = 0
    for _ in range(10):
        g = random_graph(rng, 7, 7, .5)
        w = find_delta_witness_greedy(g, Fraction(1, 4), seed=7)
        if w is not None:
            assert verify_delta_witness(g, Fraction(1, 4), w)
            found += 1
    assert found > 0


def test_perfect_partition_singletons_certify():
    rng = random.Random(105)
    g = random_graph(rng, 5, 5, .5)
    left = VertexPartition.singletons(g.left)
    right = VertexPartition.singletons(g.right)
    v = check_perfect_delta_partition(g, left, right, Fraction(1, 4), EXH)
    assert v.status == CERTIFIED


def test_edit_budget_respected():
    rng = random.Random(106)
    for _ in range(10):
        g = random_graph(rng, 8, 8, .5)
        left = VertexPartition.from_labels(g.left, [i // 4 for i in range(8)])
        right = VertexPartition.from_labels(g.right,
                                            [i // 4 for i in range(8)])
        delta = Fraction(1, 4)
        res = check_delta_partition_with_edits(g, left, right, delta, EXH)
        assert res.status in (PERFECT, AFTER_EDITS, NOT_CERTIFIED)
        assert Fraction(len(res.edits)) <= delta * g.edge_count
        assert set(res.edits) <= g.edges


def test_degree_profile_counts():
    a, b = VertexClass(0, 4), VertexClass(1, 4)
    g = BipartiteGraph(a, b, [(0, j) for j in range(4)])
    count, exceptional = degree_profile(g, [0, 1, 2, 3], Fraction(1, 8))
    # density 1/4; vertex 0 has degree 4, the rest 0
    assert count == 4
    assert exceptional == (0, 1, 2, 3)
