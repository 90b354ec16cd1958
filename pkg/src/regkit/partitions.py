"""Vertex partitions, edge partitions, 2-partitions, and the exact and
approximate refinement algebra.

All set arithmetic is exact.  The approximate containment ``S c_beta T``
means ``|S \\ T| < beta * |S|`` (strict, as defined), with the degenerate
reading that ``S c_0 T`` iff ``S`` is an ordinary subset of ``T``; this makes
``beta = 0`` coincide with exact refinement.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (ClassMismatch, DegenerateInput, FrameMismatch,
                     GroundMismatch, NotDisjoint, ParameterOutOfContract,
                     PreconditionFailed)
from .graphs import BipartiteGraph, ProductSide, VertexClass

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class VertexPartition:
    """A partition of 0..ground.size-1 into disjoint nonempty blocks."""

    ground: VertexClass
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise DegenerateInput("partition with no blocks")
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise DegenerateInput("empty partition block")
            if block & seen:
                raise NotDisjoint("partition blocks overlap")
            seen |= block
        if seen != set(range(self.ground.size)):
            raise DegenerateInput("partition blocks do not cover the ground")

    @property
    def order(self) -> int:
        return len(self.blocks)

    def block_of(self, v: int) -> int:
        for i, block in enumerate(self.blocks):
            if v in block:
                return i
        raise IndexError(f"vertex {v} not in ground set")

    def labels(self) -> list[int]:
        out = [0] * self.ground.size
        for i, block in enumerate(self.blocks):
            for v in block:
                out[v] = i
        return out

    @staticmethod
    def from_labels(ground: VertexClass, labels: Sequence[int]
                    ) -> "VertexPartition":
        if len(labels) != ground.size:
            raise DegenerateInput("label vector length != ground size")
        k = max(labels, default=-1) + 1
        blocks = [set() for _ in range(k)]
        for v, lab in enumerate(labels):
            blocks[lab].add(v)
        return VertexPartition(ground, tuple(frozenset(b) for b in blocks
                                             if b))

    @staticmethod
    def single_block(ground: VertexClass) -> "VertexPartition":
        return VertexPartition(ground, (frozenset(range(ground.size)),))

    @staticmethod
    def singletons(ground: VertexClass) -> "VertexPartition":
        return VertexPartition(
            ground, tuple(frozenset((v,)) for v in range(ground.size)))


@dataclass(frozen=True)
class EdgePartition:
    """A partition of a complete bipartite product into edge-disjoint graphs."""

    carrier: ProductSide
    blocks: tuple[BipartiteGraph, ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise DegenerateInput("edge partition with no blocks")
        total = 0
        seen: set[tuple[int, int]] = set()
        for g in self.blocks:
            if g.left != self.carrier.first or g.right != self.carrier.second:
                raise ClassMismatch("edge block not on the carrier classes")
            if seen & g.edges:
                raise NotDisjoint("edge blocks overlap")
            seen |= g.edges
            total += g.edge_count
        if total != self.carrier.size:
            raise DegenerateInput("edge blocks do not cover the product")

    @property
    def order(self) -> int:
        return len(self.blocks)

    def as_vertex_partition(self) -> VertexPartition:
        """The same partition read over the linearized product side."""
        ground = self.carrier.as_vertex_class()
        blocks = tuple(
            frozenset(self.carrier.index(a, b) for a, b in g.edges)
            for g in self.blocks)
        return VertexPartition(ground, blocks)


@dataclass(frozen=True)
class ThreePartiteFrame:
    """Three disjoint vertex classes sharing one combined index space.

    Class ``i`` occupies combined indices ``offset(i) .. offset(i)+n_i``.
    """

    classes: tuple[VertexClass, VertexClass, VertexClass]

    def offset(self, i: int) -> int:
        return sum(c.size for c in self.classes[:i])

    @property
    def total(self) -> int:
        return sum(c.size for c in self.classes)

    def combined_class(self, label: int = -2) -> VertexClass:
        return VertexClass(label, self.total)

    def class_of(self, v: int) -> int:
        off = 0
        for i, c in enumerate(self.classes):
            if v < off + c.size:
                return i
            off += c.size
        raise IndexError(f"combined index {v} out of range")

    def to_local(self, i: int, v: int) -> int:
        return v - self.offset(i)

    def to_combined(self, i: int, v: int) -> int:
        return v + self.offset(i)

    def frame_partition(self) -> VertexPartition:
        blocks = []
        off = 0
        for c in self.classes:
            blocks.append(frozenset(range(off, off + c.size)))
            off += c.size
        return VertexPartition(self.combined_class(), tuple(blocks))


@dataclass(frozen=True)
class EdgeBlock:
    """A bipartite graph of a 2-partition, tagged with its cluster pair.

    Edges are stored as pairs of combined vertex indices, oriented so that the
    first endpoint lies in cluster ``pair[0]`` and the second in ``pair[1]``.
    """

    pair: tuple[int, int]
    edges: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class TwoPartition:
    """A vertex partition plus bipartite graphs covering every cluster pair."""

    z: VertexPartition
    e: tuple[EdgeBlock, ...]

    def validate(self) -> list[str]:
        return validate_two_partition(self)

    def require_valid(self) -> "TwoPartition":
        problems = self.validate()
        if problems:
            raise DegenerateInput("; ".join(problems))
        return self

    def blocks_for_pair(self, i: int, j: int) -> list[EdgeBlock]:
        """Blocks between clusters i and j, edges oriented (i, j)."""
        out = []
        for eb in self.e:
            if eb.pair == (i, j):
                out.append(eb)
            elif eb.pair == (j, i):
                out.append(EdgeBlock((i, j),
                                     frozenset((v, u) for u, v in eb.edges)))
        return out


def complete_two_partition(z: VertexPartition) -> TwoPartition:
    """The 2-partition whose edge family has one complete graph per pair."""
    blocks = []
    for i in range(z.order):
        for j in range(i + 1, z.order):
            blocks.append(EdgeBlock((i, j), frozenset(
                (u, v) for u in z.blocks[i] for v in z.blocks[j])))
    return TwoPartition(z, tuple(blocks))


# ---------------------------------------------------------------------------
# Refinement algebra


def _require_same_ground(q: VertexPartition, p: VertexPartition) -> None:
    if q.ground != p.ground:
        raise GroundMismatch(
            f"grounds differ: {q.ground} vs {p.ground}")


def refines(q: VertexPartition, p: VertexPartition) -> bool:
    """True iff every block of q is contained in some block of p."""
    _require_same_ground(q, p)
    owner = p.labels()
    for block in q.blocks:
        it = iter(block)
        lab = owner[next(it)]
        if any(owner[v] != lab for v in it):
            return False
    return True


def approx_subset(s: frozenset, t: frozenset, beta: Fraction) -> bool:
    """Approximate containment: |s \\ t| < beta*|s| (s subset of t if beta=0)."""
    beta = Fraction(beta)
    if beta < 0:
        raise ParameterOutOfContract("beta must be >= 0")
    if not s:
        raise DegenerateInput("approximate containment of an empty set")
    astray = len(s - t)
    if astray == 0:
        return True
    return astray < beta * len(s)


def approx_member(s: frozenset, p: VertexPartition,
                  beta: Fraction) -> Optional[int]:
    """Index of the unique block with s c_beta block, or None.

    Requires beta <= 1/2, which guarantees uniqueness of the witness.
    """
    beta = Fraction(beta)
    if beta > HALF:
        raise ParameterOutOfContract("beta must be <= 1/2 for uniqueness")
    for i, block in enumerate(p.blocks):
        if approx_subset(s, block, beta):
            return i
    return None


def approx_refines(q: VertexPartition, p: VertexPartition,
                   beta: Fraction) -> bool:
    """Mass of q-blocks not beta-inside any p-block is at most beta*n."""
    _require_same_ground(q, p)
    beta = Fraction(beta)
    if beta > HALF:
        raise ParameterOutOfContract("beta must be <= 1/2")
    stray = sum(len(block) for block in q.blocks
                if approx_member(block, p, beta) is None)
    return stray <= beta * q.ground.size


def common_refinement(p: VertexPartition,
                      q: VertexPartition) -> VertexPartition:
    """All nonempty pairwise intersections, ordered by (p-block, q-block)."""
    _require_same_ground(p, q)
    blocks = []
    for pb in p.blocks:
        for qb in q.blocks:
            inter = pb & qb
            if inter:
                blocks.append(inter)
    return VertexPartition(p.ground, tuple(blocks))


def is_equitable(p: VertexPartition) -> bool:
    sizes = {len(b) for b in p.blocks}
    return len(sizes) == 1


def refinement_union_extract(q: VertexPartition, p: VertexPartition,
                             delta: Fraction
                             ) -> tuple[frozenset[int], frozenset[int]]:
    """A block P of p and the union Q of q-blocks delta-inside it, with
    |P symdiff Q| <= 3*delta*|P|.

    Constructive form of the refinement-union bound: among all blocks the one
    minimizing the relative symmetric difference is returned (an averaging
    argument shows the bound holds for it).
    """
    delta = Fraction(delta)
    if not approx_refines(q, p, delta):
        raise PreconditionFailed("q is not an approximate refinement of p")
    best = None
    for pb in p.blocks:
        union: set[int] = set()
        for qb in q.blocks:
            if approx_subset(qb, pb, delta):
                union |= qb
        sym = len(pb ^ union)
        key = Fraction(sym, len(pb))
        if best is None or key < best[0]:
            best = (key, pb, frozenset(union))
    assert best is not None
    _, pb, union = best
    if Fraction(len(pb ^ union)) > 3 * delta * len(pb):
        # Cannot happen when the precondition holds; guard against misuse.
        raise PreconditionFailed("no block meets the symmetric-difference bound")
    return pb, union


def restrict_vertex_partition(p: VertexPartition,
                              sub: Iterable[int]) -> VertexPartition:
    """Traces of p's blocks on ``sub`` (empty traces dropped).

    The restricted ground is reindexed 0..|sub|-1 in the order of the
    original indices.
    """
    sub = sorted(set(sub))
    if not sub:
        raise DegenerateInput("restriction to an empty subset")
    for v in sub:
        if not 0 <= v < p.ground.size:
            raise IndexError(f"subset vertex {v} out of range")
    pos = {v: i for i, v in enumerate(sub)}
    ground = VertexClass(p.ground.id, len(sub))
    blocks = tuple(frozenset(pos[v] for v in block if v in pos)
                   for block in p.blocks)
    return VertexPartition(ground, tuple(b for b in blocks if b))


def validate_two_partition(tp: TwoPartition) -> list[str]:
    """Structured violations of the 2-partition invariants (empty iff valid)."""
    problems: list[str] = []
    z = tp.z
    owner = z.labels()
    n = z.ground.size
    by_pair: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for eb in tp.e:
        i, j = eb.pair
        if i == j or not (0 <= i < z.order and 0 <= j < z.order):
            problems.append(f"edge block tagged with bad pair ({i},{j})")
            continue
        for (u, v) in eb.edges:
            if not (0 <= u < n and 0 <= v < n):
                problems.append(f"pair ({i},{j}): edge ({u},{v}) out of range")
            elif owner[u] != i or owner[v] != j:
                problems.append(
                    f"pair ({i},{j}): edge ({u},{v}) not between the clusters")
        key = (min(i, j), max(i, j))
        oriented = eb.edges if i < j else frozenset(
            (v, u) for u, v in eb.edges)
        by_pair.setdefault(key, []).append(sorted(oriented))
    for i in range(z.order):
        for j in range(i + 1, z.order):
            complete = {(u, v) for u in z.blocks[i] for v in z.blocks[j]}
            got: list[tuple[int, int]] = []
            for chunk in by_pair.get((i, j), []):
                got.extend(chunk)
            gotset = set(got)
            if len(got) != len(gotset):
                problems.append(f"pair ({i},{j}): duplicated edge (NotDisjoint)")
            missing = complete - gotset
            if missing:
                problems.append(
                    f"pair ({i},{j}): {len(missing)} product edge(s) missing")
            extra = gotset - complete
            if extra:
                problems.append(
                    f"pair ({i},{j}): {len(extra)} foreign edge(s) present")
    return problems


def restrict_two_partition(tp: TwoPartition,
                           sub: Iterable[int]) -> TwoPartition:
    """Restriction of a 2-partition to a subset of the combined ground.

    Vertex blocks become traces; edge blocks keep only edges with both
    endpoints surviving.  The ground is reindexed to 0..|sub|-1.
    """
    sub = sorted(set(sub))
    if not sub:
        raise DegenerateInput("restriction to an empty subset")
    pos = {v: i for i, v in enumerate(sub)}
    zr = restrict_vertex_partition(tp.z, sub)
    # Map old cluster index -> new cluster index (None if the trace is empty).
    newidx: dict[int, int] = {}
    k = 0
    for i, block in enumerate(tp.z.blocks):
        if any(v in pos for v in block):
            newidx[i] = k
            k += 1
    blocks = []
    for eb in tp.e:
        i, j = eb.pair
        if i not in newidx or j not in newidx:
            continue
        kept = frozenset((pos[u], pos[v]) for u, v in eb.edges
                         if u in pos and v in pos)
        if kept:
            blocks.append(EdgeBlock((newidx[i], newidx[j]), kept))
    out = TwoPartition(zr, tuple(blocks))
    return out.require_valid()


def sub_partitions(tp: TwoPartition, frame: ThreePartiteFrame
                   ) -> tuple[tuple[VertexPartition, VertexPartition,
                                    VertexPartition],
                              tuple[EdgePartition, EdgePartition,
                                    EdgePartition]]:
    """Project a 2-partition onto a 3-partite frame.

    Returns (Z_1, Z_2, Z_3) as partitions of the individual classes (local
    indices) and (E_1, E_2, E_3) where E_i partitions V_j x V_k,
    {i, j, k} = {1, 2, 3}.
    """
    z = tp.z
    if z.ground.size != frame.total:
        raise FrameMismatch("2-partition ground differs from the frame")
    # The ground's class id is advisory (loaded files use 0); align it
    # with the frame before the refinement test.
    z = VertexPartition(frame.combined_class(), z.blocks)
    if not refines(z, frame.frame_partition()):
        raise FrameMismatch("vertex partition does not refine the frame")
    cls_of_block = [frame.class_of(next(iter(b))) for b in z.blocks]

    zs = []
    for i in range(3):
        off = frame.offset(i)
        blocks = tuple(frozenset(v - off for v in b)
                       for b, c in zip(z.blocks, cls_of_block) if c == i)
        zs.append(VertexPartition(frame.classes[i], blocks))

    pair_for_axis = {0: (1, 2), 1: (0, 2), 2: (0, 1)}
    es = []
    for axis in range(3):
        j, k = pair_for_axis[axis]
        carrier = ProductSide(frame.classes[j], frame.classes[k])
        offj, offk = frame.offset(j), frame.offset(k)
        graphs = []
        for eb in tp.e:
            ci, cj = cls_of_block[eb.pair[0]], cls_of_block[eb.pair[1]]
            if {ci, cj} != {j, k}:
                continue
            if ci == j:
                edges = [(u - offj, v - offk) for u, v in eb.edges]
            else:
                edges = [(v - offj, u - offk) for u, v in eb.edges]
            if edges:
                graphs.append(BipartiteGraph(frame.classes[j],
                                             frame.classes[k], edges))
        es.append(EdgePartition(carrier, tuple(graphs)))
    return (tuple(zs), tuple(es))
