"""Line-oriented file formats with canonical (sorted, deterministic) output.

Formats (``#`` starts a comment, blank lines ignored):

* ``.bg``   bipartite graph: ``bg <nLeft> <nRight> <m>`` then m lines ``l r``
* ``.h3``   3-graph: ``h3 <n1> <n2> <n3> <m>`` then m lines ``v1 v2 v3``
* ``.vp``   vertex partition: ``vp <n> <k>`` then one line of n labels
* ``.tr``   triad: ``tr <nA> <nB> <nC>`` then three inline bg sections
            (AB, AC, BC)
* ``.tp``   2-partition: a vp section, then per edge block a line
            ``pair <i> <j>`` followed by a bg section whose sides are the
            cluster sizes; edge endpoints are local indices into the
            sorted vertex lists of the two clusters

Loading then saving yields the canonical form (edges sorted
lexicographically); saving a loaded canonical file is byte-identical.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .errors import FormatError
from .graphs import BipartiteGraph, ThreeGraph, VertexClass
from .partitions import EdgeBlock, TwoPartition, VertexPartition


class _Lines:
    """Token-line reader that tracks line numbers for error messages."""

    def __init__(self, text: str):
        self.raw = text.splitlines()
        self.pos = 0

    def next_fields(self) -> tuple[list[str], int]:
        while self.pos < len(self.raw):
            self.pos += 1
            line = self.raw[self.pos - 1]
            body = line.split("#", 1)[0].strip()
            if body:
                return body.split(), self.pos
        raise FormatError("unexpected end of file", len(self.raw))

    def at_end(self) -> bool:
        save = self.pos
        try:
            self.next_fields()
        except FormatError:
            return True
        self.pos = save
        return False


def _ints(fields: Sequence[str], line: int, expect: int,
          what: str) -> list[int]:
    if len(fields) != expect:
        raise FormatError(
            f"{what}: expected {expect} fields, got {len(fields)}", line)
    out = []
    for f in fields:
        try:
            out.append(int(f))
        except ValueError:
            raise FormatError(f"{what}: bad integer {f!r}", line) from None
    return out


def _header(lines: _Lines, tag: str, arity: int) -> tuple[list[int], int]:
    fields, ln = lines.next_fields()
    if fields[0] != tag:
        raise FormatError(f"expected {tag!r} header, got {fields[0]!r}", ln)
    return _ints(fields[1:], ln, arity, f"{tag} header"), ln


def _read_bg(lines: _Lines, left: VertexClass, right: VertexClass,
             expect_sides: Optional[tuple[int, int]] = None
             ) -> BipartiteGraph:
    (nl, nr, m), ln = _header(lines, "bg", 3)
    if expect_sides is not None and (nl, nr) != expect_sides:
        raise FormatError(
            f"bg sides {nl}x{nr} do not match expected "
            f"{expect_sides[0]}x{expect_sides[1]}", ln)
    if (left.size, right.size) != (nl, nr):
        left = VertexClass(left.id, nl)
        right = VertexClass(right.id, nr)
    edges = []
    seen = set()
    for _ in range(m):
        fields, eln = lines.next_fields()
        a, b = _ints(fields, eln, 2, "edge")
        if not (0 <= a < nl and 0 <= b < nr):
            raise FormatError(f"edge ({a},{b}) out of range "
                              f"{nl}x{nr}", eln)
        if (a, b) in seen:
            raise FormatError(f"duplicate edge ({a},{b})", eln)
        seen.add((a, b))
        edges.append((a, b))
    return BipartiteGraph(left, right, edges)


def loads_graph(text: str) -> BipartiteGraph:
    lines = _Lines(text)
    g = _read_bg(lines, VertexClass(0, 1), VertexClass(1, 1))
    if not lines.at_end():
        fields, ln = lines.next_fields()
        raise FormatError(f"trailing content {' '.join(fields)!r}", ln)
    return g


def dumps_graph(g: BipartiteGraph) -> str:
    out = [f"bg {g.left.size} {g.right.size} {g.edge_count}"]
    out.extend(f"{a} {b}" for a, b in g.sorted_edges())
    return "\n".join(out) + "\n"


def loads_threegraph(text: str) -> ThreeGraph:
    lines = _Lines(text)
    (n1, n2, n3, m), ln = _header(lines, "h3", 4)
    classes = (VertexClass(0, n1), VertexClass(1, n2), VertexClass(2, n3))
    triples = set()
    for _ in range(m):
        fields, tln = lines.next_fields()
        v1, v2, v3 = _ints(fields, tln, 3, "triple")
        if not (0 <= v1 < n1 and 0 <= v2 < n2 and 0 <= v3 < n3):
            raise FormatError(f"triple ({v1},{v2},{v3}) out of range", tln)
        if (v1, v2, v3) in triples:
            raise FormatError(f"duplicate triple ({v1},{v2},{v3})", tln)
        triples.add((v1, v2, v3))
    if not lines.at_end():
        fields, ln = lines.next_fields()
        raise FormatError(f"trailing content {' '.join(fields)!r}", ln)
    return ThreeGraph(classes, frozenset(triples))


def dumps_threegraph(h: ThreeGraph) -> str:
    n1, n2, n3 = (c.size for c in h.classes)
    out = [f"h3 {n1} {n2} {n3} {h.edge_count}"]
    out.extend(f"{a} {b} {c}" for a, b, c in h.sorted_triples())
    return "\n".join(out) + "\n"


def _read_vp(lines: _Lines) -> VertexPartition:
    (n, k), ln = _header(lines, "vp", 2)
    fields, lln = lines.next_fields()
    labels = _ints(fields, lln, n, "label line")
    for lab in labels:
        if not 0 <= lab < k:
            raise FormatError(f"label {lab} outside 0..{k - 1}", lln)
    missing = set(range(k)) - set(labels)
    if missing:
        raise FormatError(f"block {min(missing)} has no vertices", lln)
    return VertexPartition.from_labels(VertexClass(0, n), labels)


def loads_partition(text: str) -> VertexPartition:
    lines = _Lines(text)
    p = _read_vp(lines)
    if not lines.at_end():
        fields, ln = lines.next_fields()
        raise FormatError(f"trailing content {' '.join(fields)!r}", ln)
    return p


def dumps_partition(p: VertexPartition) -> str:
    return (f"vp {p.ground.size} {p.order}\n"
            + " ".join(str(lab) for lab in p.labels()) + "\n")


def loads_triad(text: str):
    from .graphs import Triad
    lines = _Lines(text)
    (na, nb, nc), ln = _header(lines, "tr", 3)
    a = VertexClass(0, na)
    b = VertexClass(1, nb)
    c = VertexClass(2, nc)
    ab = _read_bg(lines, a, b, (na, nb))
    ac = _read_bg(lines, a, c, (na, nc))
    bc = _read_bg(lines, b, c, (nb, nc))
    if not lines.at_end():
        fields, eln = lines.next_fields()
        raise FormatError(f"trailing content {' '.join(fields)!r}", eln)
    return Triad(ab, ac, bc)


def dumps_triad(t) -> str:
    na, nb, nc = t.sizes
    return (f"tr {na} {nb} {nc}\n"
            + dumps_graph(t.ab) + dumps_graph(t.ac) + dumps_graph(t.bc))


def loads_twopartition(text: str) -> TwoPartition:
    lines = _Lines(text)
    z = _read_vp(lines)
    clusters = [sorted(blk) for blk in z.blocks]
    blocks = []
    while not lines.at_end():
        fields, ln = lines.next_fields()
        if fields[0] != "pair":
            raise FormatError(f"expected 'pair' header, got {fields[0]!r}",
                              ln)
        i, j = _ints(fields[1:], ln, 2, "pair header")
        if not (0 <= i < z.order and 0 <= j < z.order) or i == j:
            raise FormatError(f"bad cluster pair ({i},{j})", ln)
        sides = (len(clusters[i]), len(clusters[j]))
        g = _read_bg(lines, VertexClass(0, sides[0]),
                     VertexClass(1, sides[1]), sides)
        edges = frozenset((clusters[i][a], clusters[j][b])
                          for a, b in g.edges)
        blocks.append(EdgeBlock((i, j), edges))
    tp = TwoPartition(z, tuple(blocks))
    problems = tp.validate()
    if problems:
        raise FormatError("invalid 2-partition: " + "; ".join(problems),
                          len(lines.raw))
    return tp


def dumps_twopartition(tp: TwoPartition) -> str:
    clusters = [sorted(blk) for blk in tp.z.blocks]
    pos = [{v: i for i, v in enumerate(c)} for c in clusters]
    out = [dumps_partition(tp.z).rstrip("\n")]
    ordered = sorted(
        range(len(tp.e)),
        key=lambda k: (min(tp.e[k].pair), max(tp.e[k].pair),
                       sorted(tp.e[k].edges)))
    for k in ordered:
        eb = tp.e[k]
        i, j = eb.pair
        if i > j:
            i, j = j, i
            edges = sorted((pos[i][v], pos[j][u]) for u, v in eb.edges)
        else:
            edges = sorted((pos[i][u], pos[j][v]) for u, v in eb.edges)
        out.append(f"pair {i} {j}")
        out.append(f"bg {len(clusters[i])} {len(clusters[j])} {len(edges)}")
        out.extend(f"{a} {b}" for a, b in edges)
    return "\n".join(out) + "\n"


_LOADERS = {
    "bg": loads_graph,
    "h3": loads_threegraph,
    "vp": loads_partition,
    "tr": loads_triad,
    "tp": loads_twopartition,
}

_DUMPERS = {
    BipartiteGraph: dumps_graph,
    ThreeGraph: dumps_threegraph,
    VertexPartition: dumps_partition,
    TwoPartition: dumps_twopartition,
}


def _read_text(path) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def load_graph(path) -> BipartiteGraph:
    return loads_graph(_read_text(path))


def save_graph(path, g: BipartiteGraph) -> None:
    _write_text(path, dumps_graph(g))


def load_threegraph(path) -> ThreeGraph:
    return loads_threegraph(_read_text(path))


def save_threegraph(path, h: ThreeGraph) -> None:
    _write_text(path, dumps_threegraph(h))


def load_partition(path) -> VertexPartition:
    return loads_partition(_read_text(path))


def save_partition(path, p: VertexPartition) -> None:
    _write_text(path, dumps_partition(p))


def load_triad(path):
    return loads_triad(_read_text(path))


def save_triad(path, t) -> None:
    _write_text(path, dumps_triad(t))


def load_twopartition(path) -> TwoPartition:
    return loads_twopartition(_read_text(path))


def save_twopartition(path, tp: TwoPartition) -> None:
    _write_text(path, dumps_twopartition(tp))
