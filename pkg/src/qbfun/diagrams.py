"""Lace diagrams: columns of dots joined edgewise by partial matchings.

Dots in column v are numbered 1..n_v from the bottom.  A connection on
edge a is a pair (d_left, d_right): dot d_left of column a joined to dot
d_right of column a + 1, whatever the arrow direction.  Rightward edges
align columns at the bottom, leftward edges at the top, so the diagrams
drawn here pair dots of equal height under that convention.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import ShapeError
from .invariants import InvariantIndex, MatrixRep, check_invariant
from .quiver import RIGHT, DimVector, Interval, QuiverA, check_dims


@dataclass(frozen=True)
class LaceDiagram:
    columns: tuple[int, ...]
    connections: tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.connections) != max(len(self.columns) - 1, 0):
            raise ShapeError("need one connection set per edge")
        for a, pairs in enumerate(self.connections, start=1):
            left_seen, right_seen = set(), set()
            for dl, dr in pairs:
                if not (1 <= dl <= self.columns[a - 1] and 1 <= dr <= self.columns[a]):
                    raise ShapeError(f"edge {a}: connection ({dl},{dr}) out of range")
                if dl in left_seen or dr in right_seen:
                    raise ShapeError(f"edge {a}: a dot is connected twice on one side")
                left_seen.add(dl)
                right_seen.add(dr)

    @property
    def r(self) -> int:
        return len(self.columns)

    def edge(self, a: int) -> frozenset:
        return self.connections[a - 1]

    def edge_counts(self) -> tuple[int, ...]:
        return tuple(len(pairs) for pairs in self.connections)

    def total_connections(self) -> int:
        return sum(self.edge_counts())

    def without(self, a: int, pair) -> "LaceDiagram":
        """Copy with one connection removed from edge a."""
        if pair not in self.connections[a - 1]:
            raise ShapeError(f"edge {a} has no connection {pair}")
        conns = list(self.connections)
        conns[a - 1] = conns[a - 1] - {tuple(pair)}
        return LaceDiagram(self.columns, tuple(conns))


def _columns(n) -> tuple[int, ...]:
    return tuple(n.entries) if isinstance(n, DimVector) else tuple(n)


def empty_diagram(q: QuiverA, n) -> LaceDiagram:
    cols = _columns(n)
    return LaceDiagram(cols, tuple(frozenset() for _ in q.edges()))


def complete_diagram(q: QuiverA, n: DimVector) -> LaceDiagram:
    """All possible height-preserving connections on every edge.

    The represented point is a generic one: no fundamental invariant
    vanishes on it.
    """
    check_dims(q, n)
    cols = _columns(n)
    conns = []
    for a in q.edges():
        na, nb = cols[a - 1], cols[a]
        c = min(na, nb)
        if q.delta(a) == RIGHT:
            pairs = {(b, b) for b in range(1, c + 1)}
        else:
            pairs = {(na - t + 1, nb - t + 1) for t in range(1, c + 1)}
        conns.append(frozenset(pairs))
    return LaceDiagram(cols, tuple(conns))


def exact_diagram(q: QuiverA, n: DimVector, idx: InvariantIndex) -> LaceDiagram:
    """Canonical minimal diagram of the closed orbit inside {f_{(p,q)} != 0}.

    Walk the columns from p to q carrying a bundle of c strands; c starts
    at n_p.  On a rightward edge the bundle occupies the bottom c dots of
    both columns, on a leftward edge the top c dots.  Whenever the walk
    crosses an interior sink or source the bundle is replaced by the
    complementary dots of that column, so c becomes n_v - c.  The index
    conditions keep every intermediate c in range, and at column q the
    bundle size equals n_q exactly.
    """
    check_invariant(q, n, idx)
    cols = _columns(n)
    conns = [frozenset() for _ in q.edges()]
    c = n.at(idx.p)
    for v in range(idx.p, idx.q):
        na, nb = cols[v - 1], cols[v]
        if q.delta(v) == RIGHT:
            pairs = {(b, b) for b in range(1, c + 1)}
        else:
            pairs = {(na - t + 1, nb - t + 1) for t in range(1, c + 1)}
        conns[v - 1] = frozenset(pairs)
        if v + 1 < idx.q and q.delta(v + 1) != q.delta(v):
            c = n.at(v + 1) - c
    return LaceDiagram(cols, tuple(conns))


def diagram_to_matrices(q: QuiverA, n, d: LaceDiagram) -> MatrixRep:
    """0/1 edge matrices: connected dots map basis vector to basis vector."""
    cols = _columns(n)
    if d.columns != cols:
        raise ShapeError("diagram column sizes do not match the dimension vector")
    mats = []
    for a in q.edges():
        rows, colcount = cols[q.head(a) - 1], cols[q.tail(a) - 1]
        m = [[0] * colcount for _ in range(rows)]
        for dl, dr in d.edge(a):
            if q.delta(a) == RIGHT:
                m[dr - 1][dl - 1] = 1
            else:
                m[dl - 1][dr - 1] = 1
        mats.append(m)
    return MatrixRep.build(q, cols, mats)


@dataclass(frozen=True)
class Strand:
    """A maximal connected path of dots; spans the interval of its columns."""

    interval: Interval
    dots: tuple[int, ...]


def strands(d: LaceDiagram) -> tuple[Strand, ...]:
    """All maximal strands, sorted by (interval, dots)."""
    right_of = {}
    has_left = set()
    for a, pairs in enumerate(d.connections, start=1):
        for dl, dr in pairs:
            right_of[(a, dl)] = dr
            has_left.add((a + 1, dr))
    found = []
    for col in range(1, d.r + 1):
        for dot in range(1, d.columns[col - 1] + 1):
            if (col, dot) in has_left:
                continue
            dots = [dot]
            v, cur = col, dot
            while (v, cur) in right_of:
                cur = right_of[(v, cur)]
                v += 1
                dots.append(cur)
            found.append(Strand(Interval(col, v), tuple(dots)))
    return tuple(sorted(found, key=lambda s: (s.interval, s.dots)))


def strand_multiset(d: LaceDiagram) -> Counter:
    """Multiplicity of each interval among the strands."""
    return Counter(s.interval for s in strands(d))


def strand_lookup(d: LaceDiagram):
    """Map (column, dot) -> Strand containing it."""
    table = {}
    for s in strands(d):
        for offset, dot in enumerate(s.dots):
            table[(s.interval.i + offset, dot)] = s
    return table


def diagram_from_strands(r: int, multiset) -> LaceDiagram:
    """Re-synthesize a diagram with the given interval multiplicities.

    Dots are handed out per column bottom-up in sorted interval order, so
    the result is deterministic; it represents the same point up to
    isomorphism as any other diagram with this strand multiset.
    """
    laid_out = []
    for interval in sorted(multiset):
        laid_out.extend([interval] * multiset[interval])
    next_dot = [0] * r
    conns = [set() for _ in range(max(r - 1, 0))]
    columns = [0] * r
    for interval in laid_out:
        if interval.j > r:
            raise ShapeError(f"interval {interval} does not fit in {r} columns")
        dots = []
        for v in range(interval.i, interval.j + 1):
            next_dot[v - 1] += 1
            columns[v - 1] = next_dot[v - 1]
            dots.append(next_dot[v - 1])
        for offset in range(len(dots) - 1):
            conns[interval.i + offset - 1].add((dots[offset], dots[offset + 1]))
    return LaceDiagram(tuple(columns), tuple(frozenset(c) for c in conns))
