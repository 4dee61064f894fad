"""Type-A quiver combinatorics.

A quiver here is a chain of ``r`` vertices (1-indexed) with ``r - 1``
oriented edges.  Edge ``a`` joins vertices ``a`` and ``a + 1``; its
direction is +1 when it points right (a -> a+1) and -1 when it points
left.  All public vertex, edge, and dot indices are 1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import QuiverParseError, ShapeError

RIGHT = 1
LEFT = -1


@dataclass(frozen=True)
class QuiverA:
    """Orientation data of a type-A quiver with ``r`` vertices."""

    r: int
    directions: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1:
            raise QuiverParseError("a quiver needs at least one vertex")
        if len(self.directions) != self.r - 1:
            raise QuiverParseError(f"expected {self.r - 1} edge directions, got {len(self.directions)}")
        if any(d not in (RIGHT, LEFT) for d in self.directions):
            raise QuiverParseError("edge directions must be +1 (right) or -1 (left)")

    def delta(self, a: int) -> int:
        """Direction of edge ``a`` (1 <= a <= r-1): +1 rightward, -1 leftward."""
        if not 1 <= a <= self.r - 1:
            raise ShapeError(f"edge {a} out of range 1..{self.r - 1}")
        return self.directions[a - 1]

    def head(self, a: int) -> int:
        return a + 1 if self.delta(a) == RIGHT else a

    def tail(self, a: int) -> int:
        return a if self.delta(a) == RIGHT else a + 1

    def edges(self):
        return range(1, self.r)

    def vertices(self):
        return range(1, self.r + 1)

    def is_sink(self, v: int) -> bool:
        """Interior sink: both neighbouring edges point at ``v``."""
        return 1 < v < self.r and self.delta(v - 1) == RIGHT and self.delta(v) == LEFT

    def is_source(self, v: int) -> bool:
        """Interior source: both neighbouring edges point away from ``v``."""
        return 1 < v < self.r and self.delta(v - 1) == LEFT and self.delta(v) == RIGHT

    def dual(self) -> "QuiverA":
        """The quiver with every arrow reversed."""
        return QuiverA(self.r, tuple(-d for d in self.directions))

    def __str__(self) -> str:
        parts = ["1"]
        for a in self.edges():
            parts.append("->" if self.delta(a) == RIGHT else "<-")
            parts.append(str(a + 1))
        return "".join(parts)


def parse_quiver(text: str) -> QuiverA:
    """Parse either arrow form ("1->2<-3") or compact form ("R,L").

    The arrow form must list vertices 1..r in order.  The compact form
    gives one letter per edge, R for rightward and L for leftward.
    """
    text = text.strip()
    if not text:
        raise QuiverParseError("empty quiver string")
    compact = re.fullmatch(r"[RLrl](?:\s*,\s*[RLrl])*", text)
    if compact:
        dirs = tuple(RIGHT if tok.strip().upper() == "R" else LEFT for tok in text.split(","))
        return QuiverA(len(dirs) + 1, dirs)
    tokens = re.findall(r"\d+|->|<-", text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise QuiverParseError(f"cannot parse quiver string {text!r}")
    if len(tokens) < 1 or len(tokens) % 2 == 0:
        raise QuiverParseError(f"cannot parse quiver string {text!r}")
    dirs = []
    for pos, tok in enumerate(tokens):
        if pos % 2 == 0:
            if not tok.isdigit() or int(tok) != pos // 2 + 1:
                raise QuiverParseError(f"vertices must be numbered 1..r in order, got {tok!r}")
        else:
            dirs.append(RIGHT if tok == "->" else LEFT)
    return QuiverA(len(dirs) + 1, tuple(dirs))


@dataclass(frozen=True)
class DimVector:
    """Positive dimension assigned to every vertex."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(n, int) or n < 1 for n in self.entries):
            raise QuiverParseError("dimension vector entries must be integers >= 1")

    @classmethod
    def parse(cls, text: str) -> "DimVector":
        try:
            return cls(tuple(int(tok) for tok in text.split(",")))
        except ValueError as exc:
            raise QuiverParseError(f"cannot parse dimension vector {text!r}") from exc

    def at(self, v: int) -> int:
        """Dimension at vertex ``v`` (1-based)."""
        return self.entries[v - 1]

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return ",".join(str(n) for n in self.entries)


@dataclass(frozen=True, order=True)
class Interval:
    """Vertex interval [i, j]; labels the indecomposable supported on it."""

    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i <= self.j:
            raise QuiverParseError(f"bad interval [{self.i}, {self.j}]")

    def __contains__(self, v: int) -> bool:
        return self.i <= v <= self.j

    def __str__(self) -> str:
        return f"[{self.i},{self.j}]"


def check_dims(q: QuiverA, n: DimVector) -> None:
    if len(n) != q.r:
        raise ShapeError(f"dimension vector of length {len(n)} on a quiver with {q.r} vertices")


def sinks_sources(q: QuiverA) -> tuple[int, ...]:
    """The increasing vertex sequence 1 = nu(0) < ... < nu(h+1) = r.

    Interior entries are exactly the sinks and sources of the quiver;
    the two endpoints are always included.
    """
    if q.r == 1:
        return (1,)
    inner = [v for v in range(2, q.r) if q.delta(v - 1) != q.delta(v)]
    return (1, *inner, q.r)


def dual(q: QuiverA) -> QuiverA:
    return q.dual()


def _entry_seq(n, r: int):
    entries = n.entries if isinstance(n, DimVector) else tuple(n)
    if len(entries) != r:
        raise ShapeError(f"vector of length {len(entries)} on a quiver with {r} vertices")
    if any(not isinstance(x, int) or x < 0 for x in entries):
        raise ShapeError("vector entries must be integers >= 0")
    return entries


def euler_form(q: QuiverA, n, m) -> int:
    """<n, m> = sum_i n_i m_i - sum_a n_{t(a)} m_{h(a)}.

    Accepts DimVectors or plain integer sequences (entries >= 0), so the
    0/1 characteristic vectors of intervals fit.
    """
    nn = _entry_seq(n, q.r)
    mm = _entry_seq(m, q.r)
    total = sum(x * y for x, y in zip(nn, mm))
    for a in q.edges():
        total -= nn[q.tail(a) - 1] * mm[q.head(a) - 1]
    return total


def interval_vector(r: int, iv: Interval) -> tuple[int, ...]:
    """0/1 characteristic vector of [i, j] as a length-r dimension vector."""
    if iv.j > r:
        raise ShapeError(f"interval {iv} does not fit in {r} vertices")
    return tuple(1 if v in iv else 0 for v in range(1, r + 1))
