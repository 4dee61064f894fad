"""Rank parameters, closure order, Hom/Ext dimensions, slice representations.

The rank parameter of a point collects the ranks of the sink/source maps
of every subinterval; componentwise comparison of rank parameters is the
orbit closure order.  At the distinguished point of an invariant's open
set, the isotropy group and normal slice are read off the strands of the
exact lace diagram.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import linalg
from .bfun import FactoredBFunction, b_one_variable
from .diagrams import exact_diagram, strand_lookup, strand_multiset
from .errors import DiagnosticError, ShapeError
from .invariants import (
    InvariantIndex,
    MatrixRep,
    assemble,
    block_structure,
    check_invariant,
    invariant_index,
    is_invariant,
)
from .quiver import LEFT, RIGHT, DimVector, Interval, QuiverA, euler_form, interval_vector


@dataclass(frozen=True)
class RankParameter:
    """Upper-triangular array N_{ij}; rows[i-1] holds (N_ii, ..., N_ir)."""

    rows: tuple

    @property
    def r(self) -> int:
        return len(self.rows)

    def N(self, i: int, j: int) -> int:
        if not 1 <= i <= j <= self.r:
            raise ShapeError(f"need 1 <= i <= j <= {self.r}")
        return self.rows[i - 1][j - i]

    def __iter__(self):
        for i in range(1, self.r + 1):
            for j in range(i, self.r + 1):
                yield (i, j, self.N(i, j))


def rank_parameter(q: QuiverA, n, rep: MatrixRep) -> RankParameter:
    """N_ij = rank of the sink/source map of the subquiver [i, j]; N_ii = n_i."""
    dims = rep.dims
    expected = tuple(n.entries) if isinstance(n, DimVector) else tuple(n)
    if dims != expected:
        raise ShapeError("representation dimensions do not match the dimension vector")
    rows = []
    for i in range(1, q.r + 1):
        row = [dims[i - 1]]
        for j in range(i + 1, q.r + 1):
            row.append(linalg.rank(assemble(block_structure(q, i, j), rep)))
        rows.append(tuple(row))
    return RankParameter(tuple(rows))


class Comparison(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def closure_compare(na: RankParameter, nb: RankParameter) -> Comparison:
    """Componentwise order on rank parameters (the closure order on orbits)."""
    if na.r != nb.r:
        raise ShapeError("rank parameters of different sizes")
    some_less = any(x < y for (_, _, x), (_, _, y) in zip(na, nb))
    some_greater = any(x > y for (_, _, x), (_, _, y) in zip(na, nb))
    if some_less and some_greater:
        return Comparison.INCOMPARABLE
    if some_less:
        return Comparison.LESS
    if some_greater:
        return Comparison.GREATER
    return Comparison.EQUAL


def hom_ext_dims(q: QuiverA, rep_a: MatrixRep, rep_b: MatrixRep) -> tuple[int, int]:
    """(dim Hom, dim Ext) as kernel and cokernel of the difference map.

    The map sends a vertex-wise collection phi to
    (phi_{h(a)} A_a - B_a phi_{t(a)})_a; each rep carries its own
    dimension vector, zeros allowed.
    """
    na, nb = rep_a.dims, rep_b.dims
    if len(na) != q.r or len(nb) != q.r:
        raise ShapeError("representations do not match the quiver")
    col_index = {}
    for v in range(1, q.r + 1):
        for u in range(nb[v - 1]):
            for w in range(na[v - 1]):
                col_index[(v, u, w)] = len(col_index)
    rows = []
    for a in q.edges():
        h, t = q.head(a), q.tail(a)
        A_a, B_a = rep_a.matrix(a), rep_b.matrix(a)
        for u in range(nb[h - 1]):
            for w in range(na[t - 1]):
                row = [0] * len(col_index)
                for v in range(na[h - 1]):
                    row[col_index[(h, u, v)]] += A_a[v][w]
                for v in range(nb[t - 1]):
                    row[col_index[(t, v, w)]] -= B_a[u][v]
                rows.append(row)
    rk = linalg.rank(rows) if rows else 0
    hom = len(col_index) - rk
    ext = len(rows) - rk
    return hom, ext


def interval_rep(q: QuiverA, iv: Interval) -> MatrixRep:
    """The indecomposable supported on [i, j]: identity maps inside, zeros outside."""
    dims = interval_vector(q.r, iv)
    mats = []
    for a in q.edges():
        if iv.i <= a <= iv.j - 1:
            mats.append([[1]])
        else:
            mats.append([[0] * dims[q.tail(a) - 1] for _ in range(dims[q.head(a) - 1])])
    return MatrixRep.build(q, dims, mats)


def summand_ext(q: QuiverA, u: Interval, w: Interval) -> int:
    """dim Ext between interval summands of one locally closed orbit's point.

    Such summands pairwise satisfy dim Hom = delta, so Ext is delta minus
    the Euler form.  For distinct intervals this is 1 exactly when they
    are disjoint and an arrow runs from an end of u to the adjacent end
    of w, and 0 otherwise (nested or overlapping pairs contribute 0).
    """
    e = (1 if u == w else 0) - euler_form(q, interval_vector(q.r, u), interval_vector(q.r, w))
    if e not in (0, 1):
        raise DiagnosticError(f"Ext count {e} for {u}, {w}; not a valid summand pair")
    return e


@dataclass(frozen=True)
class SliceRep:
    """Isotropy factors and normal-slice summands at a locally closed orbit.

    vertices: (interval, multiplicity) sorted by interval.  arrows maps
    ordered vertex positions (1-based) to the Ext count; the arrow
    (u -> w) contributes the matrix space M(mult_w, mult_u) to the slice.
    """

    vertices: tuple
    arrows: dict

    def group_factors(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.vertices)

    def w_summands(self) -> tuple:
        """Matrix-space shapes (rows, cols) = (mult of target, mult of source)."""
        out = []
        for (src, dst), count in sorted(self.arrows.items()):
            shape = (self.vertices[dst - 1][1], self.vertices[src - 1][1])
            out.extend([shape] * count)
        return tuple(out)

    def slice_dimension(self) -> int:
        return sum(rows * cols for rows, cols in self.w_summands())


def slice_representation(q: QuiverA, n: DimVector, idx: InvariantIndex) -> SliceRep:
    """Local quiver of the exact diagram's strand decomposition."""
    check_invariant(q, n, idx)
    counts = strand_multiset(exact_diagram(q, n, idx))
    vertices = tuple(sorted(counts.items()))
    arrows = {}
    for a, (u, _) in enumerate(vertices, start=1):
        for b, (w, _) in enumerate(vertices, start=1):
            e = summand_ext(q, u, w)
            if e:
                arrows[(a, b)] = e
    return SliceRep(vertices, arrows)


@dataclass(frozen=True)
class RestrictedInvariant:
    """Restriction of one invariant to the slice of another's orbit.

    Either constant, or a path-shaped local quiver with dimension vector
    and invariant index; the local one-variable b-function is the
    b-function of the restriction.
    """

    constant: bool
    quiver: QuiverA = None
    dims: DimVector = None
    index: InvariantIndex = None

    def local_b(self) -> FactoredBFunction | None:
        if self.constant:
            return None
        return b_one_variable(self.quiver, self.dims, self.index)


def restricted_invariant_shape(
    q: QuiverA, n: DimVector, idx_slice: InvariantIndex, idx_f: InvariantIndex
) -> RestrictedInvariant:
    """Shape of f_{idx_f} restricted to the slice at the orbit of idx_slice.

    The connections of the exact diagram of idx_f that are absent from
    the exact diagram of idx_slice are transferred to the slice's local
    quiver: a connection joins the strands of idx_slice's diagram that
    contain its endpoints.  The transferred connections must trace out a
    path of Ext-adjacent local vertices carrying the exact diagram of the
    local invariant between the path's ends; anything else is surfaced
    as a diagnostic error.
    """
    check_invariant(q, n, idx_slice)
    check_invariant(q, n, idx_f)
    if idx_f == idx_slice:
        return RestrictedInvariant(constant=True)
    d_slice = exact_diagram(q, n, idx_slice)
    d_f = exact_diagram(q, n, idx_f)
    lookup = strand_lookup(d_slice)
    counts = strand_multiset(d_slice)

    local_edges = {}
    for a in q.edges():
        for dl, dr in d_f.edge(a) - d_slice.edge(a):
            u = lookup[(a, dl)].interval
            w = lookup[(a + 1, dr)].interval
            if q.delta(a) == LEFT:
                u, w = w, u
            local_edges[(u, w)] = local_edges.get((u, w), 0) + 1
    if not local_edges:
        return RestrictedInvariant(constant=True)

    for (u, w), _ in local_edges.items():
        if u == w or summand_ext(q, u, w) != 1:
            raise DiagnosticError(f"transferred arrows {u} -> {w} without a slice arrow")

    neighbours = {}
    for u, w in local_edges:
        neighbours.setdefault(u, set()).add(w)
        neighbours.setdefault(w, set()).add(u)
    ends = sorted(v for v, nbrs in neighbours.items() if len(nbrs) == 1)
    if len(ends) != 2 or any(len(nbrs) > 2 for nbrs in neighbours.values()):
        raise DiagnosticError("transferred arrows do not form a simple path")
    walk = [ends[0]]
    while True:
        nxt = [v for v in neighbours[walk[-1]] if len(walk) < 2 or v != walk[-2]]
        if not nxt:
            break
        walk.append(nxt[0])
    if len(walk) != len(neighbours):
        raise DiagnosticError("transferred arrows do not form a simple path")

    directions = []
    for u, w in zip(walk, walk[1:]):
        if (u, w) in local_edges:
            directions.append(RIGHT)
        elif (w, u) in local_edges:
            directions.append(LEFT)
        else:
            raise DiagnosticError("path step without a transferred arrow")
    local_q = QuiverA(len(walk), tuple(directions))
    local_n = DimVector(tuple(counts[v] for v in walk))
    if not is_invariant(local_q, local_n, 1, len(walk)):
        raise DiagnosticError("transferred arrows do not bound a local invariant")
    local_idx = invariant_index(local_q, 1, len(walk))
    expected = exact_diagram(local_q, local_n, local_idx).edge_counts()
    got = tuple(
        local_edges.get((u, w), 0) + local_edges.get((w, u), 0) for u, w in zip(walk, walk[1:])
    )
    if expected != got:
        raise DiagnosticError(
            f"transferred arrow counts {got} do not match the local exact diagram {expected}"
        )
    return RestrictedInvariant(False, local_q, local_n, local_idx)
