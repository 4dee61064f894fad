"""Enumeration and evaluation of the fundamental relative invariants.

For a dimension vector n on a type-A quiver, the fundamental relative
invariants of the GL(n)-action on the representation space are labelled
by pairs (p, q).  Each is the determinant of a block matrix assembled
from the edge matrices of the subquiver between p and q: rows are
indexed by the sinks of that subquiver, columns by its sources, and the
nonzero blocks are the path products along its monotone runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import NotAnInvariantError, ShapeError
from .quiver import RIGHT, DimVector, QuiverA, check_dims, sinks_sources


@dataclass(frozen=True, order=True)
class InvariantIndex:
    """A pair 1 <= p < q <= r with its cached segment indices.

    alpha and beta locate p and q in the sink/source sequence nu:
    nu(alpha-1) <= p < nu(alpha) and nu(beta) < q <= nu(beta+1).
    beta == alpha - 1 exactly when no sink or source lies strictly
    between p and q.
    """

    p: int
    q: int
    alpha: int
    beta: int


def invariant_index(q: QuiverA, p: int, qq: int) -> InvariantIndex:
    """Build an InvariantIndex for (p, q), computing alpha and beta."""
    if not 1 <= p < qq <= q.r:
        raise ShapeError(f"need 1 <= p < q <= {q.r}, got ({p}, {qq})")
    nu = sinks_sources(q)
    alpha = next(k for k in range(1, len(nu)) if nu[k - 1] <= p < nu[k])
    beta = next(k for k in range(len(nu) - 1) if nu[k] < qq <= nu[k + 1])
    return InvariantIndex(p, qq, alpha, beta)


def nbar(q: QuiverA, n: DimVector, idx: InvariantIndex, kappa: int) -> int:
    """Alternating sum n_{nu(alpha+kappa)} - n_{nu(alpha+kappa-1)} + ... -/+ n_p.

    kappa = -1 is the empty alternation and returns n_p; it is the value
    in force when no sink or source separates p from q.
    """
    if not -1 <= kappa <= idx.beta - idx.alpha:
        raise ShapeError(f"kappa = {kappa} out of range -1..{idx.beta - idx.alpha}")
    nu = sinks_sources(q)
    total = 0
    sign = 1
    for tau in range(kappa + 1):
        total += sign * n.at(nu[idx.alpha + kappa - tau])
        sign = -sign
    return total + sign * n.at(idx.p)


def is_invariant(q: QuiverA, n: DimVector, p: int, qq: int) -> bool:
    """Test the four index conditions for (p, q)."""
    check_dims(q, n)
    idx = invariant_index(q, p, qq)
    nu = sinks_sources(q)
    if idx.beta == idx.alpha - 1:
        # p and q on one monotone run: interior dimensions strictly larger, ends equal
        return all(n.at(t) > n.at(p) for t in range(p + 1, qq)) and n.at(qq) == n.at(p)
    if any(n.at(t) <= n.at(p) for t in range(p + 1, nu[idx.alpha] + 1)):
        return False
    for kappa in range(idx.beta - idx.alpha):
        level = nbar(q, n, idx, kappa)
        if any(n.at(t) <= level for t in range(nu[idx.alpha + kappa] + 1, nu[idx.alpha + kappa + 1] + 1)):
            return False
    level = nbar(q, n, idx, idx.beta - idx.alpha)
    if any(n.at(t) <= level for t in range(nu[idx.beta] + 1, qq)):
        return False
    return n.at(qq) == level


def enumerate_invariants(q: QuiverA, n: DimVector) -> tuple[InvariantIndex, ...]:
    """All invariant labels, sorted by (p, q).  May be empty."""
    check_dims(q, n)
    found = []
    for p in range(1, q.r):
        for qq in range(p + 1, q.r + 1):
            if is_invariant(q, n, p, qq):
                found.append(invariant_index(q, p, qq))
    return tuple(found)


def check_invariant(q: QuiverA, n: DimVector, idx: InvariantIndex) -> None:
    if not is_invariant(q, n, idx.p, idx.q):
        raise NotAnInvariantError(idx.p, idx.q)


@dataclass(frozen=True)
class BlockMatrixSpec:
    """Block layout of the map from source spaces to sink spaces of Q^{(p,q)}.

    row_blocks / col_blocks are the sink / source vertices of the
    subquiver in increasing order.  entries maps (sink, source) to the
    ordered tuple of edges whose matrices multiply (sink-adjacent factor
    first) to give that block; absent pairs are zero blocks.
    """

    lo: int
    hi: int
    row_blocks: tuple[int, ...]
    col_blocks: tuple[int, ...]
    entries: dict

    def row_dims(self, n: DimVector) -> tuple[int, ...]:
        return tuple(n.at(v) for v in self.row_blocks)

    def col_dims(self, n: DimVector) -> tuple[int, ...]:
        return tuple(n.at(v) for v in self.col_blocks)


def _runs(q: QuiverA, lo: int, hi: int):
    """Monotone runs of Q^{(lo,hi)} as (start, end, direction) triples."""
    cuts = [lo] + [v for v in range(lo + 1, hi) if q.is_sink(v) or q.is_source(v)] + [hi]
    return [(cuts[k], cuts[k + 1], q.delta(cuts[k])) for k in range(len(cuts) - 1)]


def block_structure(q: QuiverA, lo: int, hi: int) -> BlockMatrixSpec:
    """Block layout for any pair lo < hi; no squareness requirement."""
    if not 1 <= lo < hi <= q.r:
        raise ShapeError(f"need 1 <= i < j <= {q.r}, got ({lo}, {hi})")
    sinks, sources, entries = set(), set(), {}
    for start, end, direction in _runs(q, lo, hi):
        if direction == RIGHT:
            sigma, tau = end, start
            path = tuple(range(end - 1, start - 1, -1))
        else:
            sigma, tau = start, end
            path = tuple(range(start, end))
        sinks.add(sigma)
        sources.add(tau)
        entries[(sigma, tau)] = path
    return BlockMatrixSpec(lo, hi, tuple(sorted(sinks)), tuple(sorted(sources)), entries)


def block_spec(q: QuiverA, n: DimVector, idx: InvariantIndex) -> BlockMatrixSpec:
    """Validated square block spec whose determinant is f_{(p,q)}."""
    check_invariant(q, n, idx)
    spec = block_structure(q, idx.p, idx.q)
    if sum(spec.row_dims(n)) != sum(spec.col_dims(n)):
        raise ShapeError(f"block matrix for ({idx.p},{idx.q}) is not square")
    return spec


@dataclass(frozen=True)
class MatrixRep:
    """A point of the representation space: one exact matrix per edge.

    dims may contain zeros (interval representations); matrices[a-1] has
    shape dims[h(a)-1] x dims[t(a)-1].
    """

    dims: tuple[int, ...]
    matrices: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.matrices) != len(self.dims) - 1 and not (len(self.dims) == 1 and not self.matrices):
            raise ShapeError("need one matrix per edge")

    def matrix(self, a: int):
        return self.matrices[a - 1]

    @classmethod
    def build(cls, q: QuiverA, dims, mats) -> "MatrixRep":
        dims = tuple(dims.entries) if isinstance(dims, DimVector) else tuple(dims)
        mats = tuple(linalg.mat(m) for m in mats)
        rep = cls(dims, mats)
        for a in q.edges():
            rows, cols = len(mats[a - 1]), len(mats[a - 1][0]) if mats[a - 1] else 0
            want = (dims[q.head(a) - 1], dims[q.tail(a) - 1])
            if (rows, cols) != want and not (want[0] == 0 and rows == 0):
                raise ShapeError(f"edge {a}: matrix is {rows}x{cols}, expected {want[0]}x{want[1]}")
        return rep

    @classmethod
    def zero(cls, q: QuiverA, n) -> "MatrixRep":
        dims = tuple(n.entries) if isinstance(n, DimVector) else tuple(n)
        mats = [linalg.zeros(dims[q.head(a) - 1], dims[q.tail(a) - 1]) for a in q.edges()]
        return cls.build(q, dims, mats)

    @classmethod
    def random(cls, q: QuiverA, n, rng, lo: int = -3, hi: int = 3) -> "MatrixRep":
        dims = tuple(n.entries) if isinstance(n, DimVector) else tuple(n)
        mats = [
            [[rng.randint(lo, hi) for _ in range(dims[q.tail(a) - 1])] for _ in range(dims[q.head(a) - 1])]
            for a in q.edges()
        ]
        return cls.build(q, dims, mats)


def act(q: QuiverA, g, rep: MatrixRep) -> MatrixRep:
    """Group action: edge matrix X_a becomes g_{h(a)} X_a g_{t(a)}^{-1}."""
    g = [linalg.mat(gi) for gi in g]
    inv = [linalg.inverse(gi) for gi in g]
    mats = [
        linalg.mat_mul(linalg.mat_mul(g[q.head(a) - 1], rep.matrix(a)), inv[q.tail(a) - 1])
        for a in q.edges()
    ]
    return MatrixRep.build(q, rep.dims, mats)


def assemble(spec: BlockMatrixSpec, rep: MatrixRep):
    """Instantiate the block matrix at a concrete representation."""
    dims = rep.dims
    row_dims = [dims[v - 1] for v in spec.row_blocks]
    col_dims = [dims[v - 1] for v in spec.col_blocks]
    row_off = {v: sum(row_dims[:k]) for k, v in enumerate(spec.row_blocks)}
    col_off = {v: sum(col_dims[:k]) for k, v in enumerate(spec.col_blocks)}
    total_rows, total_cols = sum(row_dims), sum(col_dims)
    out = [[0] * total_cols for _ in range(total_rows)]
    for (sigma, tau), path in spec.entries.items():
        block = linalg.mat_chain([rep.matrix(e) for e in path])
        r0, c0 = row_off[sigma], col_off[tau]
        for i, row in enumerate(block):
            for j, x in enumerate(row):
                out[r0 + i][c0 + j] = x
    return linalg.mat(out)


def evaluate_invariant(spec: BlockMatrixSpec, rep: MatrixRep):
    """Exact determinant of the instantiated block matrix."""
    y = assemble(spec, rep)
    rows, cols = linalg.shape(y)
    if rows != cols:
        raise ShapeError(f"instantiated block matrix is {rows}x{cols}, not square")
    return linalg.det(y)


def character_exponents(q: QuiverA, n: DimVector, idx: InvariantIndex) -> tuple[int, ...]:
    """Exponent of det(g_v) in the character of f_{(p,q)}.

    +1 on sinks of the subquiver, -1 on its sources, 0 elsewhere; under
    the action, every sink row-block of the matrix picks up g_sigma on
    the left and every source column-block loses g_tau on the right.
    """
    check_invariant(q, n, idx)
    spec = block_structure(q, idx.p, idx.q)
    sigma = [0] * q.r
    for v in spec.row_blocks:
        sigma[v - 1] = 1
    for v in spec.col_blocks:
        sigma[v - 1] = -1
    return tuple(sigma)
