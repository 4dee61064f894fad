"""Exact linear algebra over integers and rationals.

Matrices are immutable tuples of row tuples.  Determinants and ranks use
fraction-free (Bareiss) elimination: integer inputs stay integer all the
way through, and rational inputs are lifted to integers by clearing row
denominators first.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import ShapeError, SingularMatrixError


def mat(rows):
    return tuple(tuple(row) for row in rows)


def zeros(m, n, zero=0):
    return tuple((zero,) * n for _ in range(m))


def identity(n, one=1, zero=0):
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def shape(a):
    return (len(a), len(a[0]) if a else 0)


def transpose(a):
    return tuple(zip(*a)) if a else ()


def mat_mul(a, b):
    """Matrix product; entries only need + and * (ints, Fractions, polynomials)."""
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    if ca != rb:
        raise ShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    if ra and cb and not ca:
        raise ShapeError("inner dimension 0 with nonzero outer dimensions has no generic zero entry")
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_chain(mats):
    """Product of a nonempty sequence of matrices, left to right."""
    acc = mats[0]
    for m in mats[1:]:
        acc = mat_mul(acc, m)
    return acc


def _int_rows(a):
    """Copy rows as integer lists; returns (rows, scale) with det(input) = det(rows)/scale."""
    scale = 1
    rows = []
    for row in a:
        if all(isinstance(x, int) for x in row):
            rows.append(list(row))
            continue
        fracs = [Fraction(x) for x in row]
        den = lcm(*(f.denominator for f in fracs)) if fracs else 1
        scale *= den
        rows.append([int(f * den) for f in fracs])
    return rows, scale


def det(a):
    """Exact determinant via Bareiss elimination.  Returns int when possible."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    rows, scale = _int_rows(a)
    d = _det_bareiss(rows)
    if scale == 1:
        return d
    result = Fraction(d, scale)
    return int(result) if result.denominator == 1 else result


def _det_bareiss(a):
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            factor = row_i[k]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank(a):
    """Exact rank via fraction-free elimination with column pivoting."""
    if not a or not a[0]:
        return 0
    rows, _ = _int_rows(a)
    m, n = len(rows), len(rows[0])
    r = 0
    prev = 1
    for col in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivot = rows[r][col]
        for i in range(r + 1, m):
            row_i = rows[i]
            factor = row_i[col]
            row_r = rows[r]
            for j in range(col + 1, n):
                # Sylvester's identity keeps this division exact.
                row_i[j] = (pivot * row_i[j] - factor * row_r[j]) // prev
            row_i[col] = 0
        prev = pivot
        r += 1
        if r == m:
            break
    return r


def inverse(a):
    """Exact inverse over Fraction via Gauss-Jordan."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeError("inverse of a non-square matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)
