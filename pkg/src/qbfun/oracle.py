"""Independent symbolic verification at desk scale.

Expands invariants as exact multivariate polynomials, applies the dual
invariant as a differential operator to symbolic powers, and extracts
the b-function from the resulting identity.  Also differentiates
invariants exactly at the generic point to verify the gradient-log and
a-function descriptions.  Everything is exact rational arithmetic with
hard term budgets.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import linalg
from .bfun import FactoredBFunction, a_function, b_multivariate
from .diagrams import complete_diagram, diagram_to_matrices, exact_diagram
from .errors import (
    BudgetExceededError,
    DiagnosticError,
    OracleIdentityError,
    ShapeError,
)
from .invariants import (
    MatrixRep,
    assemble,
    block_spec,
    block_structure,
    character_exponents,
    check_invariant,
    enumerate_invariants,
    evaluate_invariant,
    invariant_index,
    is_invariant,
)
from .poly import MultiPolynomial, VarTable
from .quiver import DimVector, QuiverA


@dataclass(frozen=True)
class Budget:
    """Term and size limits; exceeding one aborts with a structured error."""

    invariant_terms: int = 200
    state_terms: int = 20000
    matrix_size: int = 6

    @classmethod
    def parse(cls, text: str) -> "Budget":
        try:
            parts = [int(tok) for tok in text.split(",")]
        except ValueError as exc:
            raise ShapeError(f"cannot parse budget {text!r}") from exc
        if len(parts) == 1:
            return cls(state_terms=parts[0])
        if len(parts) == 2:
            return cls(invariant_terms=parts[0], state_terms=parts[1])
        if len(parts) == 3:
            return cls(invariant_terms=parts[0], state_terms=parts[1], matrix_size=parts[2])
        raise ShapeError("budget needs 1..3 comma-separated integers")

    @classmethod
    def from_env(cls) -> "Budget":
        text = os.environ.get("QBFUN_BUDGET")
        return cls.parse(text) if text else cls()


def variable_table(q: QuiverA, n: DimVector, svars=()) -> VarTable:
    """One variable per matrix entry, edges then rows then columns, then svars."""
    names = []
    for a in q.edges():
        for i in range(1, n.at(q.head(a)) + 1):
            for j in range(1, n.at(q.tail(a)) + 1):
                names.append(f"x{a}_{i}_{j}")
    names.extend(svars)
    return VarTable(names)


def _symbolic_rep(q: QuiverA, n: DimVector, table: VarTable) -> MatrixRep:
    mats = []
    for a in q.edges():
        mats.append(
            [
                [MultiPolynomial.variable(table, f"x{a}_{i}_{j}") for j in range(1, n.at(q.tail(a)) + 1)]
                for i in range(1, n.at(q.head(a)) + 1)
            ]
        )
    return MatrixRep(tuple(n.entries), tuple(linalg.mat(m) for m in mats))


def _symbolic_dual_rep(q: QuiverA, n: DimVector, table: VarTable) -> MatrixRep:
    """Edge matrices of the reversed quiver in the paired dual variables.

    Under the trace pairing the dual coordinate of entry (i, j) of edge a
    is entry (j, i) of the reversed edge's matrix.
    """
    mats = []
    for a in q.edges():
        mats.append(
            [
                [MultiPolynomial.variable(table, f"x{a}_{i}_{j}") for i in range(1, n.at(q.head(a)) + 1)]
                for j in range(1, n.at(q.tail(a)) + 1)
            ]
        )
    return MatrixRep(tuple(n.entries), tuple(linalg.mat(m) for m in mats))


def _is_zero_entry(entry) -> bool:
    if isinstance(entry, MultiPolynomial):
        return entry.is_zero()
    return entry == 0


def poly_det(rows):
    """Determinant by expanding over column subsets; entries may be 0 or polynomials."""
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    layers = {0: 1}
    for i in range(n):
        nxt = {}
        for mask, minor in layers.items():
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = rows[i][j]
                if _is_zero_entry(entry):
                    continue
                term = minor * entry
                if bin(mask >> (j + 1)).count("1") & 1:
                    term = -term
                key = mask | bit
                acc = nxt.get(key)
                nxt[key] = term if acc is None else acc + term
        layers = {k: v for k, v in nxt.items() if not _is_zero_entry(v)}
        if not layers:
            return 0
    return layers.get((1 << n) - 1, 0)


def expand_invariant(q, n, idx, table=None, budget=None) -> MultiPolynomial:
    """Fully expanded determinant polynomial of f_{(p,q)}."""
    budget = budget or Budget()
    check_invariant(q, n, idx)
    if table is None:
        table = variable_table(q, n, ("s",))
    spec = block_spec(q, n, idx)
    size = sum(spec.row_dims(n))
    if size > budget.matrix_size:
        raise BudgetExceededError("matrix size", size, budget.matrix_size)
    f = poly_det(assemble(spec, _symbolic_rep(q, n, table)))
    if not isinstance(f, MultiPolynomial):
        f = MultiPolynomial.const(table, f)
    if f.num_terms() > budget.invariant_terms:
        raise BudgetExceededError("invariant terms", f.num_terms(), budget.invariant_terms)
    if f.is_zero():
        raise OracleIdentityError("invariant expanded to zero")
    return f


def dual_invariant(q, n, idx, table=None, budget=None) -> MultiPolynomial:
    """The reversed-quiver invariant with the same (p, q), in paired variables.

    Its character is verified to be the inverse of the primal one; the
    resulting polynomial acts as the operator f*(d/dx).
    """
    budget = budget or Budget()
    check_invariant(q, n, idx)
    if table is None:
        table = variable_table(q, n, ("s",))
    dq = q.dual()
    if not is_invariant(dq, n, idx.p, idx.q):
        raise DiagnosticError(f"({idx.p},{idx.q}) has no dual partner invariant")
    didx = invariant_index(dq, idx.p, idx.q)
    chi = character_exponents(q, n, idx)
    chi_dual = character_exponents(dq, n, didx)
    if tuple(-e for e in chi) != chi_dual:
        raise DiagnosticError("dual invariant character is not the inverse")
    spec = block_spec(dq, n, didx)
    size = sum(spec.row_dims(n))
    if size > budget.matrix_size:
        raise BudgetExceededError("matrix size", size, budget.matrix_size)
    fstar = poly_det(assemble(spec, _symbolic_dual_rep(q, n, table)))
    if not isinstance(fstar, MultiPolynomial):
        fstar = MultiPolynomial.const(table, fstar)
    if fstar.num_terms() > budget.invariant_terms:
        raise BudgetExceededError("invariant terms", fstar.num_terms(), budget.invariant_terms)
    return fstar


def _positive_divisors(n: int):
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _factor_b(coeffs: dict, expected_degree: int):
    """Factor sum_k coeffs[k] s^k into a leading constant times (s + c) factors."""
    if not coeffs:
        raise OracleIdentityError("extracted b-function is zero")
    deg = max(coeffs)
    if deg != expected_degree:
        raise OracleIdentityError(f"b-function degree {deg}, expected {expected_degree}")
    lead = coeffs[deg]
    monic = [coeffs.get(k, Fraction(0)) / lead for k in range(deg + 1)]
    if any(c.denominator != 1 for c in monic):
        raise OracleIdentityError("monic b-function has non-integer coefficients")
    poly = [int(c) for c in monic]  # poly[k] = coefficient of s^k
    constants = Counter()
    for _ in range(deg):
        a0 = poly[0]
        if a0 == 0:
            raise OracleIdentityError("b-function has root 0")
        root = None
        for c in _positive_divisors(abs(a0)):
            value = 0
            for coef in reversed(poly):
                value = value * (-c) + coef
            if value == 0:
                root = c
                break
        if root is None:
            raise OracleIdentityError("non-linear factor encountered")
        # synthetic division by (s + root)
        out = [0] * (len(poly) - 1)
        carry = poly[-1]
        for k in range(len(poly) - 2, -1, -1):
            out[k] = carry
            carry = poly[k] - root * carry
        if carry != 0:
            raise OracleIdentityError("synthetic division left a remainder")
        poly = out
        constants[root] += 1
    return FactoredBFunction.one_variable(constants), lead


@dataclass(frozen=True)
class BernsteinResult:
    b: FactoredBFunction
    constant: Fraction  # scalar by which the raw identity differs from monic


def apply_bernstein(fstar: MultiPolynomial, f: MultiPolynomial, budget=None) -> BernsteinResult:
    """Apply f*(d/dx) to f^{s+1} and extract the monic b-function.

    The derivative layers P_k (coefficients of f^{s+1-k}) are collapsed
    by the exact-division chain T_d = P_d, T_{k-1} = P_{k-1} + T_k / f;
    when every division is exact and T_1 is free of matrix variables,
    the identity f*(d/dx) f^{s+1} = T_1(s) f^s holds on the nose.
    """
    budget = budget or Budget()
    table = f.table
    if fstar.table is not table:
        raise ShapeError("operator and invariant use different variable tables")
    d = f.total_degree()
    if fstar.total_degree() != d:
        raise ShapeError(f"operator degree {fstar.total_degree()} != invariant degree {d}")
    if d == 0:
        raise ShapeError("invariant is constant")
    s_idx = table.index["s"]
    if any(e[s_idx] for e in f.terms) or any(e[s_idx] for e in fstar.terms):
        raise ShapeError("invariant polynomials must not involve s")
    s_poly = MultiPolynomial.variable(table, "s")
    df_cache = {}

    def df(v):
        if v not in df_cache:
            df_cache[v] = f.derivative(v)
        return df_cache[v]

    def one_derivative(state, v):
        new = {}
        for k, P in state.items():
            dP = P.derivative(v)
            if dP:
                new[k] = new[k] + dP if k in new else dP
            dfv = df(v)
            if dfv:
                contrib = P * dfv * (s_poly + (1 - k))
                if contrib:
                    new[k + 1] = new[k + 1] + contrib if k + 1 in new else contrib
        new = {k: P for k, P in new.items() if P}
        total = sum(P.num_terms() for P in new.values())
        if total > budget.state_terms:
            raise BudgetExceededError("state terms", total, budget.state_terms)
        return new

    one = MultiPolynomial.const(table, 1)
    final = {}
    for exp, coef in sorted(fstar.terms.items()):
        state = {0: one}
        for v, e in enumerate(exp):
            for _ in range(e):
                state = one_derivative(state, v)
        for k, P in state.items():
            contrib = P * coef
            final[k] = final[k] + contrib if k in final else contrib
    final = {k: P for k, P in final.items() if P}
    if 0 in final:
        raise OracleIdentityError("derivative layers retain an underived component")

    T = final.get(d, MultiPolynomial.zero(table))
    for k in range(d, 1, -1):
        try:
            T = T.exact_div(f)
        except DiagnosticError as exc:
            raise OracleIdentityError(f"layer {k} is not divisible by the invariant") from exc
        if k - 1 in final:
            T = T + final[k - 1]
        if T.num_terms() > budget.state_terms:
            raise BudgetExceededError("state terms", T.num_terms(), budget.state_terms)

    coeffs = {}
    for e, c in T.terms.items():
        if any(e[i] for i in range(len(table)) if i != s_idx):
            raise OracleIdentityError("extracted b-function still involves matrix variables")
        coeffs[e[s_idx]] = c
    b, lead = _factor_b(coeffs, d)
    return BernsteinResult(b, lead)


def oracle_b_function(q, n, idx, budget=None) -> BernsteinResult:
    """Expand f and f* and run the operator identity for one invariant."""
    budget = budget or Budget()
    table = variable_table(q, n, ("s",))
    f = expand_invariant(q, n, idx, table, budget)
    fstar = dual_invariant(q, n, idx, table, budget)
    return apply_bernstein(fstar, f, budget)


def bracket_product_poly(b: FactoredBFunction, m, table: VarTable) -> MultiPolynomial:
    """Expand the bracket product at integer lengths m as a polynomial in s1..sl."""
    if len(m) != b.num_labels:
        raise ShapeError(f"need {b.num_labels} bracket lengths")
    svars = [MultiPolynomial.variable(table, f"s{i}") for i in range(1, b.num_labels + 1)]
    out = MultiPolynomial.const(table, 1)
    for form, mult in b.factors:
        base = MultiPolynomial.const(table, form.constant)
        for i, c in enumerate(form.coeffs):
            if c:
                base = base + svars[i] * c
        length = sum(m[i - 1] for i in form.support)
        factor = MultiPolynomial.const(table, 1)
        for t in range(length):
            factor = factor * (base + t)
        out = out * factor ** mult
    return out


@dataclass(frozen=True)
class MultiBernsteinResult:
    ok: bool
    b: MultiPolynomial
    engine: MultiPolynomial
    constant: Fraction


def apply_bernstein_multi(q, n, m, budget=None) -> MultiBernsteinResult:
    """Verify the several-variable operator identity at integer shifts m.

    Applies the product of dual invariants (each to its power m_i) to the
    product of f_i^{s_i + m_i}, collapses the layer polynomials with a
    single exact division, and compares with the superposition engine's
    bracket product expanded at the same m.
    """
    budget = budget or Budget()
    invariants = enumerate_invariants(q, n)
    l = len(invariants)
    if len(m) != l:
        raise ShapeError(f"need {l} shifts, got {len(m)}")
    if any(not isinstance(k, int) or k < 0 for k in m):
        raise ShapeError("shifts must be non-negative integers")
    svars = tuple(f"s{i}" for i in range(1, l + 1))
    table = variable_table(q, n, svars)
    fs = [expand_invariant(q, n, idx, table, budget) for idx in invariants]
    fstars = [dual_invariant(q, n, idx, table, budget) for idx in invariants]
    s_polys = [MultiPolynomial.variable(table, name) for name in svars]
    s_idxs = {table.index[name] for name in svars}

    operator = MultiPolynomial.const(table, 1)
    for fstar, mi in zip(fstars, m):
        operator = operator * fstar ** mi
        if operator.num_terms() > budget.state_terms:
            raise BudgetExceededError("operator terms", operator.num_terms(), budget.state_terms)

    df_cache = {}

    def df(i, v):
        if (i, v) not in df_cache:
            df_cache[(i, v)] = fs[i].derivative(v)
        return df_cache[(i, v)]

    def one_derivative(state, v):
        new = {}

        def bump(key, P):
            if P:
                new[key] = new[key] + P if key in new else P

        for kvec, P in state.items():
            bump(kvec, P.derivative(v))
            for i in range(l):
                dfv = df(i, v)
                if dfv:
                    contrib = P * dfv * (s_polys[i] + (m[i] - kvec[i]))
                    bump(kvec[:i] + (kvec[i] + 1,) + kvec[i + 1:], contrib)
        new = {k: P for k, P in new.items() if P}
        total = sum(P.num_terms() for P in new.values())
        if total > budget.state_terms:
            raise BudgetExceededError("state terms", total, budget.state_terms)
        return new

    one = MultiPolynomial.const(table, 1)
    final = {}
    for exp, coef in sorted(operator.terms.items()):
        state = {(0,) * l: one}
        for v, e in enumerate(exp):
            for _ in range(e):
                state = one_derivative(state, v)
        for kvec, P in state.items():
            contrib = P * coef
            final[kvec] = final[kvec] + contrib if kvec in final else contrib
    final = {k: P for k, P in final.items() if P}

    caps = [max(max((kvec[i] for kvec in final), default=0), m[i]) for i in range(l)]
    powers = []
    for i in range(l):
        pows = [MultiPolynomial.const(table, 1)]
        for _ in range(caps[i]):
            pows.append(pows[-1] * fs[i])
            if pows[-1].num_terms() > budget.state_terms:
                raise BudgetExceededError("power terms", pows[-1].num_terms(), budget.state_terms)
        powers.append(pows)

    numerator = MultiPolynomial.zero(table)
    for kvec, P in final.items():
        term = P
        for i in range(l):
            term = term * powers[i][caps[i] - kvec[i]]
        numerator = numerator + term
        if numerator.num_terms() > budget.state_terms:
            raise BudgetExceededError("numerator terms", numerator.num_terms(), budget.state_terms)
    denominator = MultiPolynomial.const(table, 1)
    for i in range(l):
        denominator = denominator * powers[i][caps[i] - m[i]]

    try:
        b_poly = numerator.exact_div(denominator)
    except DiagnosticError as exc:
        raise OracleIdentityError("operator output is not a multiple of the invariant powers") from exc
    for e in b_poly.terms:
        if any(e[i] for i in range(len(table)) if i not in s_idxs):
            raise OracleIdentityError("extracted b-function still involves matrix variables")

    engine = bracket_product_poly(b_multivariate(q, n), m, table)
    if engine.is_zero():
        raise OracleIdentityError("engine bracket product is zero")
    lead = max(engine.terms)
    if lead not in b_poly.terms:
        return MultiBernsteinResult(False, b_poly, engine, Fraction(0))
    constant = b_poly.terms[lead] / engine.terms[lead]
    ok = b_poly == engine * constant
    return MultiBernsteinResult(ok, b_poly, engine, constant)


def generic_point(q, n) -> MatrixRep:
    """Matrices of the all-connections diagram; no invariant vanishes here."""
    return diagram_to_matrices(q, n, complete_diagram(q, n))


def grad_log_invariant(q, n, idx, rep=None):
    """Exact value of grad log f_{(p,q)} at rep (default: the generic point).

    Differentiates the block determinant by the chain rule: the entries
    are path products, so the derivative in one edge entry contracts the
    inverse of the block matrix with the partial products on both sides.
    Returns one Fraction matrix per edge, shaped like the edge matrices.
    """
    check_invariant(q, n, idx)
    if rep is None:
        rep = generic_point(q, n)
    spec = block_structure(q, idx.p, idx.q)
    y = assemble(spec, rep)
    rows, cols = linalg.shape(y)
    if rows != cols:
        raise ShapeError("block matrix is not square")
    y_inv = linalg.inverse(y)
    dims = rep.dims
    row_off, acc = {}, 0
    for v in spec.row_blocks:
        row_off[v] = acc
        acc += dims[v - 1]
    col_off, acc = {}, 0
    for v in spec.col_blocks:
        col_off[v] = acc
        acc += dims[v - 1]

    grads = [
        [[Fraction(0)] * dims[q.tail(a) - 1] for _ in range(dims[q.head(a) - 1])]
        for a in q.edges()
    ]
    for (sigma, tau), path in spec.entries.items():
        mats = [rep.matrix(e) for e in path]
        pre = [linalg.identity(dims[sigma - 1])]
        for mmat in mats:
            pre.append(linalg.mat_mul(pre[-1], mmat))
        suf = [None] * (len(mats) + 1)
        suf[len(mats)] = linalg.identity(dims[tau - 1])
        for t in range(len(mats) - 1, -1, -1):
            suf[t] = linalg.mat_mul(mats[t], suf[t + 1])
        w = tuple(
            tuple(y_inv[col_off[tau] + i][row_off[sigma] + j] for j in range(dims[sigma - 1]))
            for i in range(dims[tau - 1])
        )
        for t, e in enumerate(path):
            left = pre[t]  # sink space x head(e) space
            right = suf[t + 1]  # tail(e) space x source space
            m_mat = linalg.mat_mul(linalg.mat_mul(right, w), left)
            g = grads[e - 1]
            for jj in range(len(m_mat)):
                for kk in range(len(m_mat[0])):
                    g[kk][jj] += m_mat[jj][kk]
    return tuple(linalg.mat(g) for g in grads)


@dataclass(frozen=True)
class GradLogVerdict:
    ok: bool
    expected: MatrixRep
    actual: tuple


def grad_log_check(q, n, idx) -> GradLogVerdict:
    """Does grad log f at the generic point equal the exact diagram's matrices?"""
    actual = grad_log_invariant(q, n, idx)
    expected = diagram_to_matrices(q, n, exact_diagram(q, n, idx))
    ok = all(
        all(
            Fraction(expected.matrix(a)[i][j]) == actual[a - 1][i][j]
            for i in range(len(actual[a - 1]))
            for j in range(len(actual[a - 1][0]) if actual[a - 1] else 0)
        )
        for a in q.edges()
    )
    return GradLogVerdict(ok, expected, actual)


@dataclass(frozen=True)
class AFunctionVerdict:
    ok: bool
    details: tuple  # (label, matches) pairs


def a_function_check(q, n, budget=None) -> AFunctionVerdict:
    """Evaluate each dual invariant at grad log of the weighted product.

    grad log of prod f_j^{s_j} at the generic point is the superposition
    of the exact diagrams with weights s_j; plugging its transpose into
    the dual block matrix and multiplying by f_i at the generic point
    must reproduce the a-function monomial for the i-th unit vector.
    """
    budget = budget or Budget()
    invariants = enumerate_invariants(q, n)
    l = len(invariants)
    svars = tuple(f"s{i}" for i in range(1, l + 1))
    table = VarTable(svars)
    s_polys = [MultiPolynomial.variable(table, name) for name in svars]
    diag_reps = [diagram_to_matrices(q, n, exact_diagram(q, n, idx)) for idx in invariants]

    weighted = []
    for a in q.edges():
        rows, cols = n.at(q.head(a)), n.at(q.tail(a))
        entries = [
            [
                sum(
                    (s_polys[i] * diag_reps[i].matrix(a)[r][c] for i in range(l)),
                    MultiPolynomial.zero(table),
                )
                for c in range(cols)
            ]
            for r in range(rows)
        ]
        weighted.append(entries)

    a0 = generic_point(q, n)
    afun = a_function(q, n)
    dq = q.dual()
    dual_rep = MatrixRep(tuple(n.entries), tuple(linalg.transpose(mats) for mats in weighted))

    details = []
    for label, idx in enumerate(invariants, start=1):
        f_at_a0 = evaluate_invariant(block_spec(q, n, idx), a0)
        didx = invariant_index(dq, idx.p, idx.q)
        value = poly_det(assemble(block_structure(dq, idx.p, idx.q), dual_rep))
        if not isinstance(value, MultiPolynomial):
            value = MultiPolynomial.const(table, value)
        actual = value * f_at_a0
        expected = MultiPolynomial.const(table, 1)
        for form, exponent in afun.eps_exponents(label):
            base = MultiPolynomial.zero(table)
            for i in form.support:
                base = base + s_polys[i - 1]
            expected = expected * base ** exponent
        details.append((label, actual == expected))
    return AFunctionVerdict(all(okay for _, okay in details), tuple(details))
