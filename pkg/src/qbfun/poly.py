"""Sparse multivariate polynomials over exact rationals.

Terms are a dict from dense exponent tuples to Fraction coefficients,
keyed against an interned, fixed variable table.  Lexicographic order on
exponent tuples is the monomial order used for exact division.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DiagnosticError, ShapeError


class VarTable:
    """Immutable ordered list of variable names shared by polynomials."""

    def __init__(self, names):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ShapeError("duplicate variable names")
        self.index = {name: k for k, name in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"VarTable({len(self.names)} vars)"


class MultiPolynomial:
    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms=None):
        self.table = table
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, table):
        return cls(table)

    @classmethod
    def const(cls, table, value):
        value = Fraction(value)
        return cls(table, {(0,) * len(table): value} if value else {})

    @classmethod
    def variable(cls, table, name):
        exp = [0] * len(table)
        exp[table.index[name]] = 1
        return cls(table, {tuple(exp): Fraction(1)})

    # -- predicates and measures ----------------------------------------
    def is_zero(self):
        return not self.terms

    def num_terms(self):
        return len(self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def constant_value(self):
        """The coefficient of the empty monomial (the value if constant)."""
        if any(any(e) for e in self.terms):
            raise ShapeError("polynomial is not constant")
        return self.terms.get((0,) * len(self.table), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, MultiPolynomial):
            return self.table is other.table and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPolynomial.const(self.table, other).terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations -------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPolynomial):
            if other.table is not self.table:
                raise ShapeError("polynomials from different variable tables")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPolynomial.const(self.table, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPolynomial(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPolynomial(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPolynomial.zero(self.table)
            return MultiPolynomial(self.table, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MultiPolynomial(self.table, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ShapeError("exponent must be a non-negative integer")
        result = MultiPolynomial.const(self.table, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def derivative(self, var_index: int):
        out = {}
        for e, c in self.terms.items():
            k = e[var_index]
            if not k:
                continue
            key = e[:var_index] + (k - 1,) + e[var_index + 1:]
            s = out.get(key, 0) + c * k
            if s:
                out[key] = s
            else:
                del out[key]
        return MultiPolynomial(self.table, out)

    def eval_at(self, values) -> Fraction:
        if len(values) != len(self.table):
            raise ShapeError("need one value per variable")
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def exact_div(self, divisor: "MultiPolynomial") -> "MultiPolynomial":
        """Quotient self / divisor, requiring exact divisibility.

        Lex order makes the leading term of a product the product of
        leading terms, so dividing leads step by step either terminates
        with zero remainder or proves non-divisibility.
        """
        divisor = self._coerce(divisor)
        if divisor is None or divisor.is_zero():
            raise DiagnosticError("division by zero polynomial")
        lead_d = max(divisor.terms)
        coef_d = divisor.terms[lead_d]
        rem = dict(self.terms)
        quot = {}
        while rem:
            lead_r = max(rem)
            exp = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(x < 0 for x in exp):
                raise DiagnosticError("polynomial division is not exact")
            coef = rem[lead_r] / coef_d
            quot[exp] = coef
            for e, c in divisor.terms.items():
                key = tuple(a + b for a, b in zip(exp, e))
                s = rem.get(key, 0) - coef * c
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return MultiPolynomial(self.table, quot)

    # -- display ----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = [
                f"{self.table.names[i]}^{k}" if k > 1 else self.table.names[i]
                for i, k in enumerate(e)
                if k
            ]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__
