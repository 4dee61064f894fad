"""b-functions of one and several variables, and a-functions.

One-variable b-functions come from a closed product formula over the
columns between p and q.  The several-variable b-function is produced by
superposition: per column, linear forms s_i + c with equal constant term
are merged by summing their s-variables, and each merged form A with
support S becomes a rising factorial [A]_{sum of m_i over S}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .diagrams import exact_diagram
from .errors import DiagnosticError, ShapeError
from .invariants import InvariantIndex, check_invariant, enumerate_invariants, nbar
from .quiver import DimVector, QuiverA, sinks_sources


@dataclass(frozen=True)
class LinearForm:
    """sum_i coeffs[i-1] * s_i + constant, with non-negative integer data."""

    coeffs: tuple[int, ...]
    constant: int

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs) or self.constant < 0:
            raise ShapeError("linear form needs non-negative coefficients and constant")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, c in enumerate(self.coeffs) if c)

    def sort_key(self):
        return (len(self.support), self.support, self.constant)

    def value(self, s) -> Fraction:
        return sum((Fraction(c) * Fraction(x) for c, x in zip(self.coeffs, s)), Fraction(self.constant))

    def label_text(self, svar: str = "s") -> str:
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            name = svar if len(self.coeffs) == 1 else f"{svar}{i}"
            parts.append(name if c == 1 else f"{c}*{name}")
        if self.constant or not parts:
            parts.append(str(self.constant))
        return "+".join(parts)


@dataclass(frozen=True)
class FactoredBFunction:
    """Product of shifted linear forms, canonically ordered.

    One-variable b-functions use a single label; each factor (s + c)^e is
    a LinearForm with coeffs (1,).  In several variables a factor is read
    as the rising factorial [form]_M with M the sum of m_i over the
    form's support.
    """

    num_labels: int
    factors: tuple

    def __post_init__(self):
        for form, mult in self.factors:
            if len(form.coeffs) != self.num_labels:
                raise ShapeError("factor coefficient length does not match label count")
            if mult < 1 or form.constant < 1 or not form.support:
                raise ShapeError("factors need multiplicity >= 1, constant >= 1, nonempty support")

    @classmethod
    def from_counter(cls, num_labels: int, counts: Counter) -> "FactoredBFunction":
        factors = tuple(
            (form, counts[form]) for form in sorted(counts, key=LinearForm.sort_key)
        )
        return cls(num_labels, factors)

    @classmethod
    def one_variable(cls, constants: Counter) -> "FactoredBFunction":
        counts = Counter({LinearForm((1,), c): e for c, e in constants.items()})
        return cls.from_counter(1, counts)

    def degree(self) -> int:
        """Number of linear factors counted with multiplicity."""
        return sum(mult for _, mult in self.factors)

    def constants(self) -> Counter:
        """Multiset constant -> multiplicity (one-variable only)."""
        if self.num_labels != 1:
            raise ShapeError("constants() is for one-variable b-functions")
        return Counter({form.constant: mult for form, mult in self.factors})

    def divides(self, other: "FactoredBFunction") -> bool:
        """Exact polynomial divisibility of products of linear factors."""
        mine, theirs = self.constants(), other.constants()
        return all(theirs[c] >= e for c, e in mine.items())

    def specialize_label(self, i: int) -> "FactoredBFunction":
        """Set every m_j = delta_{ij} and s_j = s * delta_{ij}.

        Factors whose support misses label i have bracket length 0 and
        drop out; the rest become (s + constant).
        """
        if not 1 <= i <= self.num_labels:
            raise ShapeError(f"label {i} out of range")
        constants = Counter()
        for form, mult in self.factors:
            if i in form.support:
                constants[form.constant] += mult
        return FactoredBFunction.one_variable(constants)

    def __mul__(self, other: "FactoredBFunction") -> "FactoredBFunction":
        if self.num_labels != other.num_labels:
            raise ShapeError("label counts differ")
        counts = Counter(dict(self.factors))
        for form, mult in other.factors:
            counts[form] += mult
        return FactoredBFunction.from_counter(self.num_labels, counts)


def evaluate_bracket_product(b: FactoredBFunction, m, s) -> Fraction:
    """Numeric value: product over factors of [form(s)]_{sum m over support}."""
    if len(m) != b.num_labels or len(s) != b.num_labels:
        raise ShapeError(f"need {b.num_labels} bracket lengths and variables")
    if any(not isinstance(k, int) or k < 0 for k in m):
        raise ShapeError("bracket lengths must be non-negative integers")
    total = Fraction(1)
    for form, mult in b.factors:
        length = sum(m[i - 1] for i in form.support)
        base = form.value(s)
        rising = Fraction(1)
        for t in range(length):
            rising *= base + t
        total *= rising ** mult
    return total


def b_one_variable(q: QuiverA, n: DimVector, idx: InvariantIndex) -> FactoredBFunction:
    """Closed product formula for the b-function of f_{(p,q)}.

    Walking t = p+1..q, each column contributes factors
    (s + n_t - L + lambda) for lambda = 1..L, where the level L starts at
    n_p and is replaced by n_v - L each time the walk passes an interior
    sink or source v.
    """
    check_invariant(q, n, idx)
    nu = sinks_sources(q)
    constants = Counter()

    def segment(t_from: int, t_to: int, level: int) -> None:
        for t in range(t_from, t_to + 1):
            for lam in range(1, level + 1):
                constants[n.at(t) - level + lam] += 1

    if idx.beta == idx.alpha - 1:
        segment(idx.p + 1, idx.q, n.at(idx.p))
    else:
        segment(idx.p + 1, nu[idx.alpha], n.at(idx.p))
        for kappa in range(idx.beta - idx.alpha):
            segment(nu[idx.alpha + kappa] + 1, nu[idx.alpha + kappa + 1], nbar(q, n, idx, kappa))
        segment(nu[idx.beta] + 1, idx.q, nbar(q, n, idx, idx.beta - idx.alpha))
    return FactoredBFunction.one_variable(constants)


@dataclass(frozen=True)
class FSet:
    """Per column k = 2..r, an inclusive integer range or None for empty."""

    r: int
    ranges: tuple

    def __post_init__(self):
        if len(self.ranges) != self.r - 1:
            raise ShapeError("need one range per column 2..r")
        for rng in self.ranges:
            if rng is not None and rng[0] > rng[1]:
                raise ShapeError(f"bad range {rng}")

    def column(self, k: int):
        """Range for column k (2 <= k <= r)."""
        return self.ranges[k - 2]

    def members(self, k: int):
        rng = self.column(k)
        return range(rng[0], rng[1] + 1) if rng else range(0)


def f_set(N) -> FSet:
    """Column ranges read off a rank parameter.

    Column k carries {N_kk - N_{k-1,k} + 1, ..., N_kk}, empty when the
    adjacent rank N_{k-1,k} vanishes.
    """
    ranges = []
    for k in range(2, N.r + 1):
        adjacent = N.N(k - 1, k)
        ranges.append(None if adjacent == 0 else (N.N(k, k) - adjacent + 1, N.N(k, k)))
    return FSet(N.r, tuple(ranges))


def fset_of_invariant(q: QuiverA, n: DimVector, idx: InvariantIndex) -> FSet:
    """F-set of the exact diagram of (p, q).

    The adjacent rank N_{k-1,k} of a diagram point equals its connection
    count on edge k-1, since the edge matrix is a partial permutation.
    """
    d = exact_diagram(q, n, idx)
    counts = d.edge_counts()
    ranges = []
    for k in range(2, q.r + 1):
        c = counts[k - 2]
        ranges.append(None if c == 0 else (n.at(k) - c + 1, n.at(k)))
    return FSet(q.r, tuple(ranges))


def b_from_fset(fs: FSet) -> FactoredBFunction:
    """Product of (s + c) over every member of every column range."""
    constants = Counter()
    for k in range(2, fs.r + 1):
        for c in fs.members(k):
            constants[c] += 1
    return FactoredBFunction.one_variable(constants)


def superpose(fsets, labels=None) -> tuple[LinearForm, ...]:
    """Merge the columns of several F-sets into multi-variable linear forms.

    At each column, forms with equal constant term are combined by
    summing their label variables; empty columns are ignored.  Returns
    the concatenation over columns k = 2..r, each column's forms ordered
    by constant term.
    """
    fsets = tuple(fsets)
    if not fsets:
        return ()
    r = fsets[0].r
    if any(fs.r != r for fs in fsets):
        raise ShapeError("all F-sets must share the column count")
    if labels is None:
        labels = tuple(range(1, len(fsets) + 1))
    labels = tuple(labels)
    if len(labels) != len(fsets):
        raise ShapeError("need one label per F-set")
    num_labels = max(labels)
    out = []
    for k in range(2, r + 1):
        by_constant = {}
        for fs, label in zip(fsets, labels):
            for c in fs.members(k):
                by_constant.setdefault(c, []).append(label)
        for c in sorted(by_constant):
            coeffs = [0] * num_labels
            for label in by_constant[c]:
                if coeffs[label - 1]:
                    raise DiagnosticError(
                        f"label {label} contributes twice to constant {c} at column {k}"
                    )
                coeffs[label - 1] = 1
            out.append(LinearForm(tuple(coeffs), c))
    return tuple(out)


def b_multivariate(q: QuiverA, n: DimVector) -> FactoredBFunction:
    """Superposed b-function of the full tuple of fundamental invariants.

    Labels are assigned in sorted (p, q) order.  With no invariants the
    result is the empty product.
    """
    invariants = enumerate_invariants(q, n)
    if not invariants:
        return FactoredBFunction(0, ())
    fsets = [fset_of_invariant(q, n, idx) for idx in invariants]
    counts = Counter(superpose(fsets))
    return FactoredBFunction.from_counter(len(invariants), counts)


@dataclass(frozen=True)
class AFunction:
    """Monomial product a_m(s) = prod over supports S of (sum_{i in S} s_i)^{e_S * sum_{i in S} m_i}.

    e_S counts the connections shared by exactly the exact diagrams of
    the labels in S; a connection used by D^(i) contributes the merged
    form of all diagrams through it, so a_{eps_i} multiplies one such
    form per connection of D^(i).
    """

    num_labels: int
    factors: tuple  # ((LinearForm with constant 0, e_S), ...)

    def exponent_of(self, form: LinearForm, m) -> int:
        for f, e in self.factors:
            if f == form:
                return e * sum(m[i - 1] for i in f.support)
        return 0

    def monomial(self, m) -> tuple:
        """((form, exponent), ...) for integer bracket lengths m."""
        if len(m) != self.num_labels:
            raise ShapeError(f"need {self.num_labels} entries")
        out = []
        for form, e in self.factors:
            exponent = e * sum(m[i - 1] for i in form.support)
            if exponent:
                out.append((form, exponent))
        return tuple(out)

    def eps_exponents(self, i: int) -> tuple:
        """Factors of a_{eps_i}: forms whose support contains i, with e_S."""
        return tuple((form, e) for form, e in self.factors if i in form.support)


def a_function(q: QuiverA, n: DimVector) -> AFunction:
    """Group the connections of all exact diagrams by shared support."""
    invariants = enumerate_invariants(q, n)
    l = len(invariants)
    usage = {}
    for label, idx in enumerate(invariants, start=1):
        d = exact_diagram(q, n, idx)
        for a in q.edges():
            for pair in d.edge(a):
                usage.setdefault((a, pair), set()).add(label)
    support_counts = Counter(frozenset(s) for s in usage.values())
    factors = []
    for support in support_counts:
        coeffs = tuple(1 if i in support else 0 for i in range(1, l + 1))
        factors.append((LinearForm(coeffs, 0), support_counts[support]))
    factors.sort(key=lambda fe: fe[0].sort_key())
    return AFunction(l, tuple(factors))
