"""JSON codecs and text formatting for the public types.

Every serializer has an inverse and round-trips exactly.  b-function
coefficient keys are always "s1", "s2", ...; the text formatter prints a
bare "s" in the one-variable case.
"""

from __future__ import annotations

from .bfun import AFunction, FactoredBFunction, FSet, LinearForm
from .diagrams import LaceDiagram
from .errors import QuiverParseError
from .quiver import DimVector, Interval, QuiverA, parse_quiver
from .ranks import RankParameter, SliceRep


# -- quiver ----------------------------------------------------------------

def quiver_to_json(q: QuiverA) -> str:
    return str(q)


def quiver_from_json(text: str) -> QuiverA:
    return parse_quiver(text)


# -- b-functions -------------------------------------------------------------

def _form_to_json(form: LinearForm) -> dict:
    return {
        "coeffs": {f"s{i}": c for i, c in enumerate(form.coeffs, start=1) if c},
        "constant": form.constant,
        "support": [f"m{i}" for i in form.support],
    }


def _form_from_json(data: dict, num_labels: int) -> LinearForm:
    coeffs = [0] * num_labels
    for key, c in data["coeffs"].items():
        coeffs[int(key[1:]) - 1] = c
    return LinearForm(tuple(coeffs), data["constant"])


def bfun_to_json(b: FactoredBFunction) -> dict:
    return {
        "variables": b.num_labels,
        "factors": [
            dict(_form_to_json(form), multiplicity=mult) for form, mult in b.factors
        ],
    }


def bfun_from_json(data: dict) -> FactoredBFunction:
    num_labels = data["variables"]
    factors = tuple(
        (_form_from_json(item, num_labels), item["multiplicity"]) for item in data["factors"]
    )
    return FactoredBFunction(num_labels, factors)


def format_bfun_text(b: FactoredBFunction) -> str:
    """One variable: (s+1)(s+2)^3.  Several: [s1+s2+5]_{m1+m2}^2."""
    if not b.factors:
        return "1"
    parts = []
    for form, mult in b.factors:
        power = f"^{mult}" if mult > 1 else ""
        if b.num_labels == 1:
            parts.append(f"(s+{form.constant}){power}")
        else:
            length = "+".join(f"m{i}" for i in form.support)
            parts.append(f"[{form.label_text('s')}]_{{{length}}}{power}")
    return "".join(parts) if b.num_labels == 1 else " ".join(parts)


# -- a-functions --------------------------------------------------------------

def afun_to_json(a: AFunction) -> dict:
    return {
        "variables": a.num_labels,
        "factors": [
            dict(_form_to_json(form), connections=count) for form, count in a.factors
        ],
    }


def afun_from_json(data: dict) -> AFunction:
    num_labels = data["variables"]
    factors = tuple(
        (_form_from_json(item, num_labels), item["connections"]) for item in data["factors"]
    )
    return AFunction(num_labels, factors)


def format_afun_text(a: AFunction) -> str:
    """Symbolic monomial, e.g. s1^{4*m1} * (s1+s2)^{2*(m1+m2)}."""
    if not a.factors:
        return "1"
    parts = []
    for form, count in a.factors:
        base = form.label_text()
        if len(form.support) > 1:
            base = f"({base})"
        length = "+".join(f"m{i}" for i in form.support)
        exponent = length if count == 1 else f"{count}*({length})"
        parts.append(f"{base}^{{{exponent}}}")
    return " * ".join(parts)


# -- F-sets -------------------------------------------------------------------

def fset_to_json(fs: FSet) -> dict:
    return {
        "size": fs.r,
        "columns": [
            {"k": k, "range": list(fs.column(k)) if fs.column(k) else None}
            for k in range(2, fs.r + 1)
        ],
    }


def fset_from_json(data: dict) -> FSet:
    ranges = [None] * (data["size"] - 1)
    for item in data["columns"]:
        if item["range"] is not None:
            ranges[item["k"] - 2] = tuple(item["range"])
    return FSet(data["size"], tuple(ranges))


# -- rank parameters -----------------------------------------------------------

def rank_to_json(N: RankParameter) -> dict:
    return {"size": N.r, "rows": [list(row) for row in N.rows]}


def rank_from_json(data: dict) -> RankParameter:
    return RankParameter(tuple(tuple(row) for row in data["rows"]))


# -- lace diagrams ---------------------------------------------------------------

def diagram_to_json(d: LaceDiagram) -> dict:
    return {
        "columns": list(d.columns),
        "edges": [
            {"edge": a, "pairs": sorted([list(p) for p in d.edge(a)])}
            for a in range(1, d.r)
        ],
    }


def diagram_from_json(data: dict) -> LaceDiagram:
    columns = tuple(data["columns"])
    conns = [frozenset() for _ in range(len(columns) - 1)]
    for item in data["edges"]:
        conns[item["edge"] - 1] = frozenset(tuple(p) for p in item["pairs"])
    return LaceDiagram(columns, tuple(conns))


# -- slice representations ---------------------------------------------------------

def slice_to_json(s: SliceRep) -> dict:
    return {
        "vertices": [{"interval": [iv.i, iv.j], "mult": m} for iv, m in s.vertices],
        "arrows": [
            {"from": src, "to": dst, "count": count}
            for (src, dst), count in sorted(s.arrows.items())
        ],
    }


def slice_from_json(data: dict) -> SliceRep:
    vertices = tuple(
        (Interval(item["interval"][0], item["interval"][1]), item["mult"])
        for item in data["vertices"]
    )
    arrows = {(item["from"], item["to"]): item["count"] for item in data["arrows"]}
    return SliceRep(vertices, arrows)


# -- misc -------------------------------------------------------------------------

def parse_pq(text: str) -> tuple[int, int]:
    try:
        p, q = (int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise QuiverParseError(f"cannot parse pair {text!r}; expected 'p,q'") from exc
    return p, q


def parse_dims(text: str) -> DimVector:
    return DimVector.parse(text)
