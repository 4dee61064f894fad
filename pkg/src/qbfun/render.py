"""ASCII and SVG rendering of (optionally labeled) lace diagrams.

Columns are laid out left to right with the pairwise alignment rule:
rightward edges share a bottom line, leftward edges share a top line.
Labels sit on the line above their arrow.  Output is a pure function of
the diagram, so renders are byte-identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .bfun import LinearForm, fset_of_invariant
from .diagrams import LaceDiagram, exact_diagram
from .errors import DiagnosticError, ShapeError
from .invariants import enumerate_invariants
from .quiver import RIGHT, DimVector, QuiverA


@dataclass(frozen=True)
class LabeledDiagram:
    """A lace diagram on a given orientation, with optional per-arrow labels."""

    quiver: QuiverA
    diagram: LaceDiagram
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.quiver.r != self.diagram.r:
            raise ShapeError("diagram and quiver sizes differ")
        for (a, pair), _ in self.labels.items():
            if pair not in self.diagram.edge(a):
                raise ShapeError(f"label attached to missing connection {pair} on edge {a}")


def column_offsets(q: QuiverA, columns) -> tuple[int, ...]:
    """Vertical offset of each column's bottom dot under the alignment rule."""
    offsets = [0]
    for a in q.edges():
        if q.delta(a) == RIGHT:
            offsets.append(offsets[-1])
        else:
            offsets.append(offsets[-1] + columns[a - 1] - columns[a])
    base = min(offsets)
    return tuple(off - base for off in offsets)


def _edge_label_assignment(q, n, idx, label: int, num_labels: int) -> dict:
    """Attach the invariant's column ranges to its exact diagram's arrows.

    The range of column k labels the arrows on edge k-1.  On a rightward
    edge constants increase downwards, on a leftward edge upwards.
    """
    d = exact_diagram(q, n, idx)
    fs = fset_of_invariant(q, n, idx)
    coeffs = tuple(1 if i == label else 0 for i in range(1, num_labels + 1))
    labels = {}
    for a in q.edges():
        pairs = sorted(d.edge(a))  # ascending height (bottom-up dot index)
        constants = list(fs.members(a + 1))
        if len(pairs) != len(constants):
            raise DiagnosticError(f"edge {a}: {len(pairs)} arrows vs {len(constants)} constants")
        if q.delta(a) == RIGHT:
            pairs = pairs[::-1]
        for pair, c in zip(pairs, constants):
            labels[(a, pair)] = LinearForm(coeffs, c)
    return labels


def labeled_exact_diagram(q: QuiverA, n: DimVector, idx, label: int = 1, num_labels: int = 1) -> LabeledDiagram:
    return LabeledDiagram(q, exact_diagram(q, n, idx), _edge_label_assignment(q, n, idx, label, num_labels))


def superposed_diagram(q: QuiverA, n: DimVector) -> LabeledDiagram:
    """Union of all exact diagrams; shared arrows merge their labels.

    Every label attaching to a shared arrow must agree on the constant
    term; the merged form sums the s-variables.
    """
    invariants = enumerate_invariants(q, n)
    l = len(invariants)
    union = [set() for _ in q.edges()]
    constants = {}
    supports = {}
    for label, idx in enumerate(invariants, start=1):
        assignment = _edge_label_assignment(q, n, idx, label, l)
        for (a, pair), form in assignment.items():
            union[a - 1].add(pair)
            key = (a, pair)
            if key in constants and constants[key] != form.constant:
                raise DiagnosticError(
                    f"edge {a} connection {pair}: constants {constants[key]} and {form.constant} disagree"
                )
            constants[key] = form.constant
            supports.setdefault(key, set()).add(label)
    diagram = LaceDiagram(tuple(n.entries), tuple(frozenset(p) for p in union))
    labels = {}
    for key, support in supports.items():
        coeffs = tuple(1 if i in support else 0 for i in range(1, l + 1))
        labels[key] = LinearForm(coeffs, constants[key])
    return LabeledDiagram(q, diagram, labels)


def render_ascii(ld: LabeledDiagram) -> str:
    q, d = ld.quiver, ld.diagram
    offsets = column_offsets(q, d.columns)
    height = max(off + size for off, size in zip(offsets, d.columns))
    nrows = 2 * height  # dot rows interleaved with label rows
    gutters = []
    for a in q.edges():
        widest = max(
            (len(ld.labels[(a, pair)].label_text()) for pair in d.edge(a) if (a, pair) in ld.labels),
            default=0,
        )
        gutters.append(max(widest + 2, 5))
    col_x = [0]
    for w in gutters:
        col_x.append(col_x[-1] + 1 + w)
    width = col_x[-1] + 1
    canvas = [[" "] * width for _ in range(nrows)]

    def dot_row(col, dot):
        return nrows - 1 - 2 * (offsets[col - 1] + dot - 1)

    for col in range(1, q.r + 1):
        for dot in range(1, d.columns[col - 1] + 1):
            canvas[dot_row(col, dot)][col_x[col - 1]] = "*"
    for a in q.edges():
        x0, x1 = col_x[a - 1], col_x[a]
        for pair in sorted(d.edge(a)):
            dl, _ = pair
            row = dot_row(a, dl)
            for x in range(x0 + 1, x1):
                canvas[row][x] = "-"
            if q.delta(a) == RIGHT:
                canvas[row][x1 - 1] = ">"
            else:
                canvas[row][x0 + 1] = "<"
            form = ld.labels.get((a, pair))
            if form is not None:
                text = form.label_text()
                for k, ch in enumerate(text[: x1 - x0 - 1]):
                    canvas[row - 1][x0 + 1 + k] = ch
    lines = ["".join(line).rstrip() for line in canvas]
    while lines and not lines[0]:
        lines.pop(0)
    return "\n".join(lines) + "\n"


_SVG_COL_SPACING = 90
_SVG_ROW_SPACING = 22
_SVG_MARGIN = 30


def render_svg(ld: LabeledDiagram) -> str:
    """SVG 1.1 document: one circle per dot, one line per connection."""
    q, d = ld.quiver, ld.diagram
    offsets = column_offsets(q, d.columns)
    height = max(off + size for off, size in zip(offsets, d.columns))

    def xy(col, dot):
        x = _SVG_MARGIN + (col - 1) * _SVG_COL_SPACING
        y = _SVG_MARGIN + (height - (offsets[col - 1] + dot - 1) - 1) * _SVG_ROW_SPACING
        return x, y

    w = 2 * _SVG_MARGIN + (q.r - 1) * _SVG_COL_SPACING
    h = 2 * _SVG_MARGIN + (height - 1) * _SVG_ROW_SPACING
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}">',
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z"/></marker></defs>',
    ]
    for a in q.edges():
        for pair in sorted(d.edge(a)):
            dl, dr = pair
            xa, ya = xy(a, dl)
            xb, yb = xy(a + 1, dr)
            if q.delta(a) == RIGHT:
                x1, y1, x2, y2 = xa + 4, ya, xb - 4, yb
            else:
                x1, y1, x2, y2 = xb - 4, yb, xa + 4, ya
            parts.append(
                f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" marker-end="url(#arrow)"/>'
            )
            form = ld.labels.get((a, pair))
            if form is not None:
                tx = (xa + xb) // 2
                ty = min(ya, yb) - 4
                parts.append(
                    f'<text x="{tx}" y="{ty}" font-size="10" text-anchor="middle">{escape(form.label_text())}</text>'
                )
    for col in range(1, q.r + 1):
        for dot in range(1, d.columns[col - 1] + 1):
            x, y = xy(col, dot)
            parts.append(f'<circle cx="{x}" cy="{y}" r="3"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
