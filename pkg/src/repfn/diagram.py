"""Sum diagrams: every ordered member pair (a, b) plotted at (a + b, a).

All pairs with the same sum n land on the vertical line x = n, so the
column at x = n carries exactly r1(A, n) points.  Removing an integer c
from the set blanks the horizontal line y = c and one falling diagonal.
The x axis points right and the y axis points up, origin at bottom left.
"""

from __future__ import annotations

from xml.etree import ElementTree

from .errors import BudgetExceededError
from .sets import IntegerSet

__all__ = ["render_diagram", "diagram_points", "DEFAULT_RENDER_BUDGET"]

DEFAULT_RENDER_BUDGET = 1 << 26  # bytes of rendered output

_CELL = 12  # svg lattice spacing in pixels
_MARGIN = 10
_RADIUS = 3


def diagram_points(a: IntegerSet, max_sum: int) -> list[tuple[int, int]]:
    """Lattice points (a + b, a) for ordered member pairs with a + b <= max_sum."""
    if max_sum < 0:
        raise ValueError("max_sum must be non-negative")
    mem = a.membership_bytes(max_sum)
    points = []
    for n in range(max_sum + 1):
        for x in range(n + 1):
            if mem[x] and mem[n - x]:
                points.append((n, x))
    return points


def render_diagram(
    a: IntegerSet,
    max_sum: int,
    fmt: str = "svg",
    *,
    budget: int = DEFAULT_RENDER_BUDGET,
) -> str:
    """Render the sum diagram as an SVG document or an ASCII grid."""
    if fmt not in ("svg", "ascii"):
        raise ValueError(f"unknown diagram format {fmt!r}")
    points = diagram_points(a, max_sum)
    estimate = _estimate_bytes(fmt, max_sum, len(points))
    if estimate > budget:
        raise BudgetExceededError(
            f"diagram of {a.spec()} up to {max_sum} needs about {estimate} bytes",
            budget=budget,
        )
    if fmt == "ascii":
        return _render_ascii(points, max_sum)
    return _render_svg(points, max_sum)


def _estimate_bytes(fmt: str, max_sum: int, npoints: int) -> int:
    if fmt == "ascii":
        return (max_sum + 2) * (max_sum + 1)
    return 512 + 64 * npoints


def _render_ascii(points: list[tuple[int, int]], max_sum: int) -> str:
    # row 0 of the text is the top of the picture, so y runs downward here
    grid = [["."] * (max_sum + 1) for _ in range(max_sum + 1)]
    for x, y in points:
        grid[max_sum - y][x] = "*"
    return "\n".join("".join(row) for row in grid) + "\n"


def _render_svg(points: list[tuple[int, int]], max_sum: int) -> str:
    side = 2 * _MARGIN + max_sum * _CELL
    root = ElementTree.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(side),
        height=str(side),
        viewBox=f"0 0 {side} {side}",
    )
    for x, y in points:
        ElementTree.SubElement(
            root,
            "circle",
            cx=str(_MARGIN + x * _CELL),
            cy=str(_MARGIN + (max_sum - y) * _CELL),
            r=str(_RADIUS),
        )
    return ElementTree.tostring(root, encoding="unicode") + "\n"


def svg_column_counts(svg_text: str, max_sum: int) -> list[int]:
    """Recover per-column point counts from a rendered SVG document."""
    root = ElementTree.fromstring(svg_text)
    counts = [0] * (max_sum + 1)
    for el in root:
        if el.tag.endswith("circle"):
            x = (int(el.get("cx")) - _MARGIN) // _CELL
            counts[x] += 1
    return counts
