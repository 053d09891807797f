"""Knot shadows, HOMFLY polynomials and fertility of knots."""

from ._knotfert import (
    Diagram,
    Fertility,
    KnotfertError,
    Shadow,
    Table,
    enumerate_shadows,
    is_realizable,
)

__all__ = [
    "Diagram",
    "Fertility",
    "KnotfertError",
    "Shadow",
    "Table",
    "enumerate_shadows",
    "is_realizable",
]
