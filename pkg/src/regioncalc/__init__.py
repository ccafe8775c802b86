"""Region crossing change on link diagrams drawn on closed orientable surfaces."""

from .diagram import (
    CROSSING,
    EMPTY,
    MARKER,
    Component,
    DiagramError,
    Node,
    Region,
    SurfaceDiagram,
    check,
    delete_component,
    delete_components,
    parse_diagram,
    serialize,
    validate,
)
from .gf2 import Gf2Matrix
from .regions import MODIFIED, ORIGINAL, CountingRule, class_count, incidence_matrix

__all__ = [
    "CROSSING",
    "EMPTY",
    "MARKER",
    "Component",
    "CountingRule",
    "DiagramError",
    "Gf2Matrix",
    "MODIFIED",
    "Node",
    "ORIGINAL",
    "Region",
    "SurfaceDiagram",
    "check",
    "class_count",
    "delete_component",
    "delete_components",
    "incidence_matrix",
    "parse_diagram",
    "serialize",
    "validate",
]
