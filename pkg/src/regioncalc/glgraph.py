"""Brute-force analysis of the graph on all over/under assignments of a projection.

Vertices are the ``2^c`` crossing-bit vectors; ``w`` is joined to
``w ^ row(R)`` for every region ``R``.  Components are found with a
vectorised union-find over a flat label array, which serves as an oracle for
the closed-form class count.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

import numpy as np

from .diagram import SurfaceDiagram
from .regions import MODIFIED, incidence_matrix

DEFAULT_LIMIT = 20


class GlLimitError(RuntimeError):
    """The crossing count exceeds the enumeration cap."""


def default_limit() -> int:
    return int(os.environ.get("REGIONCALC_GL_LIMIT", DEFAULT_LIMIT))


@dataclass(frozen=True)
class GlSummary:
    vertex_count: int
    component_count: int
    component_size: int
    loops_per_vertex: int
    sizes_equal: bool = True


def _component_labels(c: int, rows) -> np.ndarray:
    """Smallest vertex of each vertex's component, for all ``2^c`` vertices."""
    n = 1 << c
    label = np.arange(n, dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    rows = [r for r in set(rows) if r]
    if not rows:
        return label
    while True:
        before = label.copy()
        for r in rows:
            # hook each vertex to the smaller label of itself and its neighbour
            np.minimum(label, label[idx ^ r], out=label)
        # pointer jumping until labels are fixed points
        while True:
            nxt = label[label]
            if np.array_equal(nxt, label):
                break
            label = nxt
        if np.array_equal(label, before):
            return label


def _check_limit(c: int, limit):
    if limit is None:
        limit = default_limit()
    if c > limit:
        raise GlLimitError(f"{c} crossings exceed the enumeration limit {limit}; use class_count instead")


def component_labels(diagram: SurfaceDiagram, rule=MODIFIED, limit=None) -> np.ndarray:
    """Component representative of every over-bit vector; equal labels mean reachable."""
    c = diagram.num_crossings
    _check_limit(c, limit)
    return _component_labels(c, incidence_matrix(diagram, rule).matrix.rows)


def gl_bruteforce(diagram: SurfaceDiagram, rule=MODIFIED, limit=None) -> GlSummary:
    c = diagram.num_crossings
    _check_limit(c, limit)
    rows = incidence_matrix(diagram, rule).matrix.rows
    label = _component_labels(c, rows)
    roots, sizes = np.unique(label, return_counts=True)
    loops = sum(1 for r in rows if r == 0)
    equal = bool(np.all(sizes == sizes[0]))
    return GlSummary(1 << c, len(roots), int(sizes.max()), loops, equal)


def translation_check(diagram: SurfaceDiagram, rule=MODIFIED, samples: int = 32, seed=0, limit=None) -> bool:
    """Check that ``h(w) = w ^ u ^ v`` preserves components and that all components have one size.

    ``h`` trivially preserves adjacency; what is tested is that it maps the
    component partition onto itself, plus the size statement.
    """
    c = diagram.num_crossings
    _check_limit(c, limit)
    rows = incidence_matrix(diagram, rule).matrix.rows
    label = _component_labels(c, rows)
    _, sizes = np.unique(label, return_counts=True)
    if not np.all(sizes == sizes[0]):
        return False
    rng = random.Random(seed)
    n = 1 << c
    for _ in range(samples):
        u, v, w, x = (rng.randrange(n) for _ in range(4))
        t = u ^ v
        for r in rows:
            if label[w] != label[w ^ r]:
                return False
        if (label[w] == label[x]) != (label[w ^ t] == label[x ^ t]):
            return False
    return True
