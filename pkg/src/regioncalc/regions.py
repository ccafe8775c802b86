"""Region crossing change: incidence matrices, class counts, admissibility,
checkerboard colourings, the Tait graph Laplacian and mod-2 linking."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import gf2
from .diagram import CROSSING, DiagramError, SurfaceDiagram
from .gf2 import Gf2Matrix


class CountingRule(enum.Enum):
    MODIFIED = "modified"
    ORIGINAL = "original"

    @classmethod
    def parse(cls, value) -> "CountingRule":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


MODIFIED = CountingRule.MODIFIED
ORIGINAL = CountingRule.ORIGINAL


@dataclass(frozen=True)
class RegionIncidence:
    matrix: Gf2Matrix
    region_order: Tuple[Tuple[int, ...], ...]
    crossing_order: Tuple[int, ...]
    rule: CountingRule

    @property
    def rank(self) -> int:
        return gf2.rank(self.matrix)


def corner_counts(diagram: SurfaceDiagram) -> List[List[int]]:
    """``counts[i][j]``: corners of crossing ``j`` lying in region ``i``."""
    r = diagram.num_regions
    c = diagram.num_crossings
    counts = [[0] * c for _ in range(r)]
    for j, v in enumerate(diagram.crossing_nodes):
        for s in range(4):
            counts[diagram.region_of_dart(diagram.dart(v, s))][j] += 1
    return counts


def incidence_matrix(diagram: SurfaceDiagram, rule=MODIFIED) -> RegionIncidence:
    rule = CountingRule.parse(rule)
    counts = corner_counts(diagram)
    if rule is MODIFIED:
        data = [[k & 1 for k in row] for row in counts]
    else:
        data = [[1 if k else 0 for k in row] for row in counts]
    m = Gf2Matrix.from_lists(data, diagram.num_crossings)
    return RegionIncidence(
        m,
        tuple(reg.faces for reg in diagram.regions),
        tuple(diagram.crossing_nodes),
        rule,
    )


def class_exponent(diagram: SurfaceDiagram, rule=MODIFIED) -> int:
    return diagram.num_crossings - incidence_matrix(diagram, rule).rank


def class_count(diagram: SurfaceDiagram, rule=MODIFIED) -> int:
    """Number of region-crossing-change classes among diagrams sharing the projection."""
    return 1 << class_exponent(diagram, rule)


def _crossing_mask(diagram: SurfaceDiagram, target: Iterable[int]) -> int:
    index = {v: j for j, v in enumerate(diagram.crossing_nodes)}
    mask = 0
    for v in target:
        if v not in index:
            raise DiagramError(f"node {v} is not a crossing")
        mask |= 1 << index[v]
    return mask


def admissible(diagram: SurfaceDiagram, target: Iterable[int], rule=MODIFIED) -> Optional[List[int]]:
    """Regions whose crossing changes switch exactly the crossings ``target``.

    ``target`` holds node indices of crossings.  Returns sorted region
    indices, or ``None`` when no such set exists.
    """
    inc = incidence_matrix(diagram, rule)
    x = gf2.solve(inc.matrix, _crossing_mask(diagram, target))
    if x is None:
        return None
    return gf2.bits(x)


def apply_region_changes(diagram: SurfaceDiagram, regions: Iterable[int], rule=MODIFIED) -> SurfaceDiagram:
    inc = incidence_matrix(diagram, rule)
    flip = 0
    for i in regions:
        flip ^= inc.matrix.rows[i]
    return diagram.with_over_vector(diagram.over_vector() ^ flip)


def equivalent_diagrams(d1: SurfaceDiagram, d2: SurfaceDiagram, rule=MODIFIED) -> bool:
    if d1.projection_key() != d2.projection_key():
        raise DiagramError("diagrams do not share a projection")
    diff = d1.over_vector() ^ d2.over_vector()
    return gf2.solve(incidence_matrix(d1, rule).matrix, diff) is not None


# -- colourings ------------------------------------------------------------------


def sublink_coloring(diagram: SurfaceDiagram, components: Iterable[int]) -> Optional[List[int]]:
    """Colour the regions so colours flip exactly across edges of ``components``.

    This is a checkerboard colouring of the sub-link pulled back to the
    regions of the full diagram.  Returns per-region colours (0 white,
    1 black) with region 0 white, or ``None`` when impossible.
    """
    chosen = set(components)
    r = diagram.num_regions
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(r)]
    for d in range(diagram.num_darts):
        a = diagram.alpha[d]
        if d > a:
            continue
        parity = 1 if diagram.component_of_dart[d] in chosen else 0
        x, y = diagram.region_of_dart(d), diagram.region_of_dart(a)
        adj[x].append((y, parity))
        adj[y].append((x, parity))
    color = [-1] * r
    for start in range(r):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, p in adj[x]:
                want = color[x] ^ p
                if color[y] < 0:
                    color[y] = want
                    queue.append(y)
                elif color[y] != want:
                    return None
    return color


def two_colorable(diagram: SurfaceDiagram, white: int = 0) -> Optional[List[int]]:
    """Checkerboard colouring of all regions (``white`` gets colour 0), or ``None``."""
    color = sublink_coloring(diagram, range(diagram.num_components))
    if color is None:
        return None
    if color[white]:
        color = [1 - c for c in color]
    return color


def is_valid_coloring(diagram: SurfaceDiagram, coloring: Sequence[int]) -> bool:
    if len(coloring) != diagram.num_regions:
        return False
    for d in range(diagram.num_darts):
        if coloring[diagram.region_of_dart(d)] == coloring[diagram.region_of_dart(diagram.alpha[d])]:
            return False
    return True


def _require_planar(diagram: SurfaceDiagram):
    if diagram.genus != 0:
        raise DiagramError("operation requires a planar (genus 0) diagram")


def tait_laplacian(diagram: SurfaceDiagram, coloring: Sequence[int]) -> Gf2Matrix:
    """Mod-2 Laplacian of the Tait graph on the black regions."""
    _require_planar(diagram)
    if len(diagram.pieces) > 1:
        raise DiagramError("Tait graph needs a connected projection")
    if not is_valid_coloring(diagram, coloring):
        raise DiagramError("coloring is not a checkerboard colouring")
    black = [i for i, c in enumerate(coloring) if c == 1]
    vid = {reg: k for k, reg in enumerate(black)}
    m = len(black)
    lap = [[0] * m for _ in range(m)]
    for v in diagram.crossing_nodes:
        ends = [
            vid[diagram.region_of_dart(diagram.dart(v, s))]
            for s in range(4)
            if coloring[diagram.region_of_dart(diagram.dart(v, s))] == 1
        ]
        a, b = ends
        lap[a][a] += 1
        lap[b][b] += 1
        if a != b:
            lap[a][b] += 1
            lap[b][a] += 1
    return Gf2Matrix.from_lists([[x & 1 for x in row] for row in lap], m)


def tait_laplacian_components(diagram: SurfaceDiagram, coloring: Optional[Sequence[int]] = None) -> int:
    """Nullity of the mod-2 Tait Laplacian, which counts link components."""
    if coloring is None:
        _require_planar(diagram)
        coloring = two_colorable(diagram)
    lap = tait_laplacian(diagram, coloring)
    return lap.nrows - gf2.rank(lap)


# -- linking ---------------------------------------------------------------------


def crossing_sign(diagram: SurfaceDiagram, v: int, outgoing: Dict[int, bool]) -> int:
    """Sign of crossing node ``v`` given which of its darts are outgoing.

    +1 when the under-strand's outgoing dart is the counterclockwise
    successor of the over-strand's outgoing dart.
    """
    ds = [diagram.dart(v, s) for s in range(4)]
    out = [d for d in ds if outgoing[d]]
    over = [d for d in out if diagram.is_over(d)]
    under = [d for d in out if not diagram.is_over(d)]
    o, u = over[0], under[0]
    return 1 if diagram.sigma(o) == u else -1


def _outgoing_map(diagram: SurfaceDiagram, reverse: Sequence[bool]) -> Dict[int, bool]:
    out = {}
    for comp in diagram.components:
        flip = bool(reverse[comp.index]) if reverse else False
        for k, d in enumerate(comp.darts):
            out[d] = (k % 2 == 0) != flip
    return out


def linking_numbers(diagram: SurfaceDiagram, reverse: Sequence[bool] = ()) -> List[List[int]]:
    """Integer linking matrix (zero diagonal) of a planar diagram."""
    _require_planar(diagram)
    n = diagram.num_components
    outgoing = _outgoing_map(diagram, reverse)
    twice = [[0] * n for _ in range(n)]
    for v in diagram.crossing_nodes:
        ci = diagram.component_of_dart[diagram.dart(v, 0)]
        cj = diagram.component_of_dart[diagram.dart(v, 1)]
        if ci == cj:
            continue
        s = crossing_sign(diagram, v, outgoing)
        twice[ci][cj] += s
        twice[cj][ci] += s
    for row in twice:
        for x in row:
            if x % 2:
                raise DiagramError("odd signed crossing count between two components")
    return [[x // 2 for x in row] for row in twice]


def mod2_linking_profile(diagram: SurfaceDiagram, reverse: Sequence[bool] = ()) -> Tuple[Tuple[int, ...], bool]:
    """Per component ``sum_{j != i} lk(K_i, K_j) mod 2`` and whether all vanish."""
    lk = linking_numbers(diagram, reverse)
    prof = tuple(sum(row) % 2 for row in lk)
    return prof, not any(prof)
