"""Mod-2 homology classes of link components on the ambient surface.

A cycle of the diagram graph bounds on the surface exactly when it is a
mod-2 sum of region boundaries, so the span of the component classes is
computed as a quotient of edge space by the region boundary span.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import gf2
from .diagram import SurfaceDiagram, _DSU, delete_components
from .gf2 import Gf2Matrix
from .regions import MODIFIED, incidence_matrix, sublink_coloring, two_colorable


@dataclass(frozen=True)
class HomologyProfile:
    n_rank: int
    class_vectors: Tuple[Tuple[int, ...], ...]
    null_basis: Tuple[int, ...]
    """Component subsets (bitsets over component indices) with zero class sum."""


def region_boundaries(diagram: SurfaceDiagram) -> List[int]:
    """Edge bitset of each region's boundary, counted mod 2."""
    face_vec = []
    for orbit in diagram.faces:
        v = 0
        for d in orbit:
            v ^= 1 << diagram.edge_of[d]
        face_vec.append(v)
    out = []
    for reg in diagram.regions:
        v = 0
        for f in reg.faces:
            v ^= face_vec[f]
        out.append(v)
    return out


def component_vectors(diagram: SurfaceDiagram) -> List[int]:
    return [diagram.component_edges(i) for i in range(diagram.num_components)]


def _fundamental_cycles(diagram: SurfaceDiagram) -> List[int]:
    """One cycle per non-tree edge of a BFS spanning forest of the diagram graph."""
    nv = len(diagram.nodes)
    dsu = _DSU(nv)
    cycles = []
    tree_adj: List[List[Tuple[int, int]]] = [[] for _ in range(nv)]
    non_tree = []
    for d in range(diagram.num_darts):
        a = diagram.alpha[d]
        if d > a:
            continue
        u, w = diagram.node_of[d], diagram.node_of[a]
        e = diagram.edge_of[d]
        if dsu.union(u, w):
            tree_adj[u].append((w, e))
            tree_adj[w].append((u, e))
        else:
            non_tree.append((u, w, e))
    # path-to-root edge sets
    root_path = [None] * nv
    for s in range(nv):
        if root_path[s] is not None:
            continue
        root_path[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y, e in tree_adj[x]:
                if root_path[y] is None:
                    root_path[y] = root_path[x] ^ (1 << e)
                    stack.append(y)
    for u, w, e in non_tree:
        cycles.append(root_path[u] ^ root_path[w] ^ (1 << e))
    return cycles


def homology_profile(diagram: SurfaceDiagram) -> HomologyProfile:
    bounds = gf2.echelon_basis(region_boundaries(diagram))
    reduced = [gf2.reduce_against(k, bounds) for k in component_vectors(diagram)]
    n = len(reduced)
    ne = diagram.num_edges

    # basis of the image of graph cycles in surface homology
    gens: List[int] = []
    ech: List[Tuple[int, int]] = []
    for cyc in _fundamental_cycles(diagram):
        r = gf2.reduce_against(cyc, bounds)
        if gf2.reduce_against(r, ech):
            gens.append(r)
            ech = gf2.echelon_basis(gens)
    width = 2 * diagram.genus
    gen_mat = Gf2Matrix.from_rows(gens, ne)
    vectors = []
    for k in reduced:
        x = gf2.solve(gen_mat, k)
        assert x is not None, "component class outside the cycle image"
        coords = [(x >> j) & 1 for j in range(len(gens))]
        vectors.append(tuple(coords + [0] * (width - len(coords))))

    kmat = Gf2Matrix.from_rows(reduced, ne)
    n_rank = gf2.rank(kmat)
    null = tuple(gf2.left_nullspace(kmat))
    assert len(null) == n - n_rank
    return HomologyProfile(n_rank, tuple(vectors), null)


def total_class_vanishes(diagram: SurfaceDiagram) -> bool:
    """Whether the sum of all component classes is zero in mod-2 homology."""
    bounds = gf2.echelon_basis(region_boundaries(diagram))
    total = 0
    for k in component_vectors(diagram):
        total ^= k
    return gf2.reduce_against(total, bounds) == 0


@dataclass(frozen=True)
class Theorem4Report:
    r: int
    n: int
    c: int
    rank_modified: int
    n_rank: int
    holds: bool


def verify_theorem4(diagram: SurfaceDiagram) -> Theorem4Report:
    """Check ``rank(M) = r - n - 1 + rank(N)`` for the modified incidence matrix."""
    r = diagram.num_regions
    n = diagram.num_components
    rk = incidence_matrix(diagram, MODIFIED).rank
    nr = homology_profile(diagram).n_rank
    return Theorem4Report(r, n, diagram.num_crossings, rk, nr, rk == r - n - 1 + nr)


def components_in(subset: int, n: int) -> List[int]:
    return [i for i in range(n) if (subset >> i) & 1]


@dataclass(frozen=True)
class NullSublink:
    components: Tuple[int, ...]
    diagram: SurfaceDiagram
    coloring: Optional[Tuple[int, ...]]
    region_vector: int


def sublink_diagram(diagram: SurfaceDiagram, keep) -> SurfaceDiagram:
    """The diagram with every component outside ``keep`` deleted."""
    keep = set(keep)
    return delete_components(diagram, [i for i in range(diagram.num_components) if i not in keep])


def null_sublinks(diagram: SurfaceDiagram) -> List[NullSublink]:
    """Sub-diagram and checkerboard colouring for each null-basis component subset."""
    prof = homology_profile(diagram)
    out = []
    for subset in prof.null_basis:
        comps = components_in(subset, diagram.num_components)
        sub = sublink_diagram(diagram, comps)
        col = two_colorable(sub)
        x = region_vector_of_sublink(diagram, comps)
        out.append(NullSublink(tuple(comps), sub, None if col is None else tuple(col), x or 0))
    return out


def region_null_sublinks(diagram: SurfaceDiagram) -> List[NullSublink]:
    """Sub-link of each left-nullspace basis vector of the modified incidence matrix.

    Colouring the regions of ``x`` white and the rest black flips colour
    exactly across the returned components, so deleting the others leaves a
    checkerboard-colourable diagram.
    """
    inc = incidence_matrix(diagram, MODIFIED)
    out = []
    for x in gf2.left_nullspace(inc.matrix):
        comps = sublink_of_region_vector(diagram, x)
        if comps is None:
            raise AssertionError("colour flip is not constant along a component")
        sub = sublink_diagram(diagram, comps)
        col = two_colorable(sub)
        out.append(NullSublink(tuple(comps), sub, None if col is None else tuple(col), x))
    return out


def region_vector_of_sublink(diagram: SurfaceDiagram, components) -> Optional[int]:
    """Regions coloured white by the checkerboard colouring pulled back from a sub-link."""
    col = sublink_coloring(diagram, components)
    if col is None:
        return None
    x = 0
    for i, c in enumerate(col):
        if c == 0:
            x |= 1 << i
    return x


def sublink_of_region_vector(diagram: SurfaceDiagram, x: int) -> Optional[List[int]]:
    """Components along which the colouring 'regions in x white, rest black' flips.

    For ``x`` in the left nullspace of the modified incidence matrix the flip
    is constant along each component; ``None`` signals a component where it
    is not.
    """
    white = [(x >> diagram.region_of_face[f]) & 1 for f in range(len(diagram.faces))]
    result = []
    for comp in diagram.components:
        flips = {
            white[diagram.face_of[d]] != white[diagram.face_of[diagram.alpha[d]]]
            for d in comp.outgoing
        }
        if len(flips) != 1:
            return None
        if flips.pop():
            result.append(comp.index)
    return result
