"""Generators for the standard example diagrams.

Every generator returns a validated :class:`SurfaceDiagram`.  Torus diagrams
are cellular whenever they carry a crossing; crossing-free curves are built
from markers glued by tubes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Sequence, Tuple

from .diagram import CROSSING, MARKER, DiagramError, Node, SurfaceDiagram, canonical, check


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: Tuple[int, ...] = ()

    def build(self) -> SurfaceDiagram:
        if self.name not in GENERATORS:
            raise DiagramError(f"unknown family {self.name!r}")
        return GENERATORS[self.name](*self.params)


def _with_surgery(nodes, tubes_by_dart=(), handles_by_dart=()) -> SurfaceDiagram:
    """Attach tubes/handles named by darts (the face containing that dart's corner)."""
    bare = canonical(nodes)
    f = bare.face_of
    tubes = [(f[a], f[b]) for a, b in tubes_by_dart]
    handles = [(f[d], k) for d, k in handles_by_dart]
    return check(SurfaceDiagram(bare.nodes, tuple(tubes), tuple(handles)))


def _parallel_circles(n: int) -> SurfaceDiagram:
    # marker i is node i with darts 2i (right face) and 2i+1 (left face);
    # tubes join the left side of each curve to the right side of the next
    nodes = [Node(MARKER, (i, i)) for i in range(n)]
    tubes = [(2 * i + 1, 2 * ((i + 1) % n)) for i in range(n)]
    return _with_surgery(nodes, tubes)


def grid(m: int, l: int) -> SurfaceDiagram:
    """``m`` parallel meridians and ``l`` parallel longitudes on the torus."""
    if m < 0 or l < 0 or m + l < 1:
        raise DiagramError("grid needs m, l >= 0 and m + l >= 1")
    if m == 0 or l == 0:
        return _parallel_circles(m + l)

    # X_{i,j}: meridian i meets longitude j; slots east, north, west, south
    def h(i, j):
        return ("h", i % m, j % l)

    def v(i, j):
        return ("v", i % m, j % l)

    nodes = [
        Node(CROSSING, (h(i, j), v(i, j), h(i - 1, j), v(i, j - 1)))
        for j in range(l)
        for i in range(m)
    ]
    return check(canonical(nodes))


def _closed_twist(k: int) -> List[Node]:
    """Planar closure of the braid sigma_1 ... sigma_{k-1} (one component, k - 1 crossings)."""
    nodes = []
    for i in range(1, k):
        fi = ("long", i) if i >= 2 else "loop1"
        bi = ("short", i) if i >= 2 else "loop1"
        bo = ("long", i + 1) if i + 1 <= k - 1 else "loopk"
        fo = ("short", i + 1) if i + 1 <= k - 1 else "loopk"
        nodes.append(Node(CROSSING, (fi, bi, bo, fo)))
    return nodes


def torus_pq(p: int, q: int) -> SurfaceDiagram:
    """A curve on the torus in class ``p[m] + q[l]`` with ``gcd(p, q) - 1`` crossings.

    The diagram is the closed twist on ``k = gcd(p, q)`` strands drawn on an
    annulus, whose two boundary faces are glued by a tube.  It represents the
    class up to a homeomorphism of the torus; mod 2 it is ``k`` times a
    primitive class, matching ``(p mod 2, q mod 2)`` under that homeomorphism.
    ``torus_pq(0, 0)`` is a trivial circle on the torus.
    """
    if p < 0 or q < 0:
        raise DiagramError("torus_pq needs p, q >= 0")
    k = gcd(p, q)
    if k == 0:
        return _with_surgery([Node(MARKER, (0, 0))], handles_by_dart=[(0, 1)])
    if k == 1:
        return _with_surgery([Node(MARKER, (0, 0))], [(0, 1)])
    nodes = _closed_twist(k)
    # centre face sits at slot 1 of the first crossing, outer face at slot 3 of the last
    centre = 1
    outer = 4 * (k - 2) + 3
    return _with_surgery(nodes, [(centre, outer)])


def meridian_family(p: int) -> SurfaceDiagram:
    if p < 1:
        raise DiagramError("meridian_family needs p >= 1")
    return torus_pq(p, 0)


# -- planar diagrams -----------------------------------------------------------

# PD codes X[a, b, c, d]: ccw from the incoming under-strand
_PD = {
    "trefoil": [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)],
    "hopf": [(4, 1, 3, 2), (2, 3, 1, 4)],
    "fig8": [(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)],
}

# figure-eight knot with one kink, chosen so the unmodified incidence matrix
# matches the classical 7 x 5 example up to row and column order
_FIG8_KINKED = [(4, 9, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8), (9, 10, 10, 2)]


def from_pd(code: Sequence[Sequence[int]]) -> SurfaceDiagram:
    return check(canonical([Node(CROSSING, tuple(x), 0) for x in code]))


def circle() -> SurfaceDiagram:
    return _with_surgery([Node(MARKER, (0, 0))])


def kinked_unknot() -> SurfaceDiagram:
    return check(canonical([Node(CROSSING, (0, 0, 1, 1), 0)]))


def unlink(n: int) -> SurfaceDiagram:
    if n < 1:
        raise DiagramError("unlink needs n >= 1")
    nodes = [Node(MARKER, (i, i)) for i in range(n)]
    return _with_surgery(nodes, [(1, 2 * i + 1) for i in range(1, n)])


def fig8() -> SurfaceDiagram:
    """The 4-crossing figure-eight knot without a kink."""
    return from_pd(_PD["fig8"])


def braid_closure(strands: int, word: Sequence[int]) -> SurfaceDiagram:
    """Planar closure of a braid word; ``i`` is sigma_i, ``-i`` its inverse (1-based)."""
    if strands < 1 or any(not 1 <= abs(g) < strands for g in word):
        raise DiagramError("braid generators must lie in 1..strands-1")
    first = [("s", k) for k in range(strands)]
    cur = list(first)
    raw = []
    for t, g in enumerate(word):
        i = abs(g) - 1
        c, d = ("e", t, 0), ("e", t, 1)
        # rotation: bottom-left, bottom-right, top-right, top-left
        raw.append((cur[i], cur[i + 1], d, c, 1 if g > 0 else 0))
        cur[i], cur[i + 1] = c, d
    close = {cur[k]: first[k] for k in range(strands) if cur[k] != first[k]}
    nodes = [Node(CROSSING, tuple(close.get(x, x) for x in r[:4]), r[4]) for r in raw]
    nodes += [Node(MARKER, (first[k], first[k])) for k in range(strands) if cur[k] == first[k]]
    bare = canonical(nodes)
    # split closures (some generator never used) become a connected sum
    heads = [bare.face_of[bare.offsets[g[0]]] for g in bare.pieces]
    tubes = [(heads[0], f) for f in heads[1:]]
    return check(SurfaceDiagram(bare.nodes, tuple(tubes)))


def planar_zoo() -> Dict[str, SurfaceDiagram]:
    return {
        "circle": circle(),
        "kinked_unknot": kinked_unknot(),
        "hopf": from_pd(_PD["hopf"]),
        "trefoil": from_pd(_PD["trefoil"]),
        "fig8_kinked": from_pd(_FIG8_KINKED),
    }


# -- surgery randomisation -------------------------------------------------------


def disjoint_union(a: SurfaceDiagram, b: SurfaceDiagram) -> SurfaceDiagram:
    """Both diagrams on a connected sum of their surfaces (one joining tube)."""
    if not a.nodes:
        return b
    if not b.nodes:
        return a
    nodes = [Node(n.kind, tuple(("a", x) for x in n.labels), n.over) for n in a.nodes]
    nodes += [Node(n.kind, tuple(("b", x) for x in n.labels), n.over) for n in b.nodes]
    bare = canonical(nodes)
    shift = a.num_darts
    fa = [bare.face_of[o[0]] for o in a.faces]
    fb = [bare.face_of[o[0] + shift] for o in b.faces]
    tubes = [(fa[x], fa[y]) for x, y in a.tubes] + [(fb[x], fb[y]) for x, y in b.tubes]
    tubes.append((fa[0], fb[0]))
    handles = [(fa[f], k) for f, k in a.handles] + [(fb[f], k) for f, k in b.handles]
    return check(SurfaceDiagram(bare.nodes, tuple(tubes), tuple(handles)))


def random_surgery(diagram: SurfaceDiagram, rng: random.Random, tubes: int = 2, handles: int = 1) -> SurfaceDiagram:
    """Add random tubes between faces and random handles; the result stays valid."""
    nf = len(diagram.faces)
    if nf == 0:
        return diagram
    new_tubes = list(diagram.tubes)
    for _ in range(tubes):
        new_tubes.append((rng.randrange(nf), rng.randrange(nf)))
    new_handles = list(diagram.handles)
    for _ in range(handles):
        new_handles.append((rng.randrange(nf), 1))
    return check(SurfaceDiagram(diagram.nodes, tuple(new_tubes), tuple(new_handles)))


def two_by_two_poked() -> SurfaceDiagram:
    """Two meridians and two longitudes with eight crossings and eight regions.

    Built from ``grid(2, 2)`` by two finger moves, each pushing a meridian
    across a longitude inside a square face.
    """
    from .rmoves import R2_ADD, apply_move, enumerate_sites

    d = grid(2, 2)
    for _ in range(2):
        for site in enumerate_sites(d):
            if site.kind != R2_ADD or site.anchors[3] != "face":
                continue
            d1, d2 = site.anchors[:2]
            if d.component_of_dart[d1] == d.component_of_dart[d2]:
                continue
            nxt = apply_move(d, site)
            if nxt.num_regions == d.num_regions + 2:
                d = nxt
                break
    return d


GENERATORS = {
    "grid": grid,
    "torus_pq": torus_pq,
    "meridian": meridian_family,
    "circle": circle,
    "kinked_unknot": kinked_unknot,
    "unlink": unlink,
}


def all_family_outputs() -> List[Tuple[str, SurfaceDiagram]]:
    """A fixed, moderately sized sample of every generator."""
    out = [(name, d) for name, d in planar_zoo().items()]
    out.append(("fig8", fig8()))
    for m in range(0, 4):
        for l in range(0, 4):
            if m + l:
                out.append((f"grid({m},{l})", grid(m, l)))
    for p in range(0, 9):
        for q in range(0, 9):
            if p or q:
                out.append((f"torus_pq({p},{q})", torus_pq(p, q)))
    for n in range(1, 4):
        out.append((f"unlink({n})", unlink(n)))
    out.append(("two_by_two_poked", two_by_two_poked()))
    for strands, word in [(3, (1, 2, 1)), (3, (1, -2, 1, -2)), (4, (1, 2, 3, -1, 2)), (4, (1, 3))]:
        out.append((f"braid_closure({strands},{word})", braid_closure(strands, word)))
    return out
