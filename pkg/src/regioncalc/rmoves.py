"""Reidemeister moves as local rewrites of the combinatorial map.

Each move edits a few nodes and relabels the edges around them.  Surgery
data survives through a corner map: every corner of the old map is sent to
a corner of the new map lying in the same part of the surface, and each old
face's tubes and handles move to the image of its first corner.  Moves never
sweep across a face carrying surgery, so the rewrite is an isotopy on the
surface and the genus is preserved (this is asserted).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import (
    CROSSING,
    MARKER,
    DiagramError,
    Node,
    SurfaceDiagram,
    _DSU,
    _rebuild_surgeries,
    canonical,
    check,
)
from .regions import MODIFIED, incidence_matrix

R1_ADD = "R1_ADD"
R1_REMOVE = "R1_REMOVE"
R2_ADD = "R2_ADD"
R2_REMOVE = "R2_REMOVE"
R3 = "R3"
KINDS = (R1_ADD, R1_REMOVE, R2_ADD, R2_REMOVE, R3)
ADD_KINDS = (R1_ADD, R2_ADD)


@dataclass(frozen=True)
class MoveSite:
    """A move kind with its anchors.

    R1_ADD: ``(dart, over)``, the kink goes into the face of ``dart``.
    R1_REMOVE: ``(m,)`` with ``m`` the dart of a monogon face.
    R2_ADD: ``(d1, d2, over, mode)``; the edge of ``d1`` is pushed across the
    edge of ``d2``.  Both darts lie in one face, or in two faces joined by a
    tube (``mode`` is then ``"tube"``).  ``mode`` is ``"A"`` or ``"B"`` when
    ``d1 == d2``.
    R2_REMOVE: ``(u,)`` with ``{u, phi(u)}`` a bigon face.
    R3: ``(t1, t2, t3)`` a triangle face; the strand through ``t2`` moves.
    """

    kind: str
    anchors: Tuple

    def __str__(self) -> str:
        return f"{self.kind} " + " ".join(str(a) for a in self.anchors)


class _Rewrite:
    """Mutable copy of a node list plus the bookkeeping for surgeries."""

    def __init__(self, diagram: SurfaceDiagram):
        self.old = diagram
        self.nodes: List[Optional[List]] = [
            [n.kind, list(n.labels), n.over] for n in diagram.nodes
        ]
        self.corner: Dict[int, List[Tuple[int, int]]] = {}
        self.consumed: List[Tuple[int, int]] = []
        # old darts whose region is glued to another along an arc (chi drops by one each)
        self.glued: Optional[List[int]] = None
        self._fresh = 0

    def fresh(self):
        self._fresh += 1
        return ("new", self._fresh)

    def relabel(self, d: int, label) -> None:
        v = self.old.node_of[d]
        self.nodes[v][1][self.old.slot_of(d)] = label

    def label(self, d: int):
        v = self.old.node_of[d]
        return self.nodes[v][1][self.old.slot_of(d)]

    def add(self, kind, labels, over=0) -> int:
        self.nodes.append([kind, list(labels), over])
        return len(self.nodes) - 1

    def replace(self, v: int, kind, labels, over=0) -> None:
        self.nodes[v] = [kind, list(labels), over]

    def remove(self, v: int) -> None:
        self.nodes[v] = None

    def send(self, d: int, *targets: Tuple[int, int]) -> None:
        """Map the corner of old dart ``d`` to corners ``(node, slot)`` of the new map."""
        self.corner[d] = list(targets)

    def finish(self) -> SurfaceDiagram:
        old = self.old
        keep = [i for i, n in enumerate(self.nodes) if n is not None]
        index = {v: k for k, v in enumerate(keep)}
        new_nodes = [
            Node(self.nodes[v][0], tuple(self.nodes[v][1]), self.nodes[v][2] if self.nodes[v][0] == CROSSING else 0)
            for v in keep
        ]
        bare = canonical(new_nodes)
        if not bare.nodes:
            raise DiagramError("a move may not delete every node")

        def new_dart(v, s):
            return bare.offsets[index[v]] + s

        images: List[List[int]] = []
        for orbit in old.faces:
            img = []
            for d in orbit:
                targets = self.corner.get(d)
                if targets is None:
                    targets = [(old.node_of[d], old.slot_of(d))]
                img.extend(bare.face_of[new_dart(v, s)] for v, s in targets)
            images.append(img)
        if self.glued is not None:
            out = self._merge_regions(bare, images)
        else:
            out = self._carry_surgeries(bare, images)
        if out.genus != old.genus:
            raise AssertionError(f"move changed genus {old.genus} -> {out.genus}")
        return out

    def _carry_surgeries(self, bare: SurfaceDiagram, images) -> SurfaceDiagram:
        """Faces may split but never merge: surgeries follow each face's first corner."""
        old = self.old
        rep = [img[0] for img in images]
        tubes = list(old.tubes)
        for t in self.consumed:
            tubes.remove(tuple(sorted(t)))
        new_tubes = [(rep[a], rep[b]) for a, b in tubes]
        handles = [(rep[f], k) for f, k in old.handles]
        return check(SurfaceDiagram(bare.nodes, tuple(new_tubes), tuple(handles)))

    def _merge_regions(self, bare: SurfaceDiagram, images) -> SurfaceDiagram:
        """Faces only merge: rebuild regions from old ones and the gluing count."""
        old = self.old
        nf = len(bare.faces)
        dsu = _DSU(nf)
        for img in images:
            for f in img[1:]:
                dsu.union(img[0], f)
        for a, b in old.tubes:
            dsu.union(images[a][0], images[b][0])
        cls: Dict[int, int] = {}
        for f in range(nf):
            cls.setdefault(dsu.find(f), len(cls))
        chi = [0] * len(cls)
        hit = [False] * len(cls)
        for reg in old.regions:
            c = cls[dsu.find(images[reg.faces[0]][0])]
            chi[c] += reg.euler_characteristic
            hit[c] = True
        for d in self.glued:
            chi[cls[dsu.find(images[old.face_of[d]][0])]] -= 1
        for c in range(len(cls)):
            if not hit[c]:
                chi[c] = 1
        members: List[List[int]] = [[] for _ in cls]
        for d in range(bare.num_darts):
            members[cls[dsu.find(bare.face_of[d])]].append(d)
        return check(_rebuild_surgeries(bare.nodes, members, chi))


def _surgered_faces(diagram: SurfaceDiagram) -> set:
    out = set()
    for a, b in diagram.tubes:
        out.update((a, b))
    for f, _ in diagram.handles:
        out.add(f)
    return out


def _is_crossing_dart(diagram: SurfaceDiagram, d: int) -> bool:
    return diagram.nodes[diagram.node_of[d]].kind == CROSSING


# -- applicability -------------------------------------------------------------


def _r2_remove_parts(diagram: SurfaceDiagram, u: int):
    """Darts around a removable bigon, or ``None``."""
    v = diagram.phi(u)
    if diagram.phi(v) != u or u == v:
        return None
    if not (_is_crossing_dart(diagram, u) and _is_crossing_dart(diagram, v)):
        return None
    X, Y = diagram.node_of[u], diagram.node_of[v]
    if X == Y:
        return None
    if diagram.face_of[u] in _surgered_faces(diagram):
        return None
    sig = diagram.sigma
    av, au = diagram.alpha[v], diagram.alpha[u]
    b1, a1 = sig(u), sig(sig(u))
    a2, b2 = sig(v), sig(sig(v))
    if diagram.is_over(u) != diagram.is_over(au):
        return None
    al = diagram.alpha
    if al[a1] in (b2, b1) or al[b1] == a2 or al[a2] == b2:
        return None
    return dict(X=X, Y=Y, u=u, v=v, au=au, av=av, a1=a1, b1=b1, a2=a2, b2=b2)


def _r3_orientation(diagram: SurfaceDiagram, orbit: Sequence[int]) -> Optional[Tuple[int, int, int]]:
    if len(orbit) != 3:
        return None
    if not all(_is_crossing_dart(diagram, d) for d in orbit):
        return None
    if len({diagram.node_of[d] for d in orbit}) != 3:
        return None
    if diagram.face_of[orbit[0]] in _surgered_faces(diagram):
        return None
    t = list(orbit)
    for r in range(3):
        t1, t2, t3 = t[r], t[(r + 1) % 3], t[(r + 2) % 3]
        # the strand along t2's edge must lie over (or under) both others
        if diagram.is_over(t2) == diagram.is_over(diagram.alpha[t2]):
            return (t1, t2, t3)
    return None


def enumerate_sites(diagram: SurfaceDiagram) -> List[MoveSite]:
    """Every applicable move site, in a deterministic order."""
    out: List[MoveSite] = []
    D = diagram
    surgered = _surgered_faces(D)
    for d in range(D.num_darts):
        for over in (0, 1):
            out.append(MoveSite(R1_ADD, (d, over)))
    for orbit in D.faces:
        if len(orbit) == 1 and _is_crossing_dart(D, orbit[0]) and D.face_of[orbit[0]] not in surgered:
            out.append(MoveSite(R1_REMOVE, (orbit[0],)))
    for orbit in D.faces:
        for d1 in orbit:
            for d2 in orbit:
                for over in (0, 1):
                    if d1 == d2:
                        out.append(MoveSite(R2_ADD, (d1, d1, over, "A")))
                        out.append(MoveSite(R2_ADD, (d1, d1, over, "B")))
                    elif d2 != D.alpha[d1]:
                        out.append(MoveSite(R2_ADD, (d1, d2, over, "face")))
    for a, b in sorted(set(D.tubes)):
        if a == b:
            continue
        for f, g in ((a, b), (b, a)):
            for d1 in D.faces[f]:
                for d2 in D.faces[g]:
                    for over in (0, 1):
                        out.append(MoveSite(R2_ADD, (d1, d2, over, "tube")))
    for orbit in D.faces:
        if len(orbit) == 2 and _r2_remove_parts(D, orbit[0]) is not None:
            out.append(MoveSite(R2_REMOVE, (orbit[0],)))
    for orbit in D.faces:
        t = _r3_orientation(D, orbit)
        if t is not None:
            out.append(MoveSite(R3, t))
    return out


def is_applicable(diagram: SurfaceDiagram, site: MoveSite) -> bool:
    return site in set(enumerate_sites(diagram))


# -- the moves -------------------------------------------------------------------


def _r1_add(D: SurfaceDiagram, d: int, over: int) -> SurfaceDiagram:
    rw = _Rewrite(D)
    a = D.alpha[d]
    x1, x2, loop = rw.fresh(), rw.fresh(), rw.fresh()
    rw.relabel(d, x1)
    rw.relabel(a, x2)
    rw.add(CROSSING, (x1, loop, loop, x2), over)
    return rw.finish()


def _r1_remove(D: SurfaceDiagram, m: int) -> SurfaceDiagram:
    rw = _Rewrite(D)
    v = D.node_of[m]
    k = D.slot_of(D.alpha[m])
    l0, l1 = D.dart(v, k), m
    y, x = D.dart(v, k + 2), D.dart(v, k + 3)
    ax, ay = D.alpha[x], D.alpha[y]
    rw.remove(v)
    rw.glued = [l1]
    if ax == y:
        lab = rw.fresh()
        mk = rw.add(MARKER, (lab, lab))
        same, other = (mk, 0), (mk, 1)
    else:
        lab = rw.fresh()
        rw.relabel(ax, lab)
        rw.relabel(ay, lab)
        same = (D.node_of[ax], D.slot_of(ax))
        other = (D.node_of[ay], D.slot_of(ay))
    for c in (l0, l1, y):
        rw.send(c, same)
    rw.send(x, other)
    return rw.finish()


def _r2_add(D: SurfaceDiagram, d1: int, d2: int, over: int, mode: str) -> SurfaceDiagram:
    rw = _Rewrite(D)
    e1a, tip, e1b, e2a, e2m, e2b = (rw.fresh() for _ in range(6))
    a1, a2 = D.alpha[d1], D.alpha[d2]
    if mode == "A":
        # finger taken from the part of the edge next to d
        rw.relabel(d1, e1a)
        rw.relabel(a1, e2b)
        rw.add(CROSSING, (e2b, tip, e2m, e1a), over)
        rw.add(CROSSING, (e2m, tip, e1b, e1b), over)
    elif mode == "B":
        rw.relabel(d1, e2a)
        rw.relabel(a1, e1b)
        rw.add(CROSSING, (e1a, tip, e2m, e1a), over)
        rw.add(CROSSING, (e2m, tip, e2a, e1b), over)
    else:
        if mode == "tube":
            rw.consumed.append((D.face_of[d1], D.face_of[d2]))
        rw.relabel(d1, e1a)
        rw.relabel(a1, e1b)
        rw.relabel(d2, e2a)
        rw.relabel(a2, e2b)
        rw.add(CROSSING, (e2b, tip, e2m, e1a), over)
        rw.add(CROSSING, (e2m, tip, e2a, e1b), over)
    return rw.finish()


def _r2_remove(D: SurfaceDiagram, u: int) -> SurfaceDiagram:
    p = _r2_remove_parts(D, u)
    if p is None:
        raise DiagramError("not a removable bigon")
    rw = _Rewrite(D)
    al = D.alpha
    rw.remove(p["X"])
    rw.remove(p["Y"])
    rw.glued = [p["u"], p["u"]]

    def at(d):
        return (D.node_of[d], D.slot_of(d))

    lab = rw.fresh()
    if al[p["a1"]] == p["a2"]:
        m1 = rw.add(MARKER, (lab, lab))
        below, strip_a = (m1, 0), (m1, 1)
    else:
        rw.relabel(al[p["a1"]], lab)
        rw.relabel(al[p["a2"]], lab)
        below, strip_a = at(al[p["a1"]]), at(al[p["a2"]])
    lab = rw.fresh()
    if al[p["b1"]] == p["b2"]:
        m2 = rw.add(MARKER, (lab, lab))
        strip_b, above = (m2, 0), (m2, 1)
    else:
        rw.relabel(al[p["b1"]], lab)
        rw.relabel(al[p["b2"]], lab)
        strip_b, above = at(al[p["b1"]]), at(al[p["b2"]])
    for c in (p["u"], p["v"], p["a1"], p["b2"]):
        rw.send(c, strip_b, strip_a)
    for c in (p["b1"], p["au"]):
        rw.send(c, above)
    for c in (p["av"], p["a2"]):
        rw.send(c, below)
    return rw.finish()


def _r3(D: SurfaceDiagram, t1: int, t2: int, t3: int) -> SurfaceDiagram:
    """Move the strand along t2's edge across the crossing of t1."""
    rw = _Rewrite(D)
    sig = D.sigma
    A, B, C = D.node_of[t1], D.node_of[t2], D.node_of[t3]
    e1, e2 = sig(t1), sig(sig(t1))
    e5, e0 = sig(t2), sig(sig(t2))
    e3, e4 = sig(t3), sig(sig(t3))
    lab = {e: rw.label(e) for e in (e0, e1, e2, e3, e4, e5)}
    over_a = int(D.is_over(e1))
    over_b = int(D.is_over(t2))
    over_c = int(D.is_over(e3))
    p_ab, r_ac, q_cb = rw.fresh(), rw.fresh(), rw.fresh()
    rw.replace(A, CROSSING, (r_ac, p_ab, lab[e4], lab[e5]), over_a)
    rw.replace(B, CROSSING, (q_cb, lab[e2], lab[e3], p_ab), over_b)
    rw.replace(C, CROSSING, (lab[e0], lab[e1], q_cb, r_ac), over_c)
    sectors = {
        "tri": (A, 1),
        "s_ab": (C, 1),
        "o_a": (B, 1),
        "s_ca": (B, 2),
        "o_c": (A, 2),
        "s_bc": (A, 3),
        "o_b": (A, 0),
    }
    al = D.alpha
    for d, s in (
        (t1, "tri"), (t2, "tri"), (t3, "tri"),
        (e1, "s_ab"), (al[t1], "s_ab"),
        (e2, "o_a"),
        (al[t3], "s_ca"), (e3, "s_ca"),
        (e4, "o_c"),
        (e5, "s_bc"), (al[t2], "s_bc"),
        (e0, "o_b"),
    ):
        rw.send(d, sectors[s])
    return rw.finish()


def apply_move(diagram: SurfaceDiagram, site: MoveSite) -> SurfaceDiagram:
    if not is_applicable(diagram, site):
        raise DiagramError(f"move site {site} is not applicable")
    k, a = site.kind, site.anchors
    if k == R1_ADD:
        out = _r1_add(diagram, *a)
    elif k == R1_REMOVE:
        out = _r1_remove(diagram, *a)
    elif k == R2_ADD:
        out = _r2_add(diagram, *a)
    elif k == R2_REMOVE:
        out = _r2_remove(diagram, *a)
    else:
        out = _r3(diagram, *a)
    if out.num_components != diagram.num_components:
        raise AssertionError("move changed the number of components")
    return out


# -- random walks ----------------------------------------------------------------


@dataclass
class TrialReport:
    values: List[int]
    moves: List[str] = field(default_factory=list)
    final: Optional[SurfaceDiagram] = None

    @property
    def constant(self) -> bool:
        return len(set(self.values)) <= 1


def random_move(diagram: SurfaceDiagram, rng: random.Random, cap: int) -> MoveSite:
    """Pick a kind first, then a site, so rare kinds are not drowned out."""
    sites = enumerate_sites(diagram)
    by_kind: Dict[str, List[MoveSite]] = {}
    for s in sites:
        by_kind.setdefault(s.kind, []).append(s)
    kinds = [k for k in KINDS if k in by_kind]
    if diagram.num_crossings < cap and rng.random() < 0.5:
        kinds = [k for k in kinds if k in ADD_KINDS] or kinds
    elif diagram.num_crossings >= cap:
        kinds = [k for k in kinds if k not in ADD_KINDS] or kinds
    kind = rng.choice(kinds)
    return rng.choice(by_kind[kind])


def invariance_trial(diagram: SurfaceDiagram, steps: int, seed) -> TrialReport:
    """Track ``r - rank(M)`` (modified rule) along a random walk of moves."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = random.Random(seed)
    cap = max(3 * diagram.num_crossings, 3)

    def value(d):
        return d.num_regions - incidence_matrix(d, MODIFIED).rank

    report = TrialReport([value(diagram)])
    cur = diagram
    for _ in range(steps):
        site = random_move(cur, rng, cap)
        cur = apply_move(cur, site)
        report.moves.append(site.kind)
        report.values.append(value(cur))
    report.final = cur
    return report
