"""Link diagrams on closed orientable surfaces as combinatorial maps.

A diagram is a list of nodes.  A crossing carries four edge labels in
counterclockwise order (strands pair slots 0-2 and 1-3), a marker carries two
labels and stands in for a crossing-free stretch of a component.  Every label
occurs exactly twice and the two occurrences are glued into an edge.

Darts are numbered node by node, slot by slot.  With ``alpha`` the edge
pairing and ``sigma`` the counterclockwise rotation at a node, faces are the
orbits of ``phi = sigma o alpha``; the corner between ``sigma^-1(d)`` and
``d`` belongs to ``face(d)``, and ``face(d)`` lies to the right of the edge
when walking from ``d`` to ``alpha(d)``.

Non-cellular embeddings are encoded by surgeries on the cellular map: a tube
glues two faces (a face may be tubed to itself) and ``handles`` adds genus
inside a face.  Faces glued by tubes form one region.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

CROSSING = "crossing"
MARKER = "marker"

HEADER = "surface_diagram v1"


class DiagramError(ValueError):
    """Raised for malformed or inconsistent diagrams."""


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class Node:
    kind: str
    labels: Tuple[int, ...]
    over: int = 0

    @property
    def degree(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class Region:
    faces: Tuple[int, ...]
    euler_characteristic: int


@dataclass(frozen=True)
class Component:
    index: int
    darts: Tuple[int, ...]
    """Alternating outgoing/incoming darts in traversal order, starting outgoing."""

    @property
    def outgoing(self) -> Tuple[int, ...]:
        return self.darts[0::2]


@dataclass(frozen=True)
class SurfaceDiagram:
    nodes: Tuple[Node, ...] = ()
    tubes: Tuple[Tuple[int, int], ...] = ()
    handles: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(
            self, "tubes", tuple(tuple(sorted((int(a), int(b)))) for a, b in self.tubes)
        )
        merged: Dict[int, int] = {}
        for f, k in self.handles:
            merged[int(f)] = merged.get(int(f), 0) + int(k)
        object.__setattr__(self, "handles", tuple(sorted((f, k) for f, k in merged.items() if k)))

    # -- darts -------------------------------------------------------------

    @cached_property
    def offsets(self) -> Tuple[int, ...]:
        out, acc = [], 0
        for n in self.nodes:
            out.append(acc)
            acc += n.degree
        return tuple(out)

    @cached_property
    def num_darts(self) -> int:
        return sum(n.degree for n in self.nodes)

    @cached_property
    def node_of(self) -> Tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.nodes) for _ in range(n.degree))

    def slot_of(self, d: int) -> int:
        return d - self.offsets[self.node_of[d]]

    def dart(self, node: int, slot: int) -> int:
        return self.offsets[node] + slot % self.nodes[node].degree

    def label_of(self, d: int) -> int:
        return self.nodes[self.node_of[d]].labels[self.slot_of(d)]

    @cached_property
    def alpha(self) -> Tuple[int, ...]:
        where: Dict[int, List[int]] = {}
        d = 0
        for n in self.nodes:
            for lab in n.labels:
                where.setdefault(lab, []).append(d)
                d += 1
        out = [-1] * d
        for lab, ds in where.items():
            if len(ds) != 2:
                raise DiagramError(f"edge label {lab} used {len(ds)} times")
            out[ds[0]], out[ds[1]] = ds[1], ds[0]
        return tuple(out)

    def sigma(self, d: int) -> int:
        v = self.node_of[d]
        return self.offsets[v] + (d - self.offsets[v] + 1) % self.nodes[v].degree

    def sigma_inv(self, d: int) -> int:
        v = self.node_of[d]
        deg = self.nodes[v].degree
        return self.offsets[v] + (d - self.offsets[v] - 1) % deg

    def straight(self, d: int) -> int:
        """The dart continuing the strand through ``d``'s node."""
        v = self.node_of[d]
        deg = self.nodes[v].degree
        return self.offsets[v] + (d - self.offsets[v] + deg // 2) % deg

    def phi(self, d: int) -> int:
        return self.sigma(self.alpha[d])

    # -- edges, faces, pieces ------------------------------------------------

    @cached_property
    def edge_of(self) -> Tuple[int, ...]:
        """Edge index per dart; edges are numbered by their smaller dart."""
        alpha = self.alpha
        idx: Dict[int, int] = {}
        out = []
        for d in range(self.num_darts):
            key = min(d, alpha[d])
            if key not in idx:
                idx[key] = len(idx)
            out.append(idx[key])
        return tuple(out)

    @property
    def num_edges(self) -> int:
        return self.num_darts // 2

    @cached_property
    def faces(self) -> Tuple[Tuple[int, ...], ...]:
        seen = [False] * self.num_darts
        out = []
        for d in range(self.num_darts):
            if seen[d]:
                continue
            orbit = []
            e = d
            while not seen[e]:
                seen[e] = True
                orbit.append(e)
                e = self.phi(e)
            out.append(tuple(orbit))
        return tuple(out)

    @cached_property
    def face_of(self) -> Tuple[int, ...]:
        out = [0] * self.num_darts
        for i, orbit in enumerate(self.faces):
            for d in orbit:
                out[d] = i
        return tuple(out)

    @cached_property
    def pieces(self) -> Tuple[Tuple[int, ...], ...]:
        """Connected pieces of the underlying graph, as sorted node tuples."""
        dsu = _DSU(len(self.nodes))
        for d in range(self.num_darts):
            dsu.union(self.node_of[d], self.node_of[self.alpha[d]])
        groups: Dict[int, List[int]] = {}
        for v in range(len(self.nodes)):
            groups.setdefault(dsu.find(v), []).append(v)
        return tuple(tuple(g) for g in sorted(groups.values()))

    @cached_property
    def piece_of_node(self) -> Tuple[int, ...]:
        out = [0] * len(self.nodes)
        for i, g in enumerate(self.pieces):
            for v in g:
                out[v] = i
        return tuple(out)

    def piece_of_face(self, f: int) -> int:
        return self.piece_of_node[self.node_of[self.faces[f][0]]]

    def piece_genera(self) -> List[int]:
        """Genus of each piece from its own V - E + F; raises if not an integer."""
        V = Counter(self.piece_of_node)
        E: Counter = Counter()
        for d in range(self.num_darts):
            E[self.piece_of_node[self.node_of[d]]] += 1
        F = Counter(self.piece_of_face(f) for f in range(len(self.faces)))
        out = []
        for p in range(len(self.pieces)):
            chi = V[p] - E[p] // 2 + F[p]
            if chi > 2 or chi % 2:
                raise DiagramError(f"piece {p} has Euler characteristic {chi}")
            out.append((2 - chi) // 2)
        return out

    # -- crossings ---------------------------------------------------------

    @cached_property
    def crossing_nodes(self) -> Tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.nodes) if n.kind == CROSSING)

    @property
    def num_crossings(self) -> int:
        return len(self.crossing_nodes)

    def over_vector(self) -> int:
        """Over bits packed in crossing order."""
        v = 0
        for j, node in enumerate(self.crossing_nodes):
            if self.nodes[node].over:
                v |= 1 << j
        return v

    def with_over_vector(self, bits: int) -> "SurfaceDiagram":
        nodes = list(self.nodes)
        for j, node in enumerate(self.crossing_nodes):
            n = nodes[node]
            nodes[node] = Node(n.kind, n.labels, (bits >> j) & 1)
        return SurfaceDiagram(tuple(nodes), self.tubes, self.handles)

    def is_over(self, d: int) -> bool:
        """True if the strand through dart ``d`` passes over at its crossing."""
        node = self.nodes[self.node_of[d]]
        return (self.slot_of(d) % 2 == 0) == bool(node.over)

    def projection_key(self):
        return (
            tuple((n.kind, n.labels) for n in self.nodes),
            self.tubes,
            self.handles,
        )

    # -- regions -------------------------------------------------------------

    @cached_property
    def _region_data(self):
        nf = len(self.faces)
        dsu = _DSU(nf)
        for a, b in self.tubes:
            dsu.union(a, b)
        groups: Dict[int, List[int]] = {}
        for f in range(nf):
            groups.setdefault(dsu.find(f), []).append(f)
        blocks = sorted(groups.values())
        region_of = [0] * nf
        for i, g in enumerate(blocks):
            for f in g:
                region_of[f] = i
        tube_count = Counter(region_of[a] for a, _ in self.tubes)
        handle_count: Counter = Counter()
        for f, k in self.handles:
            handle_count[region_of[f]] += k
        regions = [
            Region(tuple(g), len(g) - 2 * tube_count[i] - 2 * handle_count[i])
            for i, g in enumerate(blocks)
        ]
        if nf == 0:
            # the empty diagram: one region, the whole sphere
            regions = [Region((), 2)]
        return tuple(regions), tuple(region_of)

    @property
    def regions(self) -> Tuple[Region, ...]:
        return self._region_data[0]

    @property
    def region_of_face(self) -> Tuple[int, ...]:
        return self._region_data[1]

    def region_of_dart(self, d: int) -> int:
        return self.region_of_face[self.face_of[d]]

    @property
    def num_regions(self) -> int:
        return len(self.regions)

    # -- components ----------------------------------------------------------

    @cached_property
    def components(self) -> Tuple[Component, ...]:
        seen = [False] * self.num_darts
        out = []
        for start in range(self.num_darts):
            if seen[start]:
                continue
            seq = []
            d = start
            while True:
                seen[d] = True
                a = self.alpha[d]
                seen[a] = True
                seq.extend((d, a))
                d = self.straight(a)
                if d == start:
                    break
            out.append(Component(len(out), tuple(seq)))
        return tuple(out)

    @cached_property
    def component_of_dart(self) -> Tuple[int, ...]:
        out = [0] * self.num_darts
        for comp in self.components:
            for d in comp.darts:
                out[d] = comp.index
        return tuple(out)

    @property
    def num_components(self) -> int:
        return len(self.components)

    def component_edges(self, i: int) -> int:
        """Edge bitset traversed by component ``i``."""
        v = 0
        for d in self.components[i].outgoing:
            v |= 1 << self.edge_of[d]
        return v

    # -- genus ---------------------------------------------------------------

    @cached_property
    def genus(self) -> int:
        if not self.nodes:
            return 0
        extra = len(self.tubes) - (len(self.pieces) - 1)
        return sum(self.piece_genera()) + extra + sum(k for _, k in self.handles)

    def euler_identity(self) -> Tuple[int, int]:
        """``(sum chi(R) + V - E, 2 - 2g)``; the two agree on valid diagrams."""
        lhs = sum(r.euler_characteristic for r in self.regions) + len(self.nodes) - self.num_edges
        return lhs, 2 - 2 * self.genus

    def __repr__(self) -> str:
        return (
            f"SurfaceDiagram(c={self.num_crossings}, markers={len(self.nodes) - self.num_crossings}, "
            f"tubes={len(self.tubes)}, handles={sum(k for _, k in self.handles)})"
        )


EMPTY = SurfaceDiagram()


def validate(diagram: SurfaceDiagram) -> List[str]:
    """List every invariant violation; an empty list means the diagram is valid."""
    problems: List[str] = []
    for i, n in enumerate(diagram.nodes):
        if n.kind == CROSSING and n.degree != 4:
            problems.append(f"crossing {i} has {n.degree} edge labels")
        elif n.kind == MARKER and n.degree != 2:
            problems.append(f"marker {i} has {n.degree} edge labels")
        elif n.kind not in (CROSSING, MARKER):
            problems.append(f"node {i} has unknown kind {n.kind!r}")
        if n.over not in (0, 1):
            problems.append(f"node {i} has over bit {n.over}")
        if n.kind == MARKER and n.over:
            problems.append(f"marker {i} carries an over bit")
    counts = Counter(lab for n in diagram.nodes for lab in n.labels)
    for lab, k in sorted(counts.items()):
        if k == 1:
            problems.append(f"edge pairing has fixed point (label {lab} used once)")
        elif k != 2:
            problems.append(f"edge label {lab} used {k} times")
    if problems:
        return problems

    nf = len(diagram.faces)
    for a, b in diagram.tubes:
        for f in (a, b):
            if not 0 <= f < nf:
                problems.append(f"tube references face {f} but the map has {nf} faces")
    for f, k in diagram.handles:
        if not 0 <= f < nf:
            problems.append(f"handles reference face {f} but the map has {nf} faces")
        if k < 0:
            problems.append(f"negative handle count {k} on face {f}")
    if problems:
        return problems

    try:
        diagram.piece_genera()
    except DiagramError as exc:
        problems.append(str(exc))
        return problems

    npieces = len(diagram.pieces)
    if npieces:
        dsu = _DSU(npieces)
        for a, b in diagram.tubes:
            dsu.union(diagram.piece_of_face(a), diagram.piece_of_face(b))
        if len({dsu.find(p) for p in range(npieces)}) != 1:
            problems.append("surgery connectivity violated: pieces are not joined by tubes")
            return problems
    lhs, rhs = diagram.euler_identity()
    if lhs != rhs:
        problems.append(f"Euler identity fails: {lhs} != {rhs}")
    for r in diagram.regions:
        if r.euler_characteristic > 2:
            problems.append(f"region {r.faces} has Euler characteristic {r.euler_characteristic}")
    return problems


def check(diagram: SurfaceDiagram) -> SurfaceDiagram:
    problems = validate(diagram)
    if problems:
        raise DiagramError("; ".join(problems))
    return diagram


def canonical(nodes: Sequence[Node], tubes=(), handles=()) -> SurfaceDiagram:
    """Build a diagram with edge labels renumbered 0, 1, ... by first occurrence."""
    relabel: Dict[object, int] = {}
    out = []
    for n in nodes:
        labs = []
        for lab in n.labels:
            if lab not in relabel:
                relabel[lab] = len(relabel)
            labs.append(relabel[lab])
        out.append(Node(n.kind, tuple(labs), n.over if n.kind == CROSSING else 0))
    return SurfaceDiagram(tuple(out), tuple(tubes), tuple(handles))


# -- text format -------------------------------------------------------------

_OVER = re.compile(r"^over=([01])$")


def parse_diagram(text: str) -> SurfaceDiagram:
    nodes: List[Node] = []
    tubes: List[Tuple[int, int]] = []
    handles: List[Tuple[int, int]] = []
    ids = set()
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise DiagramError(f"line {lineno}: expected header {HEADER!r}")
            seen_header = True
            continue
        tok = line.split()
        kind = tok[0]
        try:
            if kind == CROSSING:
                if len(tok) != 7:
                    raise DiagramError(f"line {lineno}: crossing needs id, 4 labels and over=")
                m = _OVER.match(tok[6])
                if not m:
                    raise DiagramError(f"line {lineno}: bad over field {tok[6]!r}")
                node_id, labels, over = tok[1], tuple(tok[2:6]), int(m.group(1))
            elif kind == MARKER:
                if len(tok) != 4:
                    raise DiagramError(f"line {lineno}: marker needs id and 2 labels")
                node_id, labels, over = tok[1], tuple(tok[2:4]), 0
            elif kind == "tube":
                if len(tok) != 3:
                    raise DiagramError(f"line {lineno}: tube needs two faces")
                tubes.append((int(tok[1]), int(tok[2])))
                continue
            elif kind == "handles":
                if len(tok) != 3:
                    raise DiagramError(f"line {lineno}: handles needs a face and a count")
                handles.append((int(tok[1]), int(tok[2])))
                continue
            else:
                raise DiagramError(f"line {lineno}: unknown record {kind!r}")
        except ValueError as exc:
            if isinstance(exc, DiagramError):
                raise
            raise DiagramError(f"line {lineno}: {exc}") from exc
        if node_id in ids:
            raise DiagramError(f"line {lineno}: duplicate node id {node_id!r}")
        ids.add(node_id)
        nodes.append(Node(kind, labels, over))
    if not seen_header:
        raise DiagramError("missing header")
    for f, k in handles:
        if k < 0:
            raise DiagramError(f"negative handle count on face {f}")
    return check(canonical(nodes, tubes, handles))


def serialize(diagram: SurfaceDiagram) -> str:
    lines = [HEADER]
    for i, n in enumerate(diagram.nodes):
        labs = " ".join(f"e{lab}" for lab in n.labels)
        if n.kind == CROSSING:
            lines.append(f"crossing {i} {labs} over={n.over}")
        else:
            lines.append(f"marker {i} {labs}")
    for a, b in diagram.tubes:
        lines.append(f"tube {a} {b}")
    for f, k in diagram.handles:
        lines.append(f"handles {f} {k}")
    return "\n".join(lines) + "\n"


# -- surgery bookkeeping -------------------------------------------------------


def _rebuild_surgeries(new_nodes, classes, chi_target) -> SurfaceDiagram:
    """Attach tubes and handles so each class of new faces is one region of the given Euler characteristic.

    ``classes`` lists, per new region, the darts (of the new map) whose faces
    belong to it.
    """
    bare = canonical(new_nodes)
    tubes, handles = [], []
    for darts, chi in zip(classes, chi_target):
        fs = sorted({bare.face_of[d] for d in darts})
        if not fs:
            continue
        for f in fs[1:]:
            tubes.append((fs[0], f))
        k2 = 2 - len(fs) - chi
        if k2 < 0 or k2 % 2:
            raise DiagramError(f"inconsistent region bookkeeping (chi={chi}, faces={len(fs)})")
        if k2:
            handles.append((fs[0], k2 // 2))
    return SurfaceDiagram(bare.nodes, tuple(tubes), tuple(handles))


def delete_component(diagram: SurfaceDiagram, i: int) -> SurfaceDiagram:
    """Remove component ``i``.

    Crossings of ``i`` with a kept strand become markers on that strand,
    self-crossings of ``i`` and its markers disappear.  Regions merged across
    the removed curve keep the correct topology through tubes and handles.
    """
    if not 0 <= i < diagram.num_components:
        raise IndexError(f"component index {i} out of range 0..{diagram.num_components - 1}")
    return delete_components(diagram, [i])


def delete_components(diagram: SurfaceDiagram, indices: Iterable[int]) -> SurfaceDiagram:
    drop = set(indices)
    comp = diagram.component_of_dart
    gone = [comp[d] in drop for d in range(diagram.num_darts)]

    new_nodes: List[Node] = []
    dart_map: Dict[int, Tuple[int, int]] = {}  # old dart -> (new node, slot)
    removed_nodes = []
    for v, n in enumerate(diagram.nodes):
        ds = [diagram.offsets[v] + s for s in range(n.degree)]
        kept = [d for d in ds if not gone[d]]
        if len(kept) == n.degree:
            for s, d in enumerate(ds):
                dart_map[d] = (len(new_nodes), s)
            new_nodes.append(n)
        elif kept:
            # mixed crossing: the kept strand passes straight through
            for s, d in enumerate(kept):
                dart_map[d] = (len(new_nodes), s)
            new_nodes.append(Node(MARKER, tuple(diagram.label_of(d) for d in kept)))
        else:
            removed_nodes.append(v)
    if not new_nodes:
        return EMPTY

    nf = len(diagram.faces)
    dsu = _DSU(nf)
    for a, b in diagram.tubes:
        dsu.union(a, b)
    for d in range(diagram.num_darts):
        if gone[d]:
            dsu.union(diagram.face_of[d], diagram.face_of[diagram.alpha[d]])
    cls = {}
    for f in range(nf):
        cls.setdefault(dsu.find(f), len(cls))
    chi = [0] * len(cls)
    for r, region in enumerate(diagram.regions):
        chi[cls[dsu.find(region.faces[0])]] += region.euler_characteristic
    for d in range(diagram.num_darts):
        if gone[d] and d < diagram.alpha[d]:
            chi[cls[dsu.find(diagram.face_of[d])]] -= 1
    for v in removed_nodes:
        chi[cls[dsu.find(diagram.face_of[diagram.offsets[v]])]] += 1

    offs, acc = [], 0
    for n in new_nodes:
        offs.append(acc)
        acc += n.degree
    members: List[List[int]] = [[] for _ in cls]
    for d, (v, s) in dart_map.items():
        members[cls[dsu.find(diagram.face_of[d])]].append(offs[v] + s)
    return _rebuild_surgeries(new_nodes, members, chi)
