"""``regioncalc`` command line.

Diagrams travel through stdin/stdout in the ``surface_diagram v1`` text
format; reports are ``key=value`` lines.  Exit status: 0 success, 1 a checked
statement fails (``verify-thm4``, ``moves trial``), 2 usage or input error,
3 enumeration limit exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from . import families, gf2
from .diagram import DiagramError, parse_diagram, serialize
from .glgraph import GlLimitError, gl_bruteforce, translation_check
from .homology import homology_profile, null_sublinks, verify_theorem4
from .regions import (
    CountingRule,
    admissible,
    class_count,
    equivalent_diagrams,
    incidence_matrix,
    linking_numbers,
    mod2_linking_profile,
    tait_laplacian_components,
    two_colorable,
)
from .rmoves import apply_move, enumerate_sites, invariance_trial

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


class UsageError(Exception):
    pass


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _bits(v: int, n: int) -> str:
    return "".join("1" if (v >> j) & 1 else "0" for j in range(n))


def _int_list(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma separated integers, got {text!r}") from exc


def _read(path: Optional[str]):
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(str(exc)) from exc
    return parse_diagram(text)


_PLANAR = {
    "circle": families.circle,
    "kinked_unknot": families.kinked_unknot,
    "hopf": lambda: families.from_pd(families._PD["hopf"]),
    "trefoil": lambda: families.from_pd(families._PD["trefoil"]),
    "fig8": lambda: families.from_pd(families._FIG8_KINKED),
    "fig8_kinked": lambda: families.from_pd(families._FIG8_KINKED),
    "fig8_plain": families.fig8,
}


def cmd_gen(args, out):
    fam, params = args.family, args.params
    try:
        if fam == "planar":
            if len(params) != 1 or params[0] not in _PLANAR:
                raise UsageError(f"planar needs one of: {', '.join(sorted(_PLANAR))}")
            d = _PLANAR[params[0]]()
        else:
            ints = [int(p) for p in params]
            gens = {
                "grid": (families.grid, 2),
                "torus_pq": (families.torus_pq, 2),
                "meridian": (families.meridian_family, 1),
                "unlink": (families.unlink, 1),
            }
            if fam == "braid":
                if not ints:
                    raise UsageError("braid takes a strand count and generators")
                out.write(serialize(families.braid_closure(ints[0], ints[1:])))
                return 0
            if fam not in gens:
                raise UsageError(f"unknown family {fam!r}")
            fn, arity = gens[fam]
            if len(ints) != arity:
                raise UsageError(f"{fam} takes {arity} integer parameter(s)")
            d = fn(*ints)
    except ValueError as exc:
        if isinstance(exc, DiagramError):
            raise
        raise UsageError(str(exc)) from exc
    out.write(serialize(d))
    return 0


def cmd_info(args, out):
    d = _read(args.input)
    lhs, rhs = d.euler_identity()
    lines = [
        f"genus={d.genus}",
        f"components={d.num_components}",
        f"crossings={d.num_crossings}",
        f"markers={len(d.nodes) - d.num_crossings}",
        f"edges={d.num_edges}",
        f"faces={len(d.faces)}",
        f"regions={d.num_regions}",
        f"tubes={len(d.tubes)}",
        f"handles={sum(k for _, k in d.handles)}",
        f"euler_lhs={lhs}",
        f"euler_rhs={rhs}",
    ]
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_faces(args, out):
    d = _read(args.input)
    for i, orbit in enumerate(d.faces):
        out.write(f"face{i}=" + ",".join(str(x) for x in orbit) + "\n")
    for i, r in enumerate(d.regions):
        faces = ",".join(str(f) for f in r.faces)
        out.write(f"region{i}={faces} chi={r.euler_characteristic}\n")
    return 0


def cmd_matrix(args, out):
    d = _read(args.input)
    inc = incidence_matrix(d, args.rule)
    # comment header, then the plain matrix text form
    out.write(f"# rule={inc.rule.value}\n")
    for i, faces in enumerate(inc.region_order):
        out.write(f"# row {i}: region {i} (faces {','.join(map(str, faces))})\n")
    for j, v in enumerate(inc.crossing_order):
        out.write(f"# col {j}: node {v}\n")
    out.write(inc.matrix.to_text())
    return 0


def cmd_rank(args, out):
    d = _read(args.input)
    inc = incidence_matrix(d, args.rule)
    out.write(f"rank={inc.rank}\nregions={d.num_regions}\ncrossings={d.num_crossings}\n")
    return 0


def cmd_classes(args, out):
    d = _read(args.input)
    out.write(f"classes={class_count(d, args.rule)}\n")
    return 0


def cmd_solve(args, out):
    d = _read(args.input)
    idx = _int_list(args.crossings)
    nodes = d.crossing_nodes
    for j in idx:
        if not 0 <= j < len(nodes):
            raise UsageError(f"crossing index {j} out of range 0..{len(nodes) - 1}")
    regions = admissible(d, [nodes[j] for j in idx], args.rule)
    out.write(f"admissible={_bool(regions is not None)}\n")
    if regions is not None:
        out.write("regions=" + ",".join(str(r) for r in regions) + "\n")
    return 0


def cmd_equivalent(args, out):
    a, b = _read(args.first), _read(args.second)
    out.write(f"equivalent={_bool(equivalent_diagrams(a, b, args.rule))}\n")
    return 0


def cmd_colorable(args, out):
    d = _read(args.input)
    col = two_colorable(d)
    out.write(f"colorable={_bool(col is not None)}\n")
    if col is not None:
        out.write("coloring=" + "".join(str(c) for c in col) + "\n")
    return 0


def cmd_tait(args, out):
    d = _read(args.input)
    out.write(f"components={tait_laplacian_components(d)}\n")
    return 0


def cmd_linking(args, out):
    d = _read(args.input)
    rev = [False] * d.num_components
    for i in _int_list(args.reverse):
        if not 0 <= i < d.num_components:
            raise UsageError(f"component index {i} out of range")
        rev[i] = True
    lk = linking_numbers(d, rev)
    for i, row in enumerate(lk):
        out.write(f"lk{i}=" + ",".join(str(x) for x in row) + "\n")
    prof, ok = mod2_linking_profile(d, rev)
    out.write("mod2_profile=" + "".join(str(x) for x in prof) + "\n")
    out.write(f"all_even={_bool(ok)}\n")
    return 0


def cmd_homology(args, out):
    d = _read(args.input)
    prof = homology_profile(d)
    out.write(f"genus={d.genus}\nn_rank={prof.n_rank}\n")
    for i, vec in enumerate(prof.class_vectors):
        out.write(f"class{i}=" + "".join(str(x) for x in vec) + "\n")
    n = d.num_components
    for k, s in enumerate(prof.null_basis):
        out.write(f"null{k}={_bits(s, n)}\n")
    if args.sublinks:
        for k, sub in enumerate(null_sublinks(d)):
            out.write(f"sublink{k}_colorable={_bool(sub.coloring is not None)}\n")
    return 0


def cmd_verify(args, out):
    d = _read(args.input)
    rep = verify_theorem4(d)
    out.write(
        f"r={rep.r}\nn={rep.n}\nc={rep.c}\nrank_modified={rep.rank_modified}\n"
        f"n_rank={rep.n_rank}\nexpected={rep.r - rep.n - 1 + rep.n_rank}\nholds={_bool(rep.holds)}\n"
    )
    return 0 if rep.holds else EXIT_FAIL


def cmd_moves_list(args, out):
    d = _read(args.input)
    for k, s in enumerate(enumerate_sites(d)):
        out.write(f"site{k}={s}\n")
    return 0


def cmd_moves_apply(args, out):
    d = _read(args.input)
    sites = enumerate_sites(d)
    if not 0 <= args.site < len(sites):
        raise UsageError(f"site {args.site} out of range 0..{len(sites) - 1}")
    out.write(serialize(apply_move(d, sites[args.site])))
    return 0


def cmd_moves_trial(args, out):
    d = _read(args.input)
    if args.steps < 0:
        raise UsageError("--steps must be non-negative")
    rep = invariance_trial(d, args.steps, args.seed)
    out.write(f"steps={args.steps}\nseed={args.seed}\n")
    out.write("values=" + ",".join(str(v) for v in rep.values) + "\n")
    out.write(f"constant={_bool(rep.constant)}\nfinal_crossings={rep.final.num_crossings}\n")
    return 0 if rep.constant else EXIT_FAIL


def cmd_gl(args, out):
    d = _read(args.input)
    s = gl_bruteforce(d, args.rule, args.limit)
    same = translation_check(d, args.rule, limit=args.limit)
    out.write(
        f"vertex_count={s.vertex_count}\ncomponent_count={s.component_count}\n"
        f"component_size={s.component_size}\nloops_per_vertex={s.loops_per_vertex}\n"
        f"translation_check={_bool(same)}\n"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="regioncalc", description="Region crossing change on surface link diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("-i", "--input", help="diagram file (default: stdin)")
        return sp

    def with_rule(sp):
        sp.add_argument("--rule", type=CountingRule.parse, default=CountingRule.MODIFIED,
                        help="modified (default) or original")
        return sp

    g = sub.add_parser("gen", help="emit a family diagram")
    g.add_argument("family", help="grid | torus_pq | meridian | unlink | braid | planar")
    g.add_argument("params", nargs="*")
    g.set_defaults(func=cmd_gen)

    with_input(sub.add_parser("info", help="basic invariants")).set_defaults(func=cmd_info)
    with_input(sub.add_parser("faces", help="faces and regions")).set_defaults(func=cmd_faces)
    with_rule(with_input(sub.add_parser("matrix", help="region/crossing incidence matrix"))).set_defaults(func=cmd_matrix)
    with_rule(with_input(sub.add_parser("rank", help="rank of the incidence matrix"))).set_defaults(func=cmd_rank)
    with_rule(with_input(sub.add_parser("classes", help="number of equivalence classes"))).set_defaults(func=cmd_classes)

    s = with_rule(with_input(sub.add_parser("solve", help="regions realising a crossing change set")))
    s.add_argument("--crossings", default="", help="comma separated crossing indices")
    s.set_defaults(func=cmd_solve)

    e = with_rule(sub.add_parser("equivalent", help="compare two diagrams with the same projection"))
    e.add_argument("first")
    e.add_argument("second")
    e.set_defaults(func=cmd_equivalent)

    with_input(sub.add_parser("colorable", help="checkerboard colouring")).set_defaults(func=cmd_colorable)
    with_input(sub.add_parser("tait", help="component count from the Tait Laplacian")).set_defaults(func=cmd_tait)

    lk = with_input(sub.add_parser("linking", help="linking numbers (planar)"))
    lk.add_argument("--reverse", default="", help="components to reverse")
    lk.set_defaults(func=cmd_linking)

    h = with_input(sub.add_parser("homology", help="mod-2 homology classes of components"))
    h.add_argument("--sublinks", action="store_true", help="also report null sub-links")
    h.set_defaults(func=cmd_homology)

    with_input(sub.add_parser("verify-thm4", help="check the rank formula")).set_defaults(func=cmd_verify)

    m = sub.add_parser("moves", help="Reidemeister moves")
    msub = m.add_subparsers(dest="moves_command", required=True)
    with_input(msub.add_parser("list")).set_defaults(func=cmd_moves_list)
    ma = with_input(msub.add_parser("apply"))
    ma.add_argument("--site", type=int, required=True)
    ma.set_defaults(func=cmd_moves_apply)
    mt = with_input(msub.add_parser("trial"))
    mt.add_argument("--steps", type=int, default=100)
    mt.add_argument("--seed", type=int, default=0)
    mt.set_defaults(func=cmd_moves_trial)

    gl = with_rule(with_input(sub.add_parser("gl", help="brute-force graph of all diagrams")))
    gl.add_argument("--limit", type=int, default=None, help="maximum crossing count (env REGIONCALC_GL_LIMIT)")
    gl.set_defaults(func=cmd_gl)
    return p


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args, out)
    except GlLimitError as exc:
        err.write(f"regioncalc: {exc}\n")
        return EXIT_LIMIT
    except (UsageError, DiagramError, gf2.Gf2Error) as exc:
        err.write(f"regioncalc: {exc}\n")
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    code = run(sys.argv[1:] if argv is None else argv)
    sys.exit(code)
