"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random
import time
from functools import lru_cache
from math import gcd

import pytest

from regioncalc import gf2
from regioncalc.families import (
    all_family_outputs,
    braid_closure,
    disjoint_union,
    grid,
    meridian_family,
    planar_zoo,
    random_surgery,
    torus_pq,
    two_by_two_poked,
    unlink,
)
from regioncalc.gf2 import Gf2Matrix
from regioncalc.glgraph import component_labels, gl_bruteforce
from regioncalc.homology import (
    components_in,
    homology_profile,
    region_null_sublinks,
    total_class_vanishes,
    verify_theorem4,
)
from regioncalc.regions import (
    MODIFIED,
    ORIGINAL,
    class_count,
    equivalent_diagrams,
    incidence_matrix,
    is_valid_coloring,
    mod2_linking_profile,
    sublink_coloring,
    two_colorable,
)
from regioncalc.rmoves import invariance_trial

from conftest import FIG8_MATRIX, FIG8_MATRIX_MODIFIED


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def rank(d, rule):
    return incidence_matrix(d, rule).rank


@lru_cache(maxsize=None)
def planar_walks():
    zoo = list(planar_zoo().values())
    out = []
    for i in range(200):
        out.append(invariance_trial(zoo[i % len(zoo)], 1 + i % 25, seed=i).final)
    return tuple(out)


@lru_cache(maxsize=None)
def surface_walks():
    starts = [grid(1, 1), grid(2, 1), torus_pq(12, 8), torus_pq(5, 0), two_by_two_poked()]
    return tuple(invariance_trial(s, 15, seed=k).final for k in range(8) for s in starts)


@lru_cache(maxsize=None)
def surgered():
    rng = random.Random(2024)
    bases = [d for _, d in all_family_outputs()] + list(planar_walks()[:60]) + list(surface_walks())
    bases = [d for d in bases if d.num_crossings <= 12]
    out = []
    while len(out) < 100:
        d = rng.choice(bases)
        if rng.random() < 0.3:
            other = rng.choice(bases)
            if d.num_crossings + other.num_crossings <= 12:
                d = disjoint_union(d, other)
        d = random_surgery(d, rng, tubes=rng.randrange(1, 4), handles=rng.randrange(0, 2))
        out.append(d)
    return tuple(out)


@lru_cache(maxsize=None)
def generated():
    return tuple(d for _, d in all_family_outputs()) + planar_walks() + surface_walks() + surgered()


def test_criterion_01_fig8_matrix(report):
    d = planar_zoo()["fig8_kinked"]
    m = incidence_matrix(d, ORIGINAL).matrix
    reference = Gf2Matrix.from_text(FIG8_MATRIX)
    fast = gf2.permutation_equivalent(m, reference)
    exhaustive = gf2.permutation_equivalent_bruteforce(m, reference)
    rk, cls = gf2.rank(m), class_count(d, ORIGINAL)
    ok = fast and exhaustive and rk == 5 and cls == 1 and gf2.rank(reference) == 5
    report(1, ok, f"perm-equivalent={fast}/{exhaustive} rank={rk} classes={cls}")


def test_criterion_02_modified_delta(report):
    d = planar_zoo()["fig8_kinked"]
    orig = incidence_matrix(d, ORIGINAL).matrix
    mod = incidence_matrix(d, MODIFIED).matrix
    diff = sum(gf2.popcount(a ^ b) for a, b in zip(orig.rows, mod.rows))
    matches = gf2.permutation_equivalent(mod, Gf2Matrix.from_text(FIG8_MATRIX_MODIFIED))
    report(2, diff == 1 and matches, f"entries differing={diff} modified matches reference={matches}")


def test_criterion_03_planar_rank_law(report):
    walks = planar_walks()
    bad = 0
    for d in walks:
        target = d.num_regions - d.num_components - 1
        if d.genus != 0 or rank(d, MODIFIED) != target or rank(d, ORIGINAL) != target:
            bad += 1
    top = max(d.num_crossings for d in walks)
    report(3, len(walks) == 200 and bad == 0, f"{len(walks)} walk diagrams (max c={top}), violations={bad}")


def test_criterion_04_invariance(report):
    starts = {
        "grid(1,1)": grid(1, 1),
        "torus_pq(12,8)": torus_pq(12, 8),
        "trefoil": planar_zoo()["trefoil"],
        "hopf": planar_zoo()["hopf"],
        "two_by_two_poked": two_by_two_poked(),
        "fig8_kinked": planar_zoo()["fig8_kinked"],
    }
    lines = []
    ok = True
    for seed, (name, d) in enumerate(starts.items()):
        rep = invariance_trial(d, 100, seed=seed)
        # the constant must also be the value predicted from homology
        expect = d.num_components + 1 - homology_profile(d).n_rank
        good = rep.constant and len(rep.values) == 101 and rep.values[0] == expect
        ok &= good
        lines.append(f"{name}={rep.values[0]}{'' if good else '!'}")
    report(4, ok, "constant along 100 steps: " + " ".join(lines))


def test_criterion_05_torus_closed_form(report):
    seen, bad = set(), 0
    for p in range(0, 37):
        for q in range(0, 37):
            k = gcd(p, q)
            if not 1 <= k <= 12:
                continue
            d = torus_pq(p, q)
            if d.num_regions - rank(d, MODIFIED) != (2 if k % 2 == 0 else 1):
                bad += 1
            seen.add(k)
    ok = bad == 0 and seen == set(range(1, 13))
    report(5, ok, f"gcd values covered={len(seen)} violations={bad}")


def test_criterion_06_band_closed_form(report):
    bad = []
    for p in range(2, 31):
        want = p - 2 if p % 3 == 0 else p - 1
        if rank(meridian_family(p), ORIGINAL) != want:
            bad.append(f"meridian({p})")
    for n in range(3, 21):
        if rank(grid(n - 1, 1), ORIGINAL) != n - 2:
            bad.append(f"grid({n - 1},1)")
    report(6, not bad, f"meridian p=2..30 and grid(n-1,1) n=3..20, failures={bad}")


def test_criterion_07_rank_formula(report):
    fams = [d for _, d in all_family_outputs()]
    surg = surgered()
    fails = sum(not verify_theorem4(d).holds for d in fams + list(surg))
    # independent route: the predicted class count against exhaustive enumeration
    oracle_bad = 0
    for d in surg:
        rep = verify_theorem4(d)
        predicted = 2 ** (rep.c - (rep.r - rep.n - 1 + rep.n_rank))
        if gl_bruteforce(d, MODIFIED).component_count != predicted:
            oracle_bad += 1
    ok = fails == 0 and oracle_bad == 0 and len(surg) == 100 and max(d.num_crossings for d in surg) <= 12
    report(7, ok, f"{len(fams)} family + {len(surg)} surgered diagrams, failures={fails}, oracle mismatches={oracle_bad}")


def test_criterion_08_oracle(report):
    t0 = time.time()
    diagrams = [d for d in generated() if d.num_crossings <= 14]
    bad = 0
    for d in diagrams:
        for rule in (MODIFIED, ORIGINAL):
            s = gl_bruteforce(d, rule, limit=14)
            if s.component_count != 2 ** (d.num_crossings - rank(d, rule)) or not s.sizes_equal:
                bad += 1
    elapsed = time.time() - t0
    top = max(d.num_crossings for d in diagrams)
    ok = bad == 0 and elapsed < 60
    report(8, ok, f"{len(diagrams)} diagrams (max c={top}) x 2 rules, mismatches={bad}, {elapsed:.1f}s")


def test_criterion_09_colourability(report):
    bad = 0
    for d in generated():
        if (two_colorable(d) is not None) != total_class_vanishes(d):
            bad += 1
    g11, g22 = two_colorable(grid(1, 1)) is None, two_colorable(grid(2, 2)) is not None
    report(9, bad == 0 and g11 and g22, f"{len(generated())} diagrams, mismatches={bad}, grid(1,1) uncolourable={g11}, grid(2,2) colourable={g22}")


def test_criterion_10_null_sublinks(report):
    bad_dim = bad_sub = 0
    for d in generated():
        subs = region_null_sublinks(d)
        if len(subs) != d.num_components + 1 - homology_profile(d).n_rank:
            bad_dim += 1
        m = incidence_matrix(d, MODIFIED).matrix
        for s in subs:
            if m.vecmat(s.region_vector) or s.coloring is None or not is_valid_coloring(s.diagram, s.coloring):
                bad_sub += 1
    report(10, bad_dim == bad_sub == 0, f"{len(generated())} diagrams, dimension mismatches={bad_dim}, bad sub-links={bad_sub}")


def test_criterion_11_rank_lower_bound(report):
    bad = 0
    for d in generated():
        if rank(d, ORIGINAL) < d.num_regions - d.num_components - 1:
            bad += 1
    report(11, bad == 0, f"{len(generated())} diagrams ({len(surgered())} surgered), violations={bad}")


def linking_diagrams():
    starts = [
        planar_zoo()["hopf"],
        unlink(2),
        unlink(3),
        braid_closure(3, (1, 2, 1)),
        braid_closure(3, (1, 1, 2, 2)),
        braid_closure(3, (1, -2, 1, -2)),
        braid_closure(4, (1, 2, 3, 1)),
    ]
    out = list(starts)
    for i in range(60):
        d = invariance_trial(starts[i % len(starts)], 1 + i % 10, seed=100 + i).final
        out.append(d)
    return [d for d in out if d.num_components in (2, 3) and d.num_crossings <= 10 and d.genus == 0]


def test_criterion_12_linking_criterion(report):
    diagrams = linking_diagrams()
    checked = bad = 0
    for d in diagrams:
        base = d.with_over_vector(0)
        prof0 = mod2_linking_profile(base)[0]
        for rule in (ORIGINAL, MODIFIED):
            labels = component_labels(d, rule)
            for w in range(1 << d.num_crossings):
                e = d.with_over_vector(w)
                eq = equivalent_diagrams(base, e, rule)
                reach = bool(labels[0] == labels[w])
                lk = mod2_linking_profile(e)[0] == prof0
                checked += 1
                bad += not (eq == reach == lk)
    comps = sorted({d.num_components for d in diagrams})
    ok = bad == 0 and comps == [2, 3]
    report(12, ok, f"{len(diagrams)} planar diagrams (components {comps}), {checked} assignments x rule, disagreements={bad}")
