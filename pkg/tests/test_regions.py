import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regioncalc import gf2
from regioncalc.diagram import DiagramError
from regioncalc.families import (
    all_family_outputs,
    circle,
    grid,
    planar_zoo,
    random_surgery,
    unlink,
)
from regioncalc.gf2 import Gf2Matrix
from regioncalc.regions import (
    MODIFIED,
    ORIGINAL,
    CountingRule,
    admissible,
    apply_region_changes,
    class_count,
    corner_counts,
    equivalent_diagrams,
    incidence_matrix,
    is_valid_coloring,
    linking_numbers,
    mod2_linking_profile,
    tait_laplacian,
    tait_laplacian_components,
    two_colorable,
)
from regioncalc.rmoves import R2_ADD, apply_move, enumerate_sites, invariance_trial

from conftest import FIG8_MATRIX, FIG8_MATRIX_MODIFIED


def poked_unlink():
    d = unlink(2)
    site = next(s for s in enumerate_sites(d) if s.kind == R2_ADD and s.anchors[3] == "tube")
    return apply_move(d, site)


def test_rule_parse():
    assert CountingRule.parse("modified") is MODIFIED
    assert CountingRule.parse("ORIGINAL") is ORIGINAL
    with pytest.raises(ValueError):
        CountingRule.parse("other")


def test_fig8_matrices():
    d = planar_zoo()["fig8_kinked"]
    orig = incidence_matrix(d, ORIGINAL).matrix
    mod = incidence_matrix(d, MODIFIED).matrix
    assert gf2.permutation_equivalent(orig, Gf2Matrix.from_text(FIG8_MATRIX))
    assert gf2.permutation_equivalent(mod, Gf2Matrix.from_text(FIG8_MATRIX_MODIFIED))
    diff = sum(gf2.popcount(a ^ b) for a, b in zip(orig.rows, mod.rows))
    assert diff == 1
    assert class_count(d, ORIGINAL) == class_count(d, MODIFIED) == 1


def test_grid_examples():
    assert incidence_matrix(grid(1, 1)).matrix.to_lists() == [[0]]
    assert class_count(grid(1, 1)) == 2
    assert class_count(grid(2, 2)) == 8
    assert incidence_matrix(grid(2, 2)).matrix.to_lists() == [[1] * 4] * 4


def test_hopf_classes():
    d = planar_zoo()["hopf"]
    assert class_count(d, ORIGINAL) == class_count(d, MODIFIED) == 2


def test_modified_all_ones_annihilates():
    rng = random.Random(11)
    diagrams = [d for _, d in all_family_outputs()]
    diagrams += [random_surgery(d, rng) for d in diagrams[:20]]
    for d in diagrams:
        m = incidence_matrix(d, MODIFIED).matrix
        assert m.vecmat((1 << m.nrows) - 1) == 0


def test_rules_agree_without_repeated_corners():
    for _, d in all_family_outputs():
        counts = corner_counts(d)
        if all(k <= 1 for row in counts for k in row):
            assert incidence_matrix(d, MODIFIED).matrix == incidence_matrix(d, ORIGINAL).matrix


def test_admissible_examples():
    d = planar_zoo()["fig8_kinked"]
    for j in range(d.num_crossings):
        regs = admissible(d, [j], ORIGINAL)
        assert regs is not None
        e = apply_region_changes(d, regs, ORIGINAL)
        assert e.over_vector() ^ d.over_vector() == 1 << j
    assert admissible(grid(1, 1), [0]) is None
    assert admissible(d, []) == []
    with pytest.raises(DiagramError):
        admissible(d, [99])


def test_equivalent_examples():
    g = grid(1, 1)
    assert equivalent_diagrams(g, g)
    assert not equivalent_diagrams(g, g.with_over_vector(1))
    with pytest.raises(DiagramError):
        equivalent_diagrams(g, grid(2, 2))


def test_two_colorable_examples():
    for d in planar_zoo().values():
        col = two_colorable(d)
        assert col is not None and is_valid_coloring(d, col)
    assert two_colorable(grid(1, 1)) is None
    col = two_colorable(grid(2, 2))
    assert col is not None and is_valid_coloring(grid(2, 2), col)


def test_tait_examples():
    d = planar_zoo()["trefoil"]
    # with a centre/outside region white the black regions are the three lobes
    triangle = [two_colorable(d, white=w) for w in range(d.num_regions)]
    laps = {tuple(map(tuple, tait_laplacian(d, c).to_lists())) for c in triangle}
    assert ((0, 1, 1), (1, 0, 1), (1, 1, 0)) in laps
    for c in triangle:
        assert tait_laplacian_components(d, c) == 1
    h = planar_zoo()["hopf"]
    for w in range(h.num_regions):
        c = two_colorable(h, white=w)
        assert tait_laplacian(h, c).to_lists() == [[0, 0], [0, 0]]
        assert tait_laplacian_components(h, c) == 2
    assert tait_laplacian(circle(), two_colorable(circle())).to_lists() == [[0]]
    assert tait_laplacian_components(circle()) == 1


def test_tait_errors():
    with pytest.raises(DiagramError):
        tait_laplacian_components(grid(2, 2))
    d = planar_zoo()["trefoil"]
    with pytest.raises(DiagramError):
        tait_laplacian(d, [0] * d.num_regions)


def test_tait_counts_components_along_walks():
    for name in ["kinked_unknot", "hopf", "trefoil"]:
        rep = invariance_trial(planar_zoo()[name], 30, seed=5)
        assert rep.final.genus == 0
        d = rep.final
        if len(d.pieces) == 1:
            assert tait_laplacian_components(d) == d.num_components


def test_linking_examples():
    h = planar_zoo()["hopf"]
    assert mod2_linking_profile(h) == ((1, 1), False)
    assert abs(linking_numbers(h)[0][1]) == 1
    for name in ["trefoil", "fig8_kinked", "kinked_unknot"]:
        assert mod2_linking_profile(planar_zoo()[name]) == ((0,), True)
    assert mod2_linking_profile(poked_unlink()) == ((0, 0), True)
    assert linking_numbers(poked_unlink()) == [[0, 0], [0, 0]]
    with pytest.raises(DiagramError):
        mod2_linking_profile(grid(2, 2))


def over_count_lk_mod2(d, i, j):
    # crossings where K_i passes over K_j, mod 2, equals lk(K_i, K_j) mod 2
    k = 0
    for v in d.crossing_nodes:
        a, b = d.dart(v, 0), d.dart(v, 1)
        ca, cb = d.component_of_dart[a], d.component_of_dart[b]
        top = ca if d.is_over(a) else cb
        if {ca, cb} == {i, j} and top == i:
            k += 1
    return k % 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 20))
def test_linking_mod2_matches_over_count(seed, steps):
    rng = random.Random(seed)
    start = rng.choice([planar_zoo()["hopf"], poked_unlink(), unlink(3)])
    d = invariance_trial(start, steps, seed).final
    d = d.with_over_vector(rng.getrandbits(max(d.num_crossings, 1)) & ((1 << d.num_crossings) - 1))
    n = d.num_components
    lk = linking_numbers(d)
    flipped = linking_numbers(d, [True] + [False] * (n - 1))
    for i, j in itertools.permutations(range(n), 2):
        assert lk[i][j] % 2 == over_count_lk_mod2(d, i, j)
        assert lk[i][j] == lk[j][i]
        # reversing one component negates its linking numbers
        expect = -lk[i][j] if 0 in (i, j) else lk[i][j]
        assert flipped[i][j] == expect


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_region_changes_stay_in_class(seed):
    rng = random.Random(seed)
    d = random_surgery(rng.choice([grid(2, 1), planar_zoo()["trefoil"], grid(2, 2)]), rng, 1, 1)
    for rule in (MODIFIED, ORIGINAL):
        regs = [i for i in range(d.num_regions) if rng.random() < 0.5]
        e = apply_region_changes(d, regs, rule)
        assert equivalent_diagrams(d, e, rule)
        assert e.projection_key() == d.projection_key()
