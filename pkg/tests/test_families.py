import random
from math import gcd

import pytest

from regioncalc import gf2
from regioncalc.diagram import DiagramError, validate
from regioncalc.families import (
    FamilySpec,
    all_family_outputs,
    braid_closure,
    disjoint_union,
    fig8,
    from_pd,
    grid,
    meridian_family,
    planar_zoo,
    random_surgery,
    torus_pq,
    two_by_two_poked,
    unlink,
)
from regioncalc.gf2 import Gf2Matrix
from regioncalc.glgraph import gl_bruteforce
from regioncalc.homology import homology_profile, verify_theorem4
from regioncalc.regions import MODIFIED, ORIGINAL, class_count, incidence_matrix

from conftest import FIG8_MATRIX, band_matrix


def torus_matrix(k):
    # k x (k-1): row i has ones in columns i-2 and i, row 0 also in the last column
    rows = []
    for i in range(k):
        row = [0] * (k - 1)
        for j in (i - 2, i):
            if 0 <= j < k - 1:
                row[j] ^= 1
        if i == 0:
            row[k - 2] ^= 1
        rows.append(row)
    return Gf2Matrix.from_lists(rows, k - 1)


def test_grid_contracts():
    for m in range(5):
        for l in range(5):
            if m + l == 0:
                continue
            d = grid(m, l)
            assert validate(d) == []
            assert d.genus == 1
            assert d.num_components == m + l
            assert d.num_crossings == m * l
    d = grid(1, 1)
    assert d.num_regions == 1
    assert incidence_matrix(d, MODIFIED).matrix.to_lists() == [[0]]
    d = grid(0, 1)
    assert d.num_regions == 1 and class_count(d) == 1
    for n in range(3, 12):
        d = grid(n - 1, 1)
        assert d.num_regions == n - 1
        assert incidence_matrix(d, ORIGINAL).rank == n - 2
    with pytest.raises(DiagramError):
        grid(0, 0)


def test_torus_contracts():
    for p in range(13):
        for q in range(13):
            k = gcd(p, q)
            if k == 0:
                continue
            d = torus_pq(p, q)
            assert validate(d) == []
            assert d.genus == 1 and d.num_components == 1
            assert d.num_crossings == k - 1 and d.num_regions == k
            assert homology_profile(d).n_rank == k % 2
    for k in range(2, 13):
        m = incidence_matrix(torus_pq(k, 0), MODIFIED).matrix
        assert gf2.permutation_equivalent(m, torus_matrix(k))
    d = torus_pq(12, 8)
    assert d.num_regions - incidence_matrix(d).rank == 2
    d = torus_pq(3, 2)
    assert (d.num_crossings, d.num_regions) == (0, 1)
    assert d.num_regions - incidence_matrix(d).rank == 1
    z = torus_pq(0, 0)
    assert z.genus == 1 and z.num_crossings == 0 and homology_profile(z).n_rank == 0
    with pytest.raises(DiagramError):
        torus_pq(-1, 2)


def test_meridian_contracts():
    for p in range(1, 16):
        d = meridian_family(p)
        assert d.genus == 1 and d.num_components == 1
        assert (d.num_crossings, d.num_regions) == (p - 1, p)
        assert d.projection_key() == torus_pq(p, 0).projection_key()
    for p in range(2, 12):
        m = incidence_matrix(meridian_family(p), ORIGINAL).matrix
        assert gf2.permutation_equivalent(m, band_matrix(p))
    assert incidence_matrix(meridian_family(6), ORIGINAL).rank == 4
    assert incidence_matrix(meridian_family(5), ORIGINAL).rank == 4
    for p in (3, 5, 7, 9):
        assert gl_bruteforce(meridian_family(p), MODIFIED).component_count == 1


def test_planar_zoo():
    zoo = planar_zoo()
    assert list(zoo) == ["circle", "kinked_unknot", "hopf", "trefoil", "fig8_kinked"]
    for d in zoo.values():
        assert d.genus == 0 and validate(d) == []
    f = zoo["fig8_kinked"]
    assert (f.num_crossings, f.num_regions) == (5, 7)
    assert gf2.permutation_equivalent(incidence_matrix(f, ORIGINAL).matrix, Gf2Matrix.from_text(FIG8_MATRIX))
    s = gl_bruteforce(zoo["trefoil"])
    assert (s.component_count, s.component_size) == (1, 8)
    assert class_count(zoo["hopf"], MODIFIED) == class_count(zoo["hopf"], ORIGINAL) == 2
    assert gl_bruteforce(zoo["hopf"]).vertex_count == 4
    assert fig8().num_crossings == 4 and fig8().num_regions == 6


def test_pd_knots_are_knots():
    for d in [planar_zoo()["trefoil"], planar_zoo()["fig8_kinked"], fig8()]:
        assert d.num_components == 1
        assert d.num_regions == d.num_crossings + 2
        assert class_count(d) == 1


def test_braid_closures():
    d = braid_closure(3, (1, 2, 1))
    assert (d.num_crossings, d.num_components, d.genus) == (3, 2, 0)
    d = braid_closure(3, ())
    assert d.num_components == 3 and d.genus == 0 and d.num_regions == 4
    d = braid_closure(4, (1, 3))
    assert d.num_components == 2 and d.genus == 0
    with pytest.raises(DiagramError):
        braid_closure(2, (2,))


def test_unlink_and_union():
    for n in range(1, 5):
        d = unlink(n)
        assert d.num_components == n and d.genus == 0 and d.num_regions == n + 1
    d = disjoint_union(grid(1, 1), planar_zoo()["trefoil"])
    assert d.genus == 1 and d.num_components == 3 and d.num_crossings == 4
    assert verify_theorem4(d).holds


def test_four_component_torus_link():
    d = two_by_two_poked()
    assert (d.num_components, d.num_crossings, d.num_regions, d.genus) == (4, 8, 8, 1)
    assert homology_profile(d).n_rank == 2
    assert class_count(d) == 8 == gl_bruteforce(d).component_count


def test_random_surgery_valid():
    rng = random.Random(4)
    for _ in range(50):
        d = random_surgery(rng.choice([fig8(), grid(2, 1), unlink(2)]), rng, 3, 2)
        assert validate(d) == []


def test_family_spec():
    assert FamilySpec("grid", (2, 3)).build().num_crossings == 6
    assert FamilySpec("meridian", (4,)).build().num_regions == 4
    with pytest.raises(DiagramError):
        FamilySpec("nope").build()


def test_every_output_satisfies_rank_laws():
    for name, d in all_family_outputs():
        assert validate(d) == [], name
        assert verify_theorem4(d).holds, name
        r, n = d.num_regions, d.num_components
        assert incidence_matrix(d, ORIGINAL).rank >= r - n - 1, name


def test_from_pd_rejects_bad_codes():
    with pytest.raises(DiagramError):
        from_pd([(1, 2, 3, 4)])
