"""Twists, cell complexes, divisors, coverings, surfaces."""

from math import comb, factorial

import pytest

from mosaic.errors import (
    BadSubsetSize,
    InvariantViolation,
    MosaicError,
    NoInfinitySide,
    NoSuchDiagonal,
    NotASurface,
    RangeError,
    UnknownCell,
    UnknownLabel,
)
from mosaic.moduli import (
    DOUBLE_COVER,
    PROJECTIVE,
    build_complex,
    cell_class,
    classify_surface,
    closed_form_f_vector,
    covering_map,
    divisor_label_classes,
    divisor_subcomplex,
    euler_closed_form,
    euler_proof_sum,
    marked_twist,
    tile_count,
    twist,
    verify_divisor_factorization,
)
from mosaic.polygon import Dissection, enumerate_diagonal_sets

# cell counts by codim, frozen; the double cover doubles every entry
F_PROJECTIVE = {
    4: (3, 3),
    5: (12, 30, 15),
    6: (60, 270, 315, 105),
    7: (360, 2520, 5040, 3780, 945),
}

EULER = {4: 0, 5: -3, 6: 0, 7: 45, 8: 0, 9: -1575, 10: 0, 11: 99225}


# ---------------------------------------------------------------------------
# twists

def test_twist_reflects_the_flap():
    d = Dissection((1, 2, 3, 4), frozenset({(0, 2)}))
    assert twist(d, (0, 2)) == Dissection((2, 1, 3, 4), frozenset({(0, 2)}))


def test_twist_carries_interior_diagonals_along():
    d = Dissection((1, 2, 3, 4, 5), frozenset({(0, 2), (0, 3)}))
    assert twist(d, (0, 3)) == Dissection((3, 2, 1, 4, 5),
                                          frozenset({(0, 3), (1, 3)}))


def test_twist_requires_the_diagonal():
    d = Dissection((1, 2, 3, 4, 5), frozenset({(0, 2)}))
    with pytest.raises(NoSuchDiagonal):
        twist(d, (0, 3))


@pytest.mark.parametrize("n", (5, 6))
def test_twist_is_an_involution(n):
    labels = tuple(range(1, n + 1))
    scrambled = labels[1:] + labels[:1]
    for k in range(1, n - 2):
        for ds in enumerate_diagonal_sets(n, k):
            for lab in (labels, scrambled):
                diss = Dissection(lab, frozenset(ds))
                for d in ds:
                    once = twist(diss, d)
                    assert sorted(once.labels) == sorted(lab)
                    assert d in once.diagonals
                    assert len(once.diagonals) == k
                    assert twist(once, d) == diss


def test_marked_twist_fixes_the_infinity_side():
    # the flap not carrying the side labeled n gets reflected
    d = Dissection((1, 2, 3, 4, 5), frozenset({(0, 3)}))
    assert marked_twist(d, (0, 3)) == Dissection((3, 2, 1, 4, 5),
                                                 frozenset({(0, 3)}))
    d = Dissection((1, 2, 3, 4, 5), frozenset({(2, 4)}))
    assert marked_twist(d, (2, 4)) == Dissection((1, 2, 4, 3, 5),
                                                 frozenset({(2, 4)}))


def test_marked_twist_is_an_involution():
    labels = (1, 2, 3, 4, 5, 6)
    for k in range(1, 4):
        for ds in enumerate_diagonal_sets(6, k):
            diss = Dissection(labels, frozenset(ds))
            for d in ds:
                once = marked_twist(diss, d)
                # the reflected flap dodges the marked side, which stays put
                assert once.labels[5] == 6
                assert marked_twist(once, d) == diss


def test_marked_twist_needs_a_marked_side():
    d = Dissection((1, 2, 3, 5), frozenset({(0, 2)}))
    with pytest.raises(NoInfinitySide):
        marked_twist(d, (0, 2))


# ---------------------------------------------------------------------------
# twist classes

def test_cell_class_sizes_are_powers_of_two():
    for n, mode in ((5, PROJECTIVE), (5, DOUBLE_COVER), (6, PROJECTIVE)):
        labels = tuple(range(1, n + 1))
        for k in range(n - 2):
            for ds in enumerate_diagonal_sets(n, k):
                cell = cell_class(Dissection(labels, frozenset(ds)), mode)
                assert cell.size == 2 ** k
                assert cell.codim == k


def test_projective_class_is_twist_and_dihedral_invariant():
    diss = Dissection((4, 1, 3, 2, 5), frozenset({(0, 2), (2, 4)}))
    cell = cell_class(diss, PROJECTIVE)
    assert cell.labels[0] == 1
    for d in diss.diagonals:
        assert cell_class(twist(diss, d), PROJECTIVE) == cell
    rotated = Dissection(diss.labels[2:] + diss.labels[:2],
                         frozenset({(3, 0), (0, 2)}))
    assert cell_class(rotated, PROJECTIVE) == cell
    reflected = Dissection(diss.labels[::-1],
                           frozenset(tuple(sorted(((5 - u) % 5, (5 - v) % 5)))
                                     for u, v in diss.diagonals))
    assert cell_class(reflected, PROJECTIVE) == cell


def test_cover_class_separates_reflections():
    square = Dissection((1, 2, 3, 4))
    mirrored = Dissection((3, 2, 1, 4))
    assert cell_class(square, PROJECTIVE) == cell_class(mirrored, PROJECTIVE)
    assert cell_class(square, DOUBLE_COVER) != cell_class(mirrored, DOUBLE_COVER)
    # rotation stays inside the class, the marked side returns to the end
    rotated = Dissection((3, 4, 1, 2))
    assert cell_class(square, DOUBLE_COVER) == cell_class(rotated, DOUBLE_COVER)
    assert cell_class(square, DOUBLE_COVER).labels[-1] == 4


def test_cover_class_is_marked_twist_invariant():
    diss = Dissection((2, 1, 4, 3, 5), frozenset({(0, 2), (0, 3)}))
    cell = cell_class(diss, DOUBLE_COVER)
    assert cell.labels[-1] == 5
    for d in diss.diagonals:
        assert cell_class(marked_twist(diss, d), DOUBLE_COVER) == cell


def test_cell_class_validates_input():
    with pytest.raises(UnknownLabel):
        cell_class(Dissection((2, 3, 4, 5, 6)), PROJECTIVE)
    with pytest.raises(MosaicError):
        cell_class(Dissection((1, 2, 3, 4)), "affine")


# ---------------------------------------------------------------------------
# the complexes

@pytest.mark.parametrize("n", (4, 5, 6, 7))
def test_projective_f_vectors(n, cache):
    complex_ = cache.full(n)
    assert complex_.f_vector() == F_PROJECTIVE[n]
    assert complex_.f_vector() == closed_form_f_vector(n)
    assert len(complex_.tiles()) == tile_count(n) == factorial(n - 1) // 2
    assert complex_.is_full_depth()
    assert complex_.dimension == n - 3


@pytest.mark.parametrize("n", (4, 5, 6))
def test_double_cover_f_vectors(n, cache):
    complex_ = cache.full(n, DOUBLE_COVER)
    expected = tuple(2 * x for x in F_PROJECTIVE[n])
    assert complex_.f_vector() == expected
    assert complex_.f_vector() == closed_form_f_vector(n, DOUBLE_COVER)
    assert len(complex_.tiles()) == tile_count(n, DOUBLE_COVER) == factorial(n - 1)


def test_smallest_complex_is_a_point():
    complex_ = build_complex(3)
    assert complex_.f_vector() == (1,)
    assert complex_.dimension == 0


def test_build_complex_range_and_mode_guards():
    with pytest.raises(RangeError):
        build_complex(2)
    with pytest.raises(RangeError):
        build_complex(9)
    with pytest.raises(MosaicError):
        build_complex(5, "affine")


@pytest.mark.parametrize("n", (4, 5, 6, 7))
def test_euler_three_ways(n, cache):
    assert cache.full(n).euler_characteristic() == EULER[n]
    assert euler_closed_form(n) == EULER[n]
    assert euler_proof_sum(n) == EULER[n]


@pytest.mark.parametrize("n", sorted(EULER))
def test_euler_closed_form_matches_proof_sum(n):
    assert euler_closed_form(n) == euler_proof_sum(n) == EULER[n]


def test_coboundary_counts_follow_the_doubling_law(cache):
    # a codim k cell lies under exactly 2^t C(k, t) cells t grades up
    for n, mode in ((5, PROJECTIVE), (5, DOUBLE_COVER), (6, PROJECTIVE)):
        complex_ = cache.full(n, mode)
        for cell in complex_.cells:
            k = cell.codim
            expected = {t: (2 ** t) * comb(k, t) for t in range(k + 1)}
            assert complex_.coboundary_counts(cell) == expected


def test_boundary_pairs_have_positive_multiplicity(cache):
    complex_ = cache.full(5)
    seen = 0
    for parent, child, count in complex_.boundary_pairs():
        assert complex_.cells[child].codim == complex_.cells[parent].codim + 1
        assert count >= 1
        seen += 1
    assert seen > 0


@pytest.mark.parametrize("n,mode", [
    (4, PROJECTIVE), (4, DOUBLE_COVER),
    (5, PROJECTIVE), (5, DOUBLE_COVER),
    (6, PROJECTIVE),
])
def test_tile_adjacency_is_regular(n, mode, cache):
    graph = cache.full(n, mode).tile_adjacency()
    degree = n * (n - 3) // 2
    assert all(d == degree for d in graph.degrees().values())
    assert len(graph.edges) == len(graph.tiles) * degree // 2
    neighbors = graph.neighbors()
    for u, v, _ in graph.edges:
        assert u in neighbors[v] and v in neighbors[u]


def test_small_tile_graphs_are_cycles(cache):
    # three mutually adjacent tiles upstairs of the square, a hexagon cycle
    # on the double cover
    proj = cache.full(4).tile_adjacency()
    assert sorted((u, v) for u, v, _ in proj.edges) == [(0, 1), (0, 2), (1, 2)]
    cover = cache.full(4, DOUBLE_COVER).tile_adjacency()
    assert sorted((u, v) for u, v, _ in cover.edges) == \
        [(0, 1), (0, 2), (1, 4), (2, 3), (3, 5), (4, 5)]


def test_cell_lookup_round_trip(cache):
    complex_ = cache.full(5)
    diss = Dissection((3, 1, 4, 2, 5), frozenset({(1, 3)}))
    cell = complex_.cell_for(diss)
    assert cell.index is not None
    assert complex_.cell_for(twist(diss, (1, 3))) == cell
    assert complex_.resolve(cell_class(diss, PROJECTIVE)) == cell


def test_cell_lookup_rejects_foreign_cells(cache):
    complex_ = cache.full(5)
    with pytest.raises(UnknownCell):
        complex_.cell_for(Dissection((1, 2, 3, 4)))
    with pytest.raises(UnknownCell):
        complex_.resolve(cell_class(Dissection((1, 2, 3, 4, 5)), DOUBLE_COVER))


def test_cells_at_rejects_missing_grades(cache):
    with pytest.raises(RangeError):
        cache.full(4).cells_at(5)


def test_truncated_build_stops_at_the_requested_grade():
    shallow = build_complex(6, PROJECTIVE, max_codim=1)
    assert shallow.f_vector() == F_PROJECTIVE[6][:2]
    assert not shallow.is_full_depth()
    assert shallow.max_codim == 1
    graph = shallow.tile_adjacency()
    assert all(d == 9 for d in graph.degrees().values())
    for cell in shallow.cells_at(1):
        assert shallow.coboundary_counts(cell) == {0: 1, 1: 2}


# ---------------------------------------------------------------------------
# divisors

def test_divisor_of_the_pentagon(cache):
    complex_ = cache.full(5)
    sub = divisor_subcomplex(complex_, {1, 2})
    assert sub.f_vector() == (3, 3)
    assert sub.codim_offset == 1
    assert sub.divisor_set == frozenset({1, 2})
    assert sub.dimension == 1
    report = verify_divisor_factorization(complex_, {1, 2})
    assert report.passed, report.failures[:3]
    assert report.factor_sizes == (3, 4)
    assert report.cells_checked == sum(report.sub_f_vector)


def test_divisor_subsets_normalize_to_the_complement(cache):
    complex_ = cache.full(5)
    sub_a = divisor_subcomplex(complex_, {1, 2})
    sub_b = divisor_subcomplex(complex_, {3, 4, 5})
    assert sub_b.divisor_set == frozenset({1, 2})
    assert [c.index for c in sub_a.cells] == [c.index for c in sub_b.cells]


def test_divisor_factorization_for_the_hexagon(cache):
    complex_ = cache.full(6)
    report = verify_divisor_factorization(complex_, {1, 2, 3})
    assert report.passed, report.failures[:3]
    assert report.factor_sizes == (4, 4)
    assert report.sub_f_vector == (9, 18, 9)
    report = verify_divisor_factorization(complex_, {1, 2})
    assert report.passed
    assert report.factor_sizes == (3, 5)
    assert report.sub_f_vector == (12, 30, 15)


def test_every_pentagon_divisor_class_passes(cache):
    complex_ = cache.full(5)
    classes = divisor_label_classes(5)
    assert len(classes) == 10
    for subset in classes:
        assert verify_divisor_factorization(complex_, subset).passed


def test_divisor_guards(cache):
    complex_ = cache.full(5)
    with pytest.raises(BadSubsetSize):
        divisor_subcomplex(complex_, {1})
    with pytest.raises(BadSubsetSize):
        divisor_subcomplex(complex_, {1, 2, 3, 4})
    with pytest.raises(UnknownLabel):
        divisor_subcomplex(complex_, {1, 9})
    with pytest.raises(MosaicError):
        divisor_subcomplex(cache.full(5, DOUBLE_COVER), {1, 2})
    sub = divisor_subcomplex(complex_, {1, 2})
    with pytest.raises(MosaicError):
        divisor_subcomplex(sub, {1, 2})


# ---------------------------------------------------------------------------
# the double cover over the projective complex

@pytest.mark.parametrize("n", (4, 5))
def test_covering_map_is_two_to_one(n, cache):
    report = covering_map(cache.full(n, DOUBLE_COVER), cache.full(n))
    assert report.passed, report.failures[:3]
    assert len(report.mapping) == 2 * sum(F_PROJECTIVE[n])


def test_covering_map_guards(cache):
    with pytest.raises(MosaicError):
        covering_map(cache.full(4), cache.full(4))
    with pytest.raises(MosaicError):
        covering_map(cache.full(4, DOUBLE_COVER), cache.full(5))
    shallow = build_complex(4, DOUBLE_COVER, max_codim=0)
    with pytest.raises(MosaicError):
        covering_map(shallow, cache.full(4))


# ---------------------------------------------------------------------------
# surface recognition

def test_pentagon_complex_is_a_nonorientable_surface(cache):
    report = classify_surface(cache.full(5))
    assert (report.tiles, report.edges, report.vertices) == (12, 30, 15)
    assert report.euler == -3
    assert not report.orientable
    assert report.identified_surface == "N_5 (connected sum of 5 projective planes)"


def test_pentagon_double_cover_surface(cache):
    report = classify_surface(cache.full(5, DOUBLE_COVER))
    assert report.euler == -6
    assert not report.orientable
    assert report.identified_surface == "N_8 (connected sum of 8 projective planes)"


def test_hexagon_divisors_are_surfaces(cache):
    complex_ = cache.full(6)
    torus = classify_surface(divisor_subcomplex(complex_, {1, 2, 3}))
    assert torus.euler == 0
    assert torus.orientable
    assert torus.identified_surface == "S_1 (torus)"
    pentagonal = classify_surface(divisor_subcomplex(complex_, {1, 2}))
    assert pentagonal.identified_surface == \
        "N_5 (connected sum of 5 projective planes)"


def test_classify_surface_needs_dimension_two(cache):
    with pytest.raises(NotASurface):
        classify_surface(cache.full(4))
    with pytest.raises(NotASurface):
        classify_surface(cache.full(6))
    with pytest.raises(NotASurface):
        classify_surface(build_complex(5, PROJECTIVE, max_codim=1))
