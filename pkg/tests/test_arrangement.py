"""Partition flats of the braid arrangement and the divisor dictionary."""

from collections import Counter
from itertools import combinations
from math import comb, factorial

import pytest

from mosaic.arrangement import (
    Flat,
    chamber_counts,
    divisor_correspondence,
    flats,
    hyperplanes,
    irreducible_cells,
)
from mosaic.errors import MosaicError, RangeError
from mosaic.moduli import divisor_label_classes, divisor_subcomplex, tile_count

BELL = {4: 5, 5: 15, 6: 52, 7: 203}

# Stirling set numbers: flats of codim k partition n-1 items into n-1-k blocks
STIRLING_BY_CODIM = {
    5: {0: 1, 1: 6, 2: 7, 3: 1},
    6: {0: 1, 1: 10, 2: 25, 3: 15, 4: 1},
}


def test_hyperplanes():
    assert hyperplanes(5) == tuple(combinations(range(1, 5), 2))
    assert len(hyperplanes(8)) == comb(7, 2)
    with pytest.raises(RangeError):
        hyperplanes(3)


@pytest.mark.parametrize("n", sorted(BELL))
def test_flat_census(n):
    all_flats = flats(n)
    assert len(all_flats) == BELL[n]
    assert len(set(all_flats)) == BELL[n]
    if n in STIRLING_BY_CODIM:
        assert Counter(f.codim for f in all_flats) == STIRLING_BY_CODIM[n]
    for flat in all_flats:
        assert flat.ground_size == n - 1


def test_flats_are_sorted_by_grade():
    grades = [f.codim for f in flats(5)]
    assert grades == sorted(grades)


def test_flat_validation():
    flat = Flat(((1, 2, 3), (4,)))
    assert flat.codim == 2
    assert flat.ground_size == 4
    with pytest.raises(MosaicError):
        Flat(((1, 2), (2, 3)))          # overlapping blocks
    with pytest.raises(MosaicError):
        Flat(((1, 2), (4,)))            # misses an element
    with pytest.raises(MosaicError):
        Flat(((2, 1), (3,)))            # block not sorted
    with pytest.raises(MosaicError):
        Flat(((3,), (1, 2)))            # blocks out of order


def test_flat_hyperplane_membership():
    flat = Flat(((1, 2, 3), (4,)))
    assert flat.contains_hyperplane((1, 2))
    assert flat.contains_hyperplane((2, 3))
    assert not flat.contains_hyperplane((1, 4))
    assert flat.nonsingleton_blocks() == ((1, 2, 3),)
    assert flat.is_irreducible()


def test_irreducibility():
    assert Flat(((1, 2), (3,), (4,))).is_irreducible()
    assert not Flat(((1, 2), (3, 4))).is_irreducible()
    assert not Flat(((1,), (2,), (3,), (4,))).is_irreducible()


@pytest.mark.parametrize("n", (5, 6, 7))
def test_irreducible_flat_counts(n):
    for k in range(1, n - 2):
        cells = irreducible_cells(n, k)
        assert len(cells) == comb(n - 1, k + 1)
        for flat in cells:
            assert flat.codim == k
            blocks = flat.nonsingleton_blocks()
            assert len(blocks) == 1 and len(blocks[0]) == k + 1
            members = sum(1 for pair in hyperplanes(n)
                          if flat.contains_hyperplane(pair))
            assert members == comb(k + 1, 2)


def test_irreducible_cells_range_guard():
    with pytest.raises(RangeError):
        irreducible_cells(5, 3)
    with pytest.raises(RangeError):
        irreducible_cells(5, 0)


@pytest.mark.parametrize("n", (4, 5, 6))
def test_chamber_counts(n):
    cones, projective = chamber_counts(n)
    assert cones == factorial(n - 1)
    assert projective == factorial(n - 1) // 2


def test_chamber_counts_range_guard():
    with pytest.raises(RangeError):
        chamber_counts(3)
    with pytest.raises(RangeError):
        chamber_counts(11)


# ---------------------------------------------------------------------------
# the flats against the divisor classes

@pytest.mark.parametrize("n", (5, 6))
def test_correspondence_covers_every_divisor_class(n):
    corr = divisor_correspondence(n)
    assert all(flat.is_irreducible() for flat in corr)
    assert len(corr) == sum(comb(n - 1, k + 1) for k in range(1, n - 2))
    assert set(corr.values()) == {frozenset(s) for s in divisor_label_classes(n)}


def test_blocks_predict_divisor_tile_counts(cache):
    # the divisor over a block B has tile_count(|B|+1) x tile_count(n-|B|+1)
    # top cells
    for n in (5, 6):
        complex_ = cache.full(n)
        for flat, block in divisor_correspondence(n).items():
            sub = divisor_subcomplex(complex_, block)
            expected = tile_count(len(block) + 1) * tile_count(n - len(block) + 1)
            assert sub.f_vector()[0] == expected
            assert flat.codim == len(block) - 1
