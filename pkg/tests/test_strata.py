import numpy as np
import pytest
from hypothesis import given, strategies as st

from genus2theta import lattice
from genus2theta.errors import ResourceError
from genus2theta.strata import (
    GradedRanks,
    build_nerve,
    check_nerve,
    compute_hc,
    e1_page,
    gysin_vanishing,
    kernel_rank,
    section_difference_matrix,
    triangle_count,
)


def test_nerve_examples():
    small = build_nerve(1, 0)
    assert len(small.components) == 2 and small.n_pairs == 1
    mid = build_nerve(3, 2)
    assert len(mid.components) == 150 and mid.n_pairs == 1875
    empty = build_nerve(0, 3)
    assert len(empty.components) == 0 and empty.n_pairs == 0


@pytest.mark.parametrize("n_beta, radius", [(1, 0), (2, 1), (3, 2), (4, 1)])
def test_nerve_matches_brute_force(n_beta, radius):
    nerve = build_nerve(n_beta, radius)
    assert check_nerve(nerve)
    assert list(nerve.components) == sorted(nerve.components)
    assert triangle_count(nerve) == 0


def test_nerve_scale_limits():
    with pytest.raises(ResourceError):
        build_nerve(51, 0)
    with pytest.raises(ResourceError):
        build_nerve(1, 11)


def test_hc_examples():
    assert compute_hc(build_nerve(1, 0)).ranks == {6: 2, 5: 1}
    assert compute_hc(build_nerve(3, 2)).ranks == {6: 150, 5: 1875}
    assert compute_hc(build_nerve(0, 0)).support() == set()


def test_e1_page_entries():
    assert e1_page(build_nerve(2, 1)) == {(0, 6): 36, (1, 4): 162}


def test_hc_exhaustive_shape():
    for n_beta in range(1, 11):
        for radius in range(5):
            nerve = build_nerve(n_beta, radius)
            hc = compute_hc(nerve)
            assert hc.support() == {5, 6}
            assert hc[5] == nerve.n_pairs == n_beta * (2 * radius + 1) ** 4
            assert hc[6] == len(nerve.components) == 2 * n_beta * (2 * radius + 1) ** 2


def test_gysin_examples():
    hc = GradedRanks({6: 7, 5: 3})
    assert gysin_vanishing(hc, 3, 8) == {4, 5, 6, 7, 8}
    assert gysin_vanishing(GradedRanks(), 3, 8) == {3, 4, 5, 6, 7, 8}
    assert 4 not in gysin_vanishing(GradedRanks({4: 1}), 3, 8)


degree_ranks = st.dictionaries(st.integers(0, 8), st.integers(0, 5))


@given(degree_ranks, st.integers(0, 8))
def test_gysin_monotone(ranks, drop):
    full = GradedRanks(ranks)
    smaller = GradedRanks({d: (0 if d == drop else r) for d, r in ranks.items()})
    assert gysin_vanishing(full) <= gysin_vanishing(smaller)


def test_kernel_rank_examples():
    assert kernel_rank(0) == 0
    assert kernel_rank(1) == 1
    assert kernel_rank(7) == 7
    diffs = section_difference_matrix(7)
    assert np.array(diffs).shape == (7, 14)
    assert lattice.rank(diffs) == 7


def test_kernel_rank_strictly_grows():
    ranks = [kernel_rank(n) for n in range(21)]
    assert ranks == list(range(21))
