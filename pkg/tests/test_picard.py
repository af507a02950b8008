from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cremona_lab.picard import (
    DimensionMismatch,
    PicLattice,
    PreconditionFailed,
    WrongN,
    add,
    bertini,
    di_cross_values,
    exceptional_classes,
    geiser,
    scale,
)


def vectors(N):
    return st.lists(st.integers(-5, 5), min_size=N + 1, max_size=N + 1).map(tuple)


@given(vectors(7), vectors(7))
def test_geiser_is_an_isometric_involution(a, b):
    L = PicLattice(7)
    assert geiser(L, geiser(L, a)) == a
    assert L.dot(geiser(L, a), geiser(L, b)) == L.dot(a, b)
    assert geiser(L, add(a, b)) == add(geiser(L, a), geiser(L, b))


@given(vectors(8), vectors(8))
def test_bertini_is_an_isometric_involution(a, b):
    L = PicLattice(8)
    assert bertini(L, bertini(L, a)) == a
    assert L.dot(bertini(L, a), bertini(L, b)) == L.dot(a, b)


@given(vectors(8))
def test_bertini_decomposes_along_k(a):
    """K^2 = 1 at N = 8: a = (a.K) K + r with r in K-perp, and bertini(a) = (a.K) K - r."""
    L = PicLattice(8)
    k = L.dot(a, L.K)
    r = add(a, scale(-k, L.K))
    assert L.dot(r, L.K) == 0
    assert bertini(L, a) == add(scale(k, L.K), scale(-1, r))


def test_k_squared():
    for N in range(3, 9):
        L = PicLattice(N)
        assert L.dot(L.K, L.K) == 9 - N


def test_exceptional_classes_are_permuted():
    L7, L8 = PicLattice(7), PicLattice(8)
    c7, c8 = set(exceptional_classes(L7)), set(exceptional_classes(L8))
    assert {geiser(L7, E) for E in c7} == c7
    assert {bertini(L8, E) for E in c8} == c8
    # a line and its Geiser image meet twice
    assert all(L7.dot(E, geiser(L7, E)) == 2 for E in c7)


def test_cross_values_forced_configuration():
    L = PicLattice(8)
    D = scale(-2, L.K)
    assert L.dot(D, D) == 4 and L.dot(D, L.K) == -2
    res = di_cross_values(L, [D] * 4)
    assert res.cross_sum == 48 and res.common_value == 4
    assert all(res.table[i][j] == 4 for i in range(4) for j in range(4) if i != j)


def test_dimension_mismatch():
    L = PicLattice(8)
    with pytest.raises(DimensionMismatch):
        L.dot((1, 0), L.K)


def test_cross_values_preconditions():
    L = PicLattice(8)
    D = scale(-2, L.K)
    with pytest.raises(WrongN):
        di_cross_values(PicLattice(7), [scale(-2, PicLattice(7).K)] * 4)
    with pytest.raises(PreconditionFailed):
        di_cross_values(L, [D] * 3)
    with pytest.raises(PreconditionFailed):
        di_cross_values(L, [L.K] * 4)
