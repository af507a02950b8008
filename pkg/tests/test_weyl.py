from __future__ import annotations

import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cremona_lab.weyl import (
    GROUP_ORDERS,
    BudgetExceeded,
    WeylElement,
    bareiss_det,
    bareiss_rank,
    count_elements,
    cycle_to_perm,
    elements_of_order,
    fixed_vector_witness,
    integer_kernel,
    longest_element,
    order_profile,
    permutation_element,
    root_system,
    standard_cartan,
)


@pytest.mark.parametrize("name", ["A4", "D5", "E6", "E7", "E8"])
def test_cartan_and_positive_roots(name):
    rs = root_system(name)
    assert np.array_equal(rs.cartan, standard_cartan(name))
    n_pos = {"A4": 10, "D5": 20, "E6": 36, "E7": 63, "E8": 120}[name]
    assert len(rs.positive_roots) == n_pos
    # every positive root has norm 2
    G = rs.gram
    assert all(int(v @ G @ v) == 2 for v in rs.positive_roots)


@pytest.mark.parametrize("name", ["A4", "D5", "E6"])
def test_enumeration_counts(name):
    assert count_elements(root_system(name)) == GROUP_ORDERS[name]


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        count_elements(root_system("E8"))


def test_a4_profile_matches_symmetric_group():
    """W(A4) = S5 acting on the sum-zero hyperplane: trace = fix - 1, fixed
    rank = cycles - 1."""
    expected: dict[int, dict] = {}
    for perm in itertools.permutations(range(5)):
        seen, cycles, lengths = set(), 0, []
        for i in range(5):
            if i in seen:
                continue
            j, L = i, 0
            while j not in seen:
                seen.add(j)
                j, L = perm[j], L + 1
            cycles += 1
            lengths.append(L)
        order = math.lcm(*lengths)
        fix = sum(1 for i in range(5) if perm[i] == i)
        e = expected.setdefault(order, {"count": 0, "traces": [], "ranks": []})
        e["count"] += 1
        e["traces"].append(fix - 1)
        e["ranks"].append(cycles - 1)
    prof = order_profile(root_system("A4"))
    assert sorted(prof.realized_orders) == sorted(expected)
    for m, e in expected.items():
        assert prof[m].count == e["count"]
        assert sorted(prof[m].traces.elements()) == sorted(e["traces"])
        assert sorted(prof[m].fixed_ranks.elements()) == sorted(e["ranks"])


def test_permutation_element_and_fixed_vector():
    rs = root_system("A4")
    w = permutation_element(rs, cycle_to_perm(5, [1, 2, 3, 4]))
    assert w.order == 4 and w.preserves_form()
    v = fixed_vector_witness(w)
    assert v is not None and np.array_equal(w.matrix @ np.array(v), np.array(v))


@pytest.mark.parametrize("name,minus", [("A4", False), ("D5", False), ("E6", False), ("E7", True), ("E8", True)])
def test_longest_element(name, minus):
    rs = root_system(name)
    w0 = longest_element(rs)
    assert (w0 * w0).is_identity() and w0.preserves_form()
    assert (w0 == rs.minus_identity()) == minus
    # w0 maps every positive root to a negative one
    images = rs.positive_roots @ w0.matrix.T
    assert (images <= 0).all()


@st.composite
def e6_elements(draw):
    rs = root_system("E6")
    word = draw(st.lists(st.integers(0, rs.rank - 1), max_size=30))
    M = np.eye(rs.rank, dtype=np.int64)
    for i in word:
        M = rs.reflections[i] @ M
    return WeylElement(rs, M)


@given(e6_elements())
def test_fixed_rank_two_routes(w):
    """Bareiss rank of w - I against the average trace of the powers of w."""
    o = w.order
    avg = sum(int(np.trace(np.linalg.matrix_power(w.matrix, k))) for k in range(o))
    assert avg % o == 0
    assert w.fixed_rank == avg // o
    kernel = integer_kernel((w.matrix - np.eye(6, dtype=np.int64)).tolist())
    assert len(kernel) == w.fixed_rank
    assert w.preserves_form() and abs(w.det) == 1


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_against_numpy(rows):
    M = np.array(rows, dtype=np.int64)
    assert bareiss_rank(rows) == np.linalg.matrix_rank(M)
    assert bareiss_det(rows) == round(np.linalg.det(M))
    for v in integer_kernel(rows):
        assert not (M @ np.array(v)).any()


def test_d5_order8_sample_elements():
    rs = root_system("D5")
    els = elements_of_order(rs, 8)
    assert els and all(w.trace == -1 for w in els)
    for w in random.Random(0).sample(els, 10):
        assert w.order == 8
