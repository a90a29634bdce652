from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from magnetite.feasibility import nonnegative_solution, solve_with_lower_bounds


def test_trivial_system():
    assert nonnegative_solution([], []) == []


def test_simple_feasible():
    x = nonnegative_solution([[1, 1]], [3])
    assert x is not None and sum(x) == 3 and all(v >= 0 for v in x)


def test_simple_infeasible():
    assert nonnegative_solution([[1, 1]], [-1]) is None
    assert nonnegative_solution([[1, -1], [1, 1]], [0, -2]) is None


def test_exact_fractions():
    x = nonnegative_solution([[3, 0], [0, 7]], [1, 2])
    assert x == [Fraction(1, 3), Fraction(2, 7)]


def test_lower_bounds():
    # c0 - c1 = 0 with c0 >= 1
    x = solve_with_lower_bounds([[1, -1]], [0], [1, 0])
    assert x is not None and x[0] >= 1 and x[0] == x[1]
    assert solve_with_lower_bounds([[1, 1]], [0], [1, 0]) is None


def test_degenerate_cycling_guard():
    # a classic degenerate system; Bland's rule must terminate
    A = [[1, 0, 0, 1, 0, 0, 0], [0, 1, 0, 0, 1, 0, 0], [0, 0, 1, 0, 0, 1, 0], [1, 1, 1, 0, 0, 0, 1]]
    assert nonnegative_solution(A, [0, 0, 0, 0]) is not None


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=1, max_size=3),
            st.integers(-3, 3),
        )
    )
)
def test_agrees_with_floating_lp(data):
    A, shift = data
    b = [sum(row) * shift + i for i, row in enumerate(A)]
    ours = nonnegative_solution(A, b)
    res = linprog(np.zeros(len(A[0])), A_eq=np.array(A), b_eq=np.array(b), bounds=[(0, None)] * len(A[0]))
    assert (ours is not None) == (res.status == 0)
    if ours is not None:
        assert all(v >= 0 for v in ours)
        for row, bi in zip(A, b):
            assert sum(a * v for a, v in zip(row, ours)) == bi
