from fractions import Fraction

from hypothesis import given, settings, strategies as st

from tmf13.linalg import LinearSystem, rank, solve_exact, solve_many
from tmf13.series import QLaurent


def test_unique_solution():
    sol = solve_exact(LinearSystem([[2, 1], [1, 3]], [3, 5]))
    assert sol.unique
    assert sol.particular == (Fraction(4, 5), Fraction(7, 5))


def test_free_parameters_reported():
    sol = solve_exact(LinearSystem([[1, 1, 0], [0, 0, 1]], [2, 3]))
    assert sol.consistent and not sol.unique
    assert sol.free_columns == (1,)
    (v,) = sol.nullspace
    assert v == (-1, 1, 0)


def test_inconsistency_certificate():
    A = [[1, 2], [2, 4], [0, 1]]
    b = [1, 3, 0]
    sol = solve_exact(LinearSystem(A, b))
    assert not sol.consistent
    y = sol.certificate
    assert all(sum(y[i] * A[i][j] for i in range(3)) == 0 for j in range(2))
    assert sum(y[i] * b[i] for i in range(3)) == sol.witness_value != 0


def test_series_right_hand_side():
    a = QLaurent(0, [1, 1], 4)
    b = QLaurent(0, [0, 1, 5], 4)
    sol = solve_many([[1, 1], [1, -1]], [[a + b, a - b]])[0]
    assert sol.particular[0] == a and sol.particular[1] == b


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2


ints = st.integers(min_value=-5, max_value=5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=2, max_size=4),
       st.lists(ints, min_size=3, max_size=3))
def test_constructed_systems_are_solved(A, x):
    b = [sum(a * v for a, v in zip(row, x)) for row in A]
    sol = solve_exact(LinearSystem(A, b))
    assert sol.consistent
    got = sol.particular
    assert all(sum(a * v for a, v in zip(row, got)) == bi for row, bi in zip(A, b))
    for n in sol.nullspace:
        assert all(sum(a * v for a, v in zip(row, n)) == 0 for row in A)
    assert sol.rank + len(sol.nullspace) == 3
