"""Exact and floating-point linear algebra primitives."""

import math
import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from totpos.errors import InputError, SingularityError
from totpos.linalg import (
    Matrix,
    compound,
    det,
    index_set,
    inverse,
    ksubsets,
    minor,
    minor_levels,
    nullspace,
    rank,
    reversal_permutation,
    solve,
    submatrix,
    transpose_inverse,
)


def _random_fraction_matrix(n, rng, bound=6):
    return Matrix(
        [
            [F(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(n)
        ]
    )


def _sympy_det(m):
    sm = sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j]))
    r = sympy.Rational(sm.det())
    return F(int(r.p), int(r.q))


def test_matrix_shape_and_access():
    m = Matrix([[1, 2], [3, 4]])
    assert (m.rows, m.cols) == (2, 2)
    assert m[0, 1] == 2
    assert m.row_tuple(1) == (3, 4)
    assert m.col_tuple(0) == (1, 3)
    assert m.to_lists() == [[1, 2], [3, 4]]


def test_matrix_exactness_and_coercion():
    assert Matrix([[1, F(1, 2)]]).is_exact
    mixed = Matrix([[1, 0.5]])
    assert not mixed.is_exact
    assert isinstance(mixed[0, 0], float)


def test_matrix_equality_and_hash():
    a = Matrix([[F(1), F(2)], [F(3), F(4)]])
    b = Matrix([[1, 2], [3, 4]])
    assert a == b
    assert hash(a) == hash(b)
    assert a != Matrix([[1, 2], [3, 5]])


def test_matrix_is_immutable():
    m = Matrix([[1]])
    with pytest.raises(AttributeError):
        m.rows = 2


def test_matrix_constructors():
    assert Matrix.identity(2) == Matrix([[1, 0], [0, 1]])
    assert Matrix.diagonal([2, 3]) == Matrix([[2, 0], [0, 3]])
    assert Matrix.from_columns([[1, 2], [3, 4]]) == Matrix([[1, 3], [2, 4]])


def test_matrix_ragged_rows_rejected():
    with pytest.raises(InputError):
        Matrix([[1, 2], [3]])
    with pytest.raises(InputError):
        Matrix([])


def test_matmul_frozen():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[5, 6], [7, 8]])
    assert a @ b == Matrix([[19, 22], [43, 50]])


def test_arithmetic_operators():
    a = Matrix([[1, 2], [3, 4]])
    assert a + a == a.scale(2)
    assert a - a == Matrix([[0, 0], [0, 0]])
    assert (-a)[1, 0] == -3
    assert a.transpose() == Matrix([[1, 3], [2, 4]])


def test_det_frozen_small():
    assert det(Matrix([[3]])) == 3
    assert det(Matrix([[1, 2], [3, 4]])) == -2
    assert det(Matrix([[2, 1, 0], [1, 2, 1], [0, 1, 2]])) == 4


def test_det_hilbert_4():
    # classical exact value of the 4x4 Hilbert determinant
    h = Matrix([[F(1, i + j + 1) for j in range(4)] for i in range(4)])
    assert det(h) == F(1, 6048000)


def test_det_singular_exact():
    assert det(Matrix([[1, 2], [2, 4]])) == 0


def test_det_matches_sympy():
    rng = random.Random(20260816)
    for n in range(1, 6):
        for _ in range(8):
            m = _random_fraction_matrix(n, rng)
            assert det(m) == _sympy_det(m)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 3).flatmap(
        lambda n: st.tuples(
            st.lists(
                st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                min_size=n,
                max_size=n,
            ),
            st.lists(
                st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                min_size=n,
                max_size=n,
            ),
        )
    )
)
def test_det_multiplicative(pair):
    a, b = Matrix(pair[0]), Matrix(pair[1])
    assert det(a @ b) == det(a) * det(b)


def test_det_float_matches_numpy():
    import numpy as np

    rng = random.Random(5)
    for _ in range(20):
        rows = [[rng.uniform(-2, 2) for _ in range(4)] for _ in range(4)]
        ours = det(Matrix(rows))
        ref = float(np.linalg.det(np.array(rows)))
        assert math.isclose(ours, ref, rel_tol=1e-9, abs_tol=1e-12)


def test_index_set_validation():
    assert index_set((1, 3), 4) == (1, 3)
    with pytest.raises(InputError):
        index_set((3, 1), 4)  # not increasing
    with pytest.raises(InputError):
        index_set((0, 1), 4)  # 1-based
    with pytest.raises(InputError):
        index_set((1, 5), 4)  # out of range


def test_ksubsets_lex_order_and_count():
    subs = list(ksubsets(4, 2))
    assert subs == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert len(list(ksubsets(6, 3))) == math.comb(6, 3)


def test_minor_is_submatrix_det():
    rng = random.Random(77)
    m = _random_fraction_matrix(4, rng)
    for rs in ksubsets(4, 2):
        for cs in ksubsets(4, 2):
            assert minor(m, rs, cs) == det(submatrix(m, rs, cs))


def test_minor_levels_complete_and_consistent():
    rng = random.Random(13)
    m = _random_fraction_matrix(4, rng)
    seen_orders = []
    for k, table in minor_levels(m, 4):
        seen_orders.append(k)
        assert set(table) == {(r, c) for r in ksubsets(4, k) for c in ksubsets(4, k)}
        for (r, c), value in table.items():
            assert value == det(submatrix(m, r, c))
    assert seen_orders == [1, 2, 3, 4]


def test_compound_entries_and_cauchy_binet():
    rng = random.Random(3)
    a = _random_fraction_matrix(4, rng)
    b = _random_fraction_matrix(4, rng)
    for k in (1, 2, 3):
        ca, cb, cab = compound(a, k), compound(b, k), compound(a @ b, k)
        assert ca.rows == math.comb(4, k)
        assert cab == ca @ cb
    assert compound(a, 4) == Matrix([[det(a)]])
    # entry check against the lex subset order
    c2 = compound(a, 2)
    subs = list(ksubsets(4, 2))
    for i, rs in enumerate(subs):
        for j, cs in enumerate(subs):
            assert c2[i, j] == minor(a, rs, cs)


def test_rank_and_nullspace():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    assert rank(m) == 2
    basis = nullspace(m)
    assert len(basis) == 1
    v = basis[0]
    assert all(
        sum(m[i, j] * v[j] for j in range(3)) == 0 for i in range(3)
    )
    assert rank(Matrix.identity(5)) == 5
    assert nullspace(Matrix.identity(3)) == []


def test_inverse_exact_and_errors():
    rng = random.Random(42)
    for _ in range(10):
        m = _random_fraction_matrix(3, rng)
        if det(m) == 0:
            continue
        assert m @ inverse(m) == Matrix.identity(3)
    with pytest.raises(SingularityError):
        inverse(Matrix([[1, 2], [2, 4]]))


def test_inverse_float():
    from totpos.scalars import TolerancePolicy

    m = Matrix([[2.0, 1.0], [1.0, 1.0]])
    prod = m @ inverse(m)
    tight = TolerancePolicy(eps_abs=1e-12, eps_rel=1e-12)
    assert prod.approx_equal(Matrix.identity(2).to_float(), tight)


def test_transpose_inverse():
    m = Matrix([[1, 2], [0, 1]])
    assert transpose_inverse(m) == inverse(m.transpose())


def test_solve_exact():
    m = Matrix([[2, 1], [1, 3]])
    x = solve(m, [F(5), F(10)])
    assert [2 * x[0] + x[1], x[0] + 3 * x[1]] == [5, 10]
    with pytest.raises(SingularityError):
        solve(Matrix([[1, 1], [1, 1]]), [1, 2])


def test_reversal_permutation():
    rho = reversal_permutation(3)
    assert rho == Matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    assert rho @ rho == Matrix.identity(3)
