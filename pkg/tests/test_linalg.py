from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from khlab.linalg import (
    Echelon,
    SparseMatrix,
    kernel_basis,
    prime_power_parts,
    rank_mod2,
    rank_q,
    smith_normal_form,
    torsion_parts,
)


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == ([1, 6], 2)
    assert smith_normal_form(SparseMatrix(3, 2)) == ([], 0)
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == ([1, 1, 1], 3)
    assert smith_normal_form([[2, 4], [4, 2]]) == ([2, 6], 2)


def test_prime_powers():
    assert prime_power_parts(12) == [3, 4]
    assert prime_power_parts(7) == [7]
    assert torsion_parts([1, 1, 2, 6, 0]) == [2, 2, 3]


def test_mod2_rank():
    m = SparseMatrix.from_dense([[2, 0], [1, 1], [1, 1]])
    assert rank_mod2(m) == 1
    assert rank_q(m) == 2


def test_matmul_and_select():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[1, -2], [0, 1]])
    assert (a @ b).to_dense() == [[1, 0], [0, 1]]
    assert a.select([1], [1]).to_dense() == [[1]]
    with pytest.raises(ValueError):
        a @ SparseMatrix(3, 1)


def test_echelon_membership():
    e = Echelon()
    assert e.add({0: 1, 1: 1})
    assert not e.add({0: 2, 1: 2})
    assert e.contains({0: Fraction(1, 2), 1: Fraction(1, 2)})
    assert not e.contains({0: 1})


matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(
            st.lists(st.sampled_from([0, 0, 0, 1, -1, 2, -3, 4, 6]), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
)


@given(matrices)
def test_snf_matches_sympy(a):
    inv, r = smith_normal_form(a)
    ref = sorted(abs(int(x)) for x in invariant_factors(Matrix(a), domain=ZZ) if x != 0)
    assert inv == ref
    assert r == Matrix(a).rank()
    assert all(inv[k + 1] % inv[k] == 0 for k in range(len(inv) - 1))


@given(matrices)
def test_kernel_basis(a):
    m = SparseMatrix.from_dense(a)
    basis = kernel_basis(m)
    assert len(basis) == m.ncols - rank_q(m)
    for v in basis:
        assert not m.apply(v)
