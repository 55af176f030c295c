import numpy as np
import pytest

from khlab.frobenius import (
    IDENTITIES,
    KHOVANOV,
    LEE,
    ONE,
    X,
    basis,
    check_tube_cutting,
    closed_surface_value,
    comul,
    counit,
    element,
    mul,
    pairing_matrix,
    tensor,
    tube,
    tube_cut,
    unit,
)

one, x = basis(ONE), basis(X)


def test_multiplication_tables():
    assert not mul(KHOVANOV, x, x).any()
    assert np.array_equal(mul(LEE, x, x), one)
    for spec in (KHOVANOV, LEE):
        a = element(3, -2)
        assert np.array_equal(mul(spec, one, a), a)
        assert np.array_equal(mul(spec, a, one), a)


def test_comultiplication_tables():
    assert np.array_equal(comul(KHOVANOV, one), tensor(one, x) + tensor(x, one))
    assert np.array_equal(comul(KHOVANOV, x), tensor(x, x))
    assert np.array_equal(comul(LEE, x), tensor(x, x) + tensor(one, one))
    assert not comul(LEE, element(0, 0)).any()


def test_unit_and_counit():
    for spec in (KHOVANOV, LEE):
        assert counit(spec, one) == 0
        assert counit(spec, x) == 1
        assert np.array_equal(unit(spec, 1), one)


@pytest.mark.parametrize("name", sorted(IDENTITIES))
@pytest.mark.parametrize("spec", [KHOVANOV, LEE], ids=lambda s: s.name)
def test_identities(spec, name):
    assert IDENTITIES[name](spec)


def test_closed_surfaces():
    assert [closed_surface_value(KHOVANOV, g) for g in range(4)] == [0, 2, 0, 0]
    with pytest.raises(ValueError):
        closed_surface_value(KHOVANOV, -1)


def test_pairing_gram():
    assert pairing_matrix(KHOVANOV).tolist() == [[0, 1], [1, 0]]


def test_tube_equals_cut_form():
    for i, j in ((0, 1), (0, 3), (1, 2)):
        assert np.array_equal(tube(KHOVANOV, i, j), tube_cut(KHOVANOV, i, j))


def test_four_tube_fails_for_wrong_pairing():
    lhs = tube(KHOVANOV, 0, 1) + tube(KHOVANOV, 2, 3)
    assert not np.array_equal(lhs, tube(KHOVANOV, 0, 2) + tube(KHOVANOV, 1, 2))


def test_tube_cutting_detects_broken_counit():
    from dataclasses import replace

    broken = replace(KHOVANOV, counit=(1, 1))
    assert not check_tube_cutting(broken)
