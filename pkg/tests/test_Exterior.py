import pytest
from src.Exterior import *


data_subsets = [[3, 0, (0,)],
                [3, 1, (0b001, 0b010, 0b100)],
                [3, 2, (0b011, 0b101, 0b110)],
                [3, 4, ()]]


@pytest.mark.parametrize(('m', 'k', 'masks'), data_subsets)
def test_subsets(m: int, k: int, masks: tuple):
    """ Tests the ordering of the subset basis"""
    print("\n Testing subsets of", m, k)
    assert subsets(m, k) == masks


def test_compress_expand():
    """ Tests re-indexing of coordinate bits"""
    print("\n Testing compress and expand..")
    assert compress(0b1010, (1, 3)) == 0b11
    assert compress(0b0110, (1, 3)) == 0b01
    assert expand(0b11, (1, 3)) == 0b1010


def test_wedge():
    """ Tests wedges of vectors in the subset basis"""
    print("\n Testing wedge..")
    assert wedge([0b01, 0b10], 2) == 1
    assert wedge([0b11, 0b11], 2) == 0
    assert wedge([0b011, 0b110], 3) == 0b111
    assert wedge([0b001], 3) == 0b001


def test_exterior_power_of_subspace():
    """ Tests exterior powers of a plane in F2^3"""
    W = span([0b001, 0b010], 3)
    print("\n Testing exterior powers..")
    assert exterior_power_of_subspace(W, 1) == W
    assert exterior_power_of_subspace(W, 2).dim == 1
    assert exterior_power_of_subspace(W, 3).dim == 0


def test_compound():
    """ Tests the map induced on exterior powers"""
    print("\n Testing compound matrices..")
    assert compound(F2Matrix.identity(3), 2) == F2Matrix.identity(3)
    f = F2Matrix.from_array([[1, 1], [1, 1]])
    assert compound(f, 2).is_zero()


def test_wedge_product():
    """ Tests products of basis elements"""
    print("\n Testing wedge product..")
    assert wedge_product(0b001, 1, 0b010, 1, 3) == 0b001
    assert wedge_product(0b001, 1, 0b001, 1, 3) == 0
    assert wedge_product(0b001, 1, 0b100, 1, 3) == 0b010


def test_contract():
    """ Tests contraction of 2-vectors by 1-forms"""
    print("\n Testing contraction..")
    # e*_0 . e_01 = e_1
    assert contract(0b001, 1, 0b001, 2, 3) == 0b010
    # e*_2 . e_01 = 0
    assert contract(0b100, 1, 0b001, 2, 3) == 0
    assert contract(0b001, 2, 0b001, 1, 3) == 0
    assert contraction_matrix(0b001, 1, 2, 3).rank() == 2


def test_restrict_form():
    """ Tests restriction of forms to coordinate subspaces"""
    print("\n Testing restrict_form..")
    assert restrict_form(0b010, 1, 3, (1, 2)) == 0b01
    assert restrict_form(0b001, 1, 3, (1, 2)) == 0
    assert restrict_form(0b100, 2, 3, (1, 2)) == 0b1
