import pytest
from math import comb
from src.GroupAlgebra import *


def test_group_multiply():
    """ Tests products in the group algebra"""
    print("\n Testing group multiplication..")
    assert group_multiply(monomial(1), monomial(1)) == monomial(0)
    assert group_multiply(monomial(1), monomial(2)) == monomial(3)
    # (1 + x^v)^2 = 0 in characteristic 2
    assert group_multiply(0b11, 0b11) == 0
    assert augmentation(0b11) == 0
    assert augmentation(monomial(3)) == 1


data_aug_power = [[2, 0], [2, 1], [2, 2], [2, 3], [3, 1], [3, 2], [3, 3]]


@pytest.mark.parametrize(('m', 'k'), data_aug_power)
def test_aug_power_dimension(m: int, k: int):
    """ Tests dim m^k = sum over j >= k of C(m, j)"""
    print("\n Testing augmentation powers", m, k)
    expected = sum(comb(m, j) for j in range(k, m + 1))
    assert aug_power_basis(m, k).dim == expected


@pytest.mark.parametrize(('m', 'k'), [[2, 1], [2, 2], [3, 1], [3, 2], [3, 3]])
def test_aug_power_by_subspace_sums(m: int, k: int):
    """ Tests the description of m^k by sums over k-dimensional subspaces"""
    print("\n Testing subspace sums", m, k)
    assert aug_power_by_subspace_sums(m, k) == aug_power_basis(m, k)


def test_subspaces_of_dim():
    """ Tests counts of subspaces of F2^3"""
    print("\n Testing subspace enumeration..")
    assert len(subspaces_of_dim(3, 1)) == 7
    assert len(subspaces_of_dim(3, 2)) == 7
    assert len(subspaces_of_dim(3, 3)) == 1


def test_filtration_level():
    """ Tests the augmentation filtration level of elements"""
    print("\n Testing filtration levels..")
    assert filtration_level(0, 2) is None
    assert filtration_level(monomial(0), 2) == 0
    assert filtration_level(0b11, 2) == 1
    assert filtration_level(basis_product([1, 2], 2), 2) == 2


def test_eta():
    """ Tests eta and its inverse on the graded pieces"""
    print("\n Testing eta..")
    m = 3
    for k in range(m + 1):
        for element in range(1 << comb(m, k)):
            a = eta(k, element, m)
            assert aug_power_basis(m, k).contains(a)
            assert eta_inverse(k, a, m) == element
    with pytest.raises(InvariantViolationError):
        eta_inverse(2, 0b11, 2)


def test_function_degree():
    """ Tests degrees of truth tables"""
    print("\n Testing degree of functions..")
    assert degree(0, 2) is None
    assert degree(0b1111, 2) == 0
    assert degree(monomial_function(0b01, 2), 2) == 1
    assert degree(monomial_function(0b11, 2), 2) == 2
    assert degree_filtration(3, 1).dim == 4
    assert degree_filtration(3, 3).dim == 8


def test_pairing_and_contraction():
    """ Tests the pairing between functions and the group algebra"""
    f = characteristic_function([0, 3])
    print("\n Testing pairing..")
    assert pairing(f, monomial(0)) == 1
    assert pairing(f, monomial(1)) == 0
    assert pairing(f, monomial(0) | monomial(3)) == 0
    assert contract_function(f, 0b1111) == f
    assert function_multiply(f, characteristic_function([3])) == characteristic_function([3])


def test_affine_subspace():
    """ Tests listing of an affine line"""
    print("\n Testing affine subspaces..")
    assert affine_subspace(span([0b11], 2), 0b01) == [1, 2]
    assert affine_subspace(Subspace.zero(2), 0b10) == [2]
