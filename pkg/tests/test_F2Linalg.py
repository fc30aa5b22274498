import pytest
from src.F2Linalg import *


data_weight = [[0, 0, 0, []],
               [0b1, 1, 1, [0]],
               [0b1010, 2, 0, [1, 3]],
               [0b1011, 3, 1, [0, 1, 3]]]


@pytest.mark.parametrize(('vector', 'w', 'p', 'positions'), data_weight)
def test_weight_parity_bits(vector: int, w: int, p: int, positions: list):
    """ Tests weight, parity and bits of packed vectors"""
    print("\n Testing packed vectors..")
    assert weight(vector) == w
    assert parity(vector) == p
    assert bits(vector) == positions


data_rank = [[[[1, 0], [0, 1]], 2, 0],
             [[[1, 1], [1, 1]], 1, 1],
             [[[0, 0, 0], [0, 0, 0]], 0, 3],
             [[[1, 1, 0], [0, 1, 1], [1, 0, 1]], 2, 1]]


@pytest.mark.parametrize(('array', 'rank', 'nullity'), data_rank)
def test_rank_nullity(array: list, rank: int, nullity: int):
    """ Tests rank and kernel dimension of matrices"""
    f = F2Matrix.from_array(array)
    print("\n Testing rank of", array)
    assert f.rank() == rank
    assert f.kernel().dim == nullity
    assert f.rank() + f.kernel().dim == f.n_cols
    for v in f.kernel().basis:
        assert f.apply(v) == 0


def test_from_array_reduces_mod_2():
    """ Tests that entries are read mod 2"""
    f = F2Matrix.from_array([[3, 2], [1, 5]])
    print("\n Testing from_array..")
    assert f.columns == (0b11, 0b10)
    assert f.to_array().tolist() == [[1, 0], [1, 1]]
    assert f.entry(1, 1) == 1


def test_matrix_product_and_transpose():
    """ Tests composition, sums and transposition"""
    f = F2Matrix.from_array([[1, 1], [0, 1]])
    print("\n Testing matrix algebra..")
    assert (f @ f).columns == F2Matrix.identity(2).columns
    assert (f + f).is_zero()
    assert f.transpose().transpose() == f
    assert f.transpose().columns == (0b11, 0b10)


def test_shape_errors():
    """ Tests the dimension checks"""
    print("\n Testing dimension mismatch..")
    with pytest.raises(DimensionMismatchError):
        F2Matrix(2, 1, (0b100,))
    with pytest.raises(DimensionMismatchError):
        F2Matrix.identity(2) @ F2Matrix.identity(3)
    with pytest.raises(DimensionMismatchError):
        span([0b1000], 3)
    with pytest.raises(DimensionMismatchError):
        intersection(Subspace.full(2), Subspace.full(3))


def test_span_is_canonical():
    """ Tests that equal subspaces get identical bases"""
    U = span([0b011, 0b110], 3)
    W = span([0b101, 0b110, 0b011], 3)
    print("\n Testing canonical form..", U, W)
    assert U.dim == 2
    assert U == W
    assert canonicalize(F2Matrix(3, 3, (0b101, 0b110, 0b011))) == U
    assert U.contains(0b101)
    assert not U.contains(0b001)
    assert U.reduce(0b001) == U.reduce(0b111)


def test_reduction_through_several_pivots():
    """ Tests the reduced basis when rows share several pivot columns"""
    U = span([0b1011, 0b0110, 0b0011], 4)
    print("\n Testing full reduction..")
    assert U.basis == (0b0011, 0b0101, 0b1000)
    assert U.pivot_mask == 0b1110
    assert U.reduce(0b1111) == 0b0001
    assert U.contains(0b1110)
    assert not U.contains(0b0001)
    assert U.free_coordinates() == (0,)


def test_intersection_with_trivial_spaces():
    """ Tests intersections with the zero and the whole space"""
    U = span([0b011, 0b110], 3)
    print("\n Testing trivial intersections..")
    assert intersection(Subspace.full(3), U) == U
    assert intersection(U, Subspace.full(3)) == U
    assert intersection(U, Subspace.zero(3)) == Subspace.zero(3)
    assert intersection(U, span([0b101, 0b001], 3)) == span([0b101], 3)


def test_sum_and_intersection():
    """ Tests sum and intersection of two planes in F2^3"""
    U = span([0b001, 0b010], 3)
    W = span([0b010, 0b100], 3)
    total, common = sum_and_intersection(U, W)
    print("\n Testing sum and intersection..")
    assert total == Subspace.full(3)
    assert common == span([0b010], 3)
    assert subspace_sum(U, W) == total
    assert U.dim + W.dim == total.dim + common.dim


def test_annihilator():
    """ Tests the annihilator of a line"""
    U = span([0b11], 2)
    print("\n Testing annihilator..")
    assert U.annihilator() == U
    assert Subspace.zero(3).annihilator() == Subspace.full(3)


def test_image_and_preimage():
    """ Tests images and preimages of subspaces"""
    f = F2Matrix.from_array([[1, 0, 1], [0, 1, 1]])
    print("\n Testing image and preimage..")
    assert image_of(f, Subspace.full(3)) == Subspace.full(2)
    pre = preimage(f, span([0b01], 2))
    assert pre.dim == 2
    assert pre.contains(0b001)
    assert pre.contains(0b110)
    assert preimage(f, Subspace.zero(2)) == f.kernel()


def test_quotient_basis():
    """ Tests coordinates and lifts on a subquotient"""
    num = Subspace.full(3)
    den = span([0b011], 3)
    Q = QuotientBasis(num, den)
    print("\n Testing quotient basis..")
    assert Q.dim == 2
    for coords in range(1 << Q.dim):
        assert Q.coordinates(Q.lift(coords)) == coords
    assert Q.coordinates(0b011) == 0
    assert Q.coordinates(0b001) == Q.coordinates(0b010)
    with pytest.raises(InvariantViolationError):
        QuotientBasis(span([0b001], 3), span([0b010], 3))


def test_induced_map_on_subquotient():
    """ Tests the quotient map F2^2 -> F2^2 / <e0>"""
    f = F2Matrix.identity(2)
    src = QuotientBasis(Subspace.full(2), Subspace.zero(2))
    induced = induced_map_on_subquotient(f, Subspace.full(2), Subspace.zero(2),
                                         Subspace.full(2), span([0b01], 2))
    print("\n Testing induced map..")
    assert src.dim == 2
    assert induced.n_rows == 1 and induced.n_cols == 2
    assert induced.rank() == 1
    with pytest.raises(InvariantViolationError):
        induced_map_on_subquotient(f, Subspace.full(2), span([0b01], 2),
                                   span([0b01], 2), Subspace.zero(2))


def test_solve():
    """ Tests solving linear systems"""
    f = F2Matrix.from_array([[1, 1], [0, 0]])
    print("\n Testing solve..")
    x = solve(f, 0b01)
    assert x is not None
    assert f.apply(x) == 0b01
    assert solve(f, 0b10) is None
    assert solve(f, 0) == 0
