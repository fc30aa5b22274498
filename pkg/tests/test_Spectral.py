import pytest
from src.Spectral import *


def identity_filtered() -> FilteredComplexF2:
    # F2 -> F2, source in filtration 0 and target in filtration 1
    C = ChainComplexF2([1, 1], {1: F2Matrix.identity(1)})
    return FilteredComplexF2(C, {(1, 0): Subspace.full(1), (1, 1): Subspace.zero(1)}, 1)


def zero_filtered() -> FilteredComplexF2:
    C = ChainComplexF2([2, 1], {})
    return FilteredComplexF2(C, {(1, 0): Subspace.zero(2), (1, 1): Subspace.zero(1)}, 1)


def test_identity_complex():
    """ Tests that the only differential kills everything"""
    pages = compute_pages(identity_filtered())
    print("\n Testing pages of the identity complex..")
    assert len(pages) == 3
    assert pages[1].dims == {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}
    assert pages[1].rank(0, 1) == 1
    assert pages[1].target_of[(0, 1)] == (1, 0)
    assert all(d == 0 for d in pages[2].dims.values())
    assert degeneracy_index(pages) == 2
    assert infinity_by_degree(pages) == [0, 0]
    assert pages[1].to_json() == {"r": 1, "dims": [[0, 1, 1], [1, 0, 1]], "ranks": [[0, 1, 1]]}


def test_zero_differential():
    """ Tests that pages of a complex with zero differential never change"""
    pages = compute_pages(zero_filtered())
    print("\n Testing pages of a zero complex..")
    for page in pages:
        assert page.dims[(0, 0)] == 2
        assert page.dims[(0, 1)] == 1
        assert page.is_degenerate()
    assert degeneracy_index(pages) == 0
    assert infinity_by_degree(pages) == [2, 1]
    assert set(euler_characteristics(pages)) == {1}


@pytest.mark.parametrize('build', [identity_filtered, zero_filtered])
def test_dual_pages(build):
    """ Tests that the dual spectral sequence has the same page dimensions"""
    C = build()
    primal = compute_pages(C)
    dual = compute_pages(C, "cohomology")
    print("\n Testing dual pages..")
    assert dualize(C).direction == "cohomology"
    for p_page, d_page in zip(primal, dual):
        assert p_page.dims == d_page.dims
        assert p_page.is_degenerate() == d_page.is_degenerate()
    twice = compute_pages(dualize(dualize(C)))
    assert [page.dims for page in twice] == [page.dims for page in primal]


def test_annihilator_dimensions():
    """ Tests dim F_p(dual) = total - dim F^(p-1)(primal)"""
    C = dualize(identity_filtered())
    D = dualize(C)
    print("\n Testing dual filtration dimensions..")
    for q in range(2):
        for p in range(3):
            assert D.F(p, q).dim == C.complex.dims[q] - C.F(p - 1, q).dim
            assert D.graded_dim(p, q) == C.graded_dim(p, q)


def test_filtration_errors():
    """ Tests that a filtration not preserved by the differential is rejected"""
    C = ChainComplexF2([1, 1], {1: F2Matrix.identity(1)})
    print("\n Testing filtration errors..")
    with pytest.raises(FiltrationError):
        FilteredComplexF2(C, {(1, 0): Subspace.zero(1), (1, 1): Subspace.full(1)}, 1)
    with pytest.raises(FiltrationError):
        FilteredComplexF2(C, {(1, 0): Subspace.full(1), (1, 1): Subspace.zero(1),
                              (2, 0): Subspace.zero(1), (2, 1): Subspace.full(1)}, 2)


def test_cycles_beyond_the_filtration():
    """ Tests that cycles of late pages are those of the first page reaching the bound"""
    C = identity_filtered()
    sequence = SpectralSequence(C)
    print("\n Testing cycles of late pages..")
    assert C.F(-3, 0) is C.F(0, 0)
    assert C.F(5, 1) is C.F(2, 1)
    assert sequence.Z(5, 0, 1) is sequence.Z(2, 0, 1)
    assert sequence.Z(2, 0, 1).dim == 0
    assert sequence.Z(1, 0, 1).dim == 1
    assert sequence.preimage(2, 1) == C.complex.cycles(1)
