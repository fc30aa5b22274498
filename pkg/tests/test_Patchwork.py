import pytest
from src.Patchwork import *
from src.SampleData import *


@pytest.fixture(scope = "module")
def line_lift() -> RealLift:
    return real_lift(viro(2, 1))


@pytest.fixture(scope = "module")
def cubic() -> THypersurface:
    lift = real_lift(viro(2, 3))
    return t_hypersurface(lift, harnack_signs(lift.K))


data_real_betti = [[viro(1, 1), [1, 1]],
                   [viro(2, 1), [1, 1, 1]],
                   [cube_triangulation(2, 1), [1, 2, 1]],
                   [viro(2, 2), [1, 1, 1]]]


@pytest.mark.parametrize(('K', 'betti'), data_real_betti)
def test_real_part(K: Triangulation, betti: list):
    """ Tests the Betti numbers of RP on the simplicial and the folded model"""
    lift = real_lift(K)
    print("\n Testing real part of", K)
    assert lift.betti_numbers() == betti
    assert rp_cohomology_ring(lift).betti_numbers() == betti
    assert lift.chains().betti_numbers() == betti


def test_real_cells(line_lift: RealLift):
    """ Tests the real simplices of RP^2 over one triangle"""
    print("\n Testing real simplices..")
    assert len(line_lift.real_simplices(0)) == 3
    assert len(line_lift.real_simplices(1)) == 6
    assert len(line_lift.real_simplices(2)) == 4
    for cell in line_lift.real_simplices(2):
        assert cell.arg < 4


def test_projective_plane_ring(line_lift: RealLift):
    """ Tests that h^2 is the top class of RP^2"""
    ring = rp_cohomology_ring(line_lift)
    print("\n Testing the ring of RP^2..")
    assert ring.product(1, 1, 1, 1) == 1
    assert ring.product(2, 1, 1, 1) == 0
    assert ring.omega_class() == 1
    assert ring.multiplication_matrix(1, 1).rank() == 1
    assert ring.alexander_whitney_check().ok


def test_torus_ring():
    """ Tests that degree one classes of the torus square to zero"""
    lift = real_lift(cube_triangulation(2, 1))
    ring = rp_cohomology_ring(lift)
    print("\n Testing the ring of the torus..")
    for x in range(1, 4):
        assert ring.product(1, x, 1, x) == 0
    assert ring.product(1, 1, 1, 2) == 1
    assert lift.degree_coordinates() == (1, 1)
    assert lift.facet_cycle(0) is not None
    assert ring.alexander_whitney_check().ok


def test_omega_class_of_conic():
    """ Tests that an even degree hypersurface is dual to zero"""
    ring = rp_cohomology_ring(real_lift(viro(2, 2)))
    print("\n Testing omega of a conic..")
    assert ring.omega_class() == 0


def test_arg_sets(line_lift: RealLift):
    """ Tests the sizes of the argument sets on the tropical line"""
    eps = harnack_signs(line_lift.K)
    poset = line_lift.T.poset
    print("\n Testing argument sets..")
    for cell in line_lift.T.X.all_cells():
        args = arg_set(line_lift, eps, cell)
        a_dim, b_dim = poset.dims[cell[0]], poset.dims[cell[1]]
        if a_dim == 2:
            assert (len(args), args.rank) == (3, 2)
        elif b_dim == 2:
            assert (len(args), args.rank) == (2, 2)
        else:
            assert (len(args), args.rank) == (1, 1)
        assert sorted(list(args.members) + args.complement()) == list(range(1 << args.rank))


def test_pseudoline(line_lift: RealLift):
    """ Tests that a T-line is one non contractible circle"""
    hyp = t_hypersurface(line_lift, harnack_signs(line_lift.K))
    print("\n Testing a T-line..")
    assert not hyp.is_empty()
    assert hyp.betti_numbers() == [1, 1]
    assert hyp.euler_characteristic() == 0
    assert len(hyp.components()) == 1
    assert hyp.component_classes() == [(1,)]
    assert hyp.direct_betti() == [1, 1]


def test_harnack_cubic(cubic: THypersurface):
    """ Tests the Harnack cubic: an oval and a pseudoline"""
    print("\n Testing the Harnack cubic..")
    assert cubic.betti_numbers() == [2, 2]
    assert cubic.direct_betti() == [2, 2]
    assert len(cubic.components()) == 2
    assert sorted(cubic.component_classes()) == [(0,), (1,)]
    counts = cubic.cell_counts()
    assert counts[0] == counts[1]


def test_cubic_checks(cubic: THypersurface):
    """ Tests duality, filtration and graded piece checks on the Harnack cubic"""
    ring = rp_cohomology_ring(cubic.lift)
    print("\n Testing checks on the cubic..")
    assert cubic.poincare_duality_check(ring).ok
    assert cubic.filtration_equality().ok
    assert cubic.graded_pieces_check().ok
    assert cubic.graded_pieces_check(FiltrationMethod.EDGE_SUMS).ok
    assert cubic.pushforward_map(1).rank() == cubic.restriction_map(1).rank()


@pytest.mark.parametrize('method', ["intersection", "edge_sums"])
def test_filtered_complex(cubic: THypersurface, method: str):
    """ Tests the pages of the filtered sign complex"""
    C = filtered_t_complex(cubic, method)
    pages = compute_pages(C)
    H = tropical_homology(cubic.T)
    print("\n Testing the filtered complex with", method)
    assert C.length == 2
    assert pages[0].total_by_degree() == {0: cubic.cell_counts()[0], 1: cubic.cell_counts()[1]}
    for (p, q), d in pages[1].dims.items():
        assert d == H.hodge_X(p, q)
    assert infinity_by_degree(pages) == [2, 2]
    assert degeneracy_index(pages) <= 1


def test_harnack_quartic():
    """ Tests that the Harnack quartic has four ovals"""
    lift = real_lift(viro(2, 4))
    hyp = t_hypersurface(lift, harnack_signs(lift.K))
    print("\n Testing the Harnack quartic..")
    assert hyp.betti_numbers() == [4, 4]
    assert len(hyp.components()) == 4


def test_fig_torus_curve():
    """ Tests the sample T-curve on the torus"""
    K = fig_torus_triangulation()
    lift = real_lift(K)
    hyp = t_hypersurface(lift, fig_torus_signs(K))
    print("\n Testing the sample T-curve..")
    assert hyp.betti_numbers() == FIG_TORUS_BETTI
    assert sorted(hyp.component_classes()) == FIG_TORUS_CLASSES


def test_sign_count_mismatch(line_lift: RealLift):
    """ Tests that a wrong number of signs is rejected"""
    print("\n Testing sign count mismatch..")
    with pytest.raises(AssemblyError):
        t_hypersurface(line_lift, SignDistribution((0, 1)))


def test_page_pairing(cubic: THypersurface):
    """ Tests the cup pairings on the first pages of the cubic"""
    pages = compute_pages(cubic.filtered_complex(), "cohomology")
    algebra = cubic.cochains()
    print("\n Testing page pairings..")
    for r in (1, 2):
        matrices = page_pairing(pages, r, algebra, 1)
        assert matrices
        for key, pairing in matrices.items():
            assert pairing.partner == (1 - key[0], 1 - key[1])
            assert pairing.nondegenerate
    with pytest.raises(StructureViolationError):
        page_pairing(pages, 0, algebra, 1)


def test_filtration_steps_are_kept(cubic: THypersurface):
    """ Tests that stored filtration steps match a fresh construction"""
    fresh = t_hypersurface(cubic.lift, cubic.eps)
    cell = cubic.X.cells[1][0]
    print("\n Testing stored filtration steps..")
    step = cubic.filtration_step(cell, 1, FiltrationMethod.INTERSECTION)
    assert cubic.filtration_step(cell, 1, FiltrationMethod.INTERSECTION) is step
    for cell in cubic.X.all_cells():
        for k in range(cubic.n + 1):
            for method in FiltrationMethod:
                assert fresh.filtration_step(cell, k, method) == cubic.filtration_step(cell, k, method)
    assert cubic.inclusion_chain_map(1) is cubic.inclusion_chain_map(1)
    sheaf = cubic.cochains().coefficients
    for face in cubic.X.facets(cell):
        assert sheaf.restriction(face, cell) == cubic.cosheaf.extension(cell, face).transpose()


data_first_page = [[viro(3, 1), 0],
                   [viro(3, 2), 4],
                   [cube_triangulation(2, 2), 8],
                   [cube_triangulation(2, 3), 5]]


@pytest.mark.parametrize(('K', 'seed'), data_first_page)
def test_first_page_is_tropical(K: Triangulation, seed: int):
    """ Tests that the first page of the sign complex is the tropical homology of X"""
    lift = real_lift(K)
    H = tropical_homology(lift.T)
    print("\n Testing the first page on", K.polytope.family)
    for eps in [harnack_signs(K)] + random_signs(K, 2, seed):
        hyp = t_hypersurface(lift, eps)
        for side in ("homology", "cohomology"):
            pages = compute_pages(hyp.filtered_complex(), side)
            for (p, q), d in pages[1].dims.items():
                assert d == H.hodge_X(p, q)


def test_pairing_on_bicubic():
    """ Tests the cup pairings of a curve of bidegree (3, 3)"""
    lift = real_lift(cube_triangulation(2, 3))
    hyp = t_hypersurface(lift, harnack_signs(lift.K))
    pages = compute_pages(hyp.filtered_complex(), "cohomology")
    print("\n Testing pairings of a bicubic..")
    assert tropical_homology(lift.T).X == [[1, 4, 0], [4, 1, 0], [0, 0, 0]]
    for r in (1, 2):
        matrices = page_pairing(pages, r, hyp.cochains(), 1)
        assert (0, 0) in matrices and (1, 1) in matrices
        for key, pairing in matrices.items():
            assert pairing.nondegenerate
    assert pages[1].dims[(0, 1)] == 4
    assert pages[1].dims[(1, 0)] == 4
