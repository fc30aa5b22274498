import pytest
from src.Invariants import *


@pytest.fixture(scope = "module")
def cubic_analysis() -> PatchworkAnalysis:
    return PatchworkAnalysis(viro(2, 3), viro = True)


@pytest.fixture(scope = "module")
def conic_analysis() -> PatchworkAnalysis:
    return PatchworkAnalysis(viro(2, 2), viro = True)


@pytest.fixture(scope = "module")
def quadric_analysis() -> PatchworkAnalysis:
    return PatchworkAnalysis(viro(3, 2), viro = True)


@pytest.fixture(scope = "module")
def bicubic_analysis() -> PatchworkAnalysis:
    return PatchworkAnalysis(cube_triangulation(2, 3))


data_iota = [[viro(1, 1), 0],
             [viro(2, 1), 1],
             [viro(3, 1), 2],
             [cube_triangulation(2, 1), 0],
             [product_triangulation(1, 1, 1, 1), 0],
             [product_triangulation(2, 1, 1, 1), 1],
             [product_triangulation(1, 1, 2, 1), 1]]


@pytest.mark.parametrize(('K', 'value'), data_iota)
def test_iota_space(K: Triangulation, value: int):
    """ Tests iota of the real part of simplices, squares and products"""
    ring = rp_cohomology_ring(real_lift(K))
    print("\n Testing iota of", K.polytope.family)
    assert iota_space(ring) == value
    assert iota(ring, 0) == -1


def test_analysis(cubic_analysis: PatchworkAnalysis):
    """ Tests the sign independent part of the analysis"""
    print("\n Testing the analysis of viro(2, 3)..")
    assert cubic_analysis.odd_projective()
    assert cubic_analysis.iota_degree == 1
    assert cubic_analysis.iota_P == 1
    for verdict in cubic_analysis.verdicts.values():
        assert verdict.ok


def test_harnack_cubic_record(cubic_analysis: PatchworkAnalysis):
    """ Tests the invariants of the Harnack cubic"""
    record = cubic_analysis.verify(harnack_signs(cubic_analysis.K))
    print("\n Testing the Harnack cubic record..")
    assert record.betti_RX == [2, 2]
    assert record.betti_RP == [1, 1, 1]
    assert record.tropical_table == [[1, 1, 0], [1, 1, 0], [0, 0, 0]]
    assert record.ell == 1
    assert record.r_index <= 1
    assert record.euler_characteristic == 0
    assert record.conjecture_holds
    assert not record.counterexample
    assert "mod4_congruence" in record.skipped
    assert "odd_degree_degeneration" in record.verdicts
    assert "viro_degeneration" in record.verdicts


def test_record_json(cubic_analysis: PatchworkAnalysis):
    """ Tests the JSON form of a record"""
    record = verify(cubic_analysis, harnack_signs(cubic_analysis.K))
    print("\n Testing record JSON..")
    both = record.to_json()
    assert both["signs"] == "harnack"
    assert both["counterexample"] is False
    assert len(both["homology_pages"]) == 4
    assert len(both["cohomology_pages"]) == 4
    homology = record.to_json(side = "homology")
    assert "cohomology_pages" not in homology
    bare = record.to_json(side = None)
    assert "homology_pages" not in bare and "cohomology_pages" not in bare
    assert bare["verdicts"]["structure"] == {"ok": True, "reason": "", "witness": []}


def test_counterexample_flag():
    """ Tests that any failing verdict marks a counterexample"""
    record = InvariantRecord("custom", (0,), [1, 1], [1, 1, 1], [], 0, 2, 0, 0, 0, (0, 0), [], True)
    print("\n Testing counterexample flag..")
    assert not record.counterexample
    record.verdicts["structure"] = Verdict(False, "off the lines", (2, 1, 0))
    assert record.counterexample
    assert verdict_to_json(record.verdicts["structure"]) == {"ok": False, "reason": "off the lines",
                                                             "witness": [2, 1, 0]}


def test_injectivity_of_conics(conic_analysis: PatchworkAnalysis):
    """ Tests that H^1 of RP^2 never injects into a conic"""
    print("\n Testing injectivity on conics..")
    for eps in random_signs(conic_analysis.K, 3, 11):
        hyp = conic_analysis.hypersurface(eps)
        assert injectivity(hyp) == [True, False]
        assert rank_ell(hyp) == 0


def test_sweep(conic_analysis: PatchworkAnalysis):
    """ Tests a small sweep in one process"""
    signs = random_signs(conic_analysis.K, 3, 5)
    records = sweep(conic_analysis, signs)
    stats = sweep_statistics(records, 2)
    print("\n Testing sweep..")
    assert [record.signs for record in records] == [eps.label for eps in signs]
    assert stats["count"] == 3
    assert stats["ell"] == {"0": 3}
    assert stats["betti_RX"] == {"1,1": 3}
    assert stats["counterexamples"] == 0
    assert stats["below_conjectured_rank"] == 0


def test_sweep_with_workers(conic_analysis: PatchworkAnalysis):
    """ Tests that worker processes give the same records"""
    signs = random_signs(conic_analysis.K, 2, 9)
    print("\n Testing sweep with workers..")
    serial = sweep(conic_analysis, signs, jobs = 1)
    parallel = sweep(conic_analysis, signs, jobs = 2)
    assert [r.to_json(side = None) for r in serial] == [r.to_json(side = None) for r in parallel]


def test_harnack_quadric_record(quadric_analysis: PatchworkAnalysis):
    """ Tests the invariants of the Harnack quadric surface"""
    hyp = quadric_analysis.hypersurface(harnack_signs(quadric_analysis.K))
    record = verify(quadric_analysis, harnack_signs(quadric_analysis.K))
    print("\n Testing the Harnack quadric record..")
    assert record.tropical_table == [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]
    assert record.betti_RX == [1, 2, 1]
    assert record.r_index <= 2
    assert record.ell >= 1
    for name in ("structure", "symmetry", "page_pairing", "first_page_tropical", "mod4_congruence",
                 "viro_degeneration"):
        assert record.verdicts[name].ok
    assert hyp.filtration_equality().ok
    assert hyp.graded_pieces_check(FiltrationMethod.EDGE_SUMS).ok
    assert not record.counterexample


data_random = [["quadric_analysis", 3, 21],
               ["bicubic_analysis", 3, 22]]


@pytest.mark.parametrize(('name', 'count', 'seed'), data_random)
def test_random_signs_pass(name: str, count: int, seed: int, request):
    """ Tests that random sign distributions give no failing verdict"""
    analysis = request.getfixturevalue(name)
    print("\n Testing random signs on", analysis.K.polytope.family)
    for eps in random_signs(analysis.K, count, seed):
        record = verify(analysis, eps)
        assert not record.counterexample, [k for k, v in record.verdicts.items() if not v.ok]
        assert ("mod4_congruence" in record.verdicts) == (analysis.n == 3)


def test_product_record():
    """ Tests a hypersurface of bidegree (1, 1) in the product of a plane and a line"""
    analysis = PatchworkAnalysis(product_triangulation(2, 1, 1, 1))
    record = verify(analysis, signs_from_seed(analysis.K, 3))
    print("\n Testing the product record..")
    assert analysis.iota_P == 1
    assert analysis.iota_degree == 1
    assert record.tropical_table == [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]
    assert "odd_degree_degeneration" in record.skipped
    assert not record.counterexample


def test_cubic_surfaces():
    """ Tests the Harnack cubic surface and a random one"""
    analysis = PatchworkAnalysis(viro(3, 3), viro = True)
    record = verify(analysis, harnack_signs(analysis.K))
    print("\n Testing cubic surfaces..")
    assert record.tropical_table == [[1, 0, 0, 0], [0, 7, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]
    assert record.betti_RX == [1, 7, 1]
    assert record.r_index <= 2
    assert record.verdicts["odd_degree_degeneration"].ok
    assert not record.counterexample
    record = verify(analysis, signs_from_seed(analysis.K, 5))
    assert record.verdicts["odd_degree_degeneration"].ok
    assert record.verdicts["mod4_congruence"].ok
    assert not record.counterexample


@pytest.mark.slow
def test_quadric_threefolds():
    """ Tests that page 2 vanishes exactly when H^1 of RP^4 injects, on quadric threefolds"""
    analysis = PatchworkAnalysis(viro(4, 2), viro = True)
    print("\n Testing quadric threefolds..")
    for eps in [harnack_signs(analysis.K)] + random_signs(analysis.K, 2, 31):
        record = verify(analysis, eps)
        if sum(record.betti_RX) == 0:
            continue
        assert record.cohomology_pages[2].is_degenerate() == (record.ell >= 1)
        assert record.verdicts["vanishing_criterion"].ok
        assert not record.counterexample


@pytest.mark.slow
def test_harnack_quartic_surface():
    """ Tests the Harnack quartic surface"""
    analysis = PatchworkAnalysis(viro(3, 4), viro = True)
    record = verify(analysis, harnack_signs(analysis.K))
    print("\n Testing the Harnack quartic surface..")
    assert record.tropical_table == [[1, 0, 1, 0], [0, 20, 0, 0], [1, 0, 1, 0], [0, 0, 0, 0]]
    assert record.betti_RX == [2, 20, 2]
    assert not record.counterexample


@pytest.mark.slow
def test_cube_surfaces():
    """ Tests random surfaces of tridegree (2, 2, 2)"""
    analysis = PatchworkAnalysis(cube_triangulation(3, 2))
    print("\n Testing surfaces in a cube..")
    for eps in random_signs(analysis.K, 2, 41):
        record = verify(analysis, eps)
        assert record.verdicts["mod4_congruence"].ok
        assert not record.counterexample
