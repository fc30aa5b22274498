import pytest
import os
from src.SampleData import *


data_viro = [[1, 5], [2, 1], [2, 2], [2, 3], [2, 5], [3, 2], [3, 3]]


@pytest.mark.parametrize(('n', 'd'), data_viro)
def test_viro_is_valid(n: int, d: int):
    """ Tests that Viro triangulations are primitive with d^n maximal simplices"""
    K = viro(n, d)
    verdict = validate(K)
    print("\n Testing", K, verdict.reason)
    assert verdict.ok is True
    assert len(K.maximal) == d ** n
    assert K.polytope.family == f"simplex({n},{d})"


@pytest.mark.parametrize(('n', 'd'), [[2, 2], [2, 3], [3, 2]])
def test_heredity(n: int, d: int):
    """ Tests that viro(n, d) restricted to its last facet is viro(n-1, d)"""
    print("\n Testing heredity of viro", n, d)
    assert heredity_pullback(viro(n, d), d) == viro(n - 1, d)


def test_plus():
    """ Tests the recursion viro(2, 3) = viro(2, 2) + viro(1, 3)"""
    print("\n Testing plus..")
    assert plus(viro(2, 2), viro(1, 3)) == viro(2, 3)
    with pytest.raises(InvalidParameterError):
        plus(viro(2, 2), viro(1, 2))
    with pytest.raises(InvalidParameterError):
        plus(cube_triangulation(2, 1), viro(1, 2))


def test_prism_triangulation():
    """ Tests the canonical triangulation of a triangle times an interval"""
    prism = prism_triangulation([(0, 0), (1, 0), (0, 1)])
    print("\n Testing prism triangulation..")
    assert len(prism) == 3
    assert all(len(simplex) == 4 for simplex in prism)
    assert prism[0] == [(0, 0, 1), (0, 0, 0), (0, 1, 0), (1, 0, 0)]


data_builtin = [["cube(2,3)", 18], ["cube(3,1)", 6], ["product(1,2,1,2)", 8], ["product(2,1,1,1)", 3]]


@pytest.mark.parametrize(('family', 'count'), data_builtin)
def test_builtin_triangulations(family: str, count: int):
    """ Tests the default triangulations of cubes and products"""
    K = builtin_triangulation(family)
    print("\n Testing", K)
    assert validate(K).ok is True
    assert len(K.maximal) == count
    assert K.polytope.family == family


def test_validate_failures():
    """ Tests that non-primitive and incomplete triangulations are rejected"""
    print("\n Testing validation failures..")
    fat = Triangulation(simplex(2, 2), [(0, 0), (2, 0), (0, 1)], [(0, 1, 2)])
    verdict = validate(fat)
    assert verdict.ok is False
    assert "volume 2" in verdict.reason
    K = viro(2, 2)
    holed = Triangulation(K.polytope, K.vertices, K.maximal[1:])
    assert validate(holed).ok is False


def test_omega():
    """ Tests the covectors of primitive simplices"""
    K = viro(2, 2)
    print("\n Testing omega..")
    assert omega(K, K.simplex_id((K.vertex_index[(0, 0)], K.vertex_index[(1, 0)]))).value == 0b01
    assert omega(K, K.simplex_id((K.vertex_index[(1, 0)], K.vertex_index[(0, 1)]))).value == 0b11
    top = K.simplex_id(K.maximal[0])
    assert omega(K, top).p == 2
    assert omega(K, top).value == 1
    fat = Triangulation(simplex(2, 2), [(0, 0), (2, 0), (0, 1)], [(0, 1, 2)])
    with pytest.raises(TriangulationError):
        omega(fat, fat.simplex_id((fat.vertex_index[(0, 0)], fat.vertex_index[(2, 0)])))


def test_harnack_signs():
    """ Tests the Harnack distribution on a segment"""
    signs = harnack_signs(viro(1, 3))
    print("\n Testing harnack signs..")
    assert signs.values == (0, 1, 0, 1)
    assert signs.label == "harnack"
    assert zero_signs(viro(1, 3)).values == (0, 0, 0, 0)


def test_seeded_signs():
    """ Tests that seeded sign distributions are reproducible"""
    K = viro(2, 3)
    print("\n Testing seeded signs..")
    assert signs_from_seed(K, 7) == signs_from_seed(K, 7)
    assert signs_from_seed(K, 7).label == "seed:7"
    batch = random_signs(K, 3, 11)
    assert len(batch) == 3
    assert batch == random_signs(K, 3, 11)
    assert all(len(eps) == len(K.vertices) for eps in batch)
    assert load_signs(K, "seed:7") == signs_from_seed(K, 7)
    assert signs_from_json(K, {"random_seed": 7}).values == signs_from_seed(K, 7).values


def test_signs_from_json():
    """ Tests explicit sign lists and their length check"""
    K = viro(1, 2)
    print("\n Testing signs from json..")
    assert signs_from_json(K, {"signs": [1, 0, 3]}).values == (1, 0, 1)
    with pytest.raises(TriangulationError):
        signs_from_json(K, {"signs": [1, 0]})


@pytest.fixture(scope = "module")
def sample_files():
    tpath, spath = "test_fig_torus.json", "test_fig_torus_signs.json"
    write_sample_files(tpath, spath)
    yield tpath, spath
    # deleting the files after testing
    os.remove(tpath)
    os.remove(spath)


def test_sample_triangulation(sample_files):
    """ Tests the sample torus triangulation and its files"""
    tpath, spath = sample_files
    K = load_triangulation(tpath)
    print("\n Testing sample files..")
    assert K == fig_torus_triangulation()
    assert K.f_vector() == [16, 33, 18]
    assert load_signs(K, spath).values == fig_torus_signs(K).values
    assert load_signs(K, spath).label == spath


def test_shipped_data_files():
    """ Tests that the files under data/ match the sample data"""
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")
    K = load_triangulation(os.path.join(root, "fig_torus.json"))
    print("\n Testing data files..")
    assert K == fig_torus_triangulation()
    assert load_signs(K, os.path.join(root, "fig_torus_signs.json")).values == fig_torus_signs(K).values


def test_load_errors():
    """ Tests unreadable and malformed triangulations"""
    print("\n Testing load errors..")
    with pytest.raises(TriangulationError):
        load_triangulation("no_such_triangulation.json")
    with pytest.raises(TriangulationError):
        triangulation_from_json({"dim": 2, "vertices": [[0, 0]]})
    fat = {"dim": 2, "vertices": [[0, 0], [2, 0], [0, 1]], "maximal_simplices": [[0, 1, 2]],
           "polytope": {"dim": 2, "family": "simplex(2,2)"}}
    with pytest.raises(TriangulationError):
        triangulation_from_json(fat)
    with pytest.raises(TriangulationError):
        load_signs(viro(1, 1), "no_such_signs.json")
