from src.Triangulation import *
import json


# A T-curve of bidegree (3, 3) in the torus: one contractible oval and one
# component in the class (1, 1) of the coordinate circles.

FIG_TORUS_TRIANGLES = [
    ((2, 0), (3, 0), (3, 1)), ((2, 0), (3, 1), (2, 1)), ((2, 1), (3, 1), (3, 2)),
    ((2, 1), (3, 2), (3, 3)), ((2, 1), (3, 3), (2, 2)), ((1, 0), (2, 0), (2, 1)),
    ((1, 0), (2, 1), (2, 2)), ((1, 0), (2, 2), (1, 1)), ((0, 0), (1, 0), (1, 1)),
    ((0, 0), (1, 1), (0, 1)), ((0, 1), (1, 1), (1, 2)), ((0, 1), (1, 2), (0, 2)),
    ((0, 2), (1, 2), (0, 3)), ((1, 1), (2, 2), (1, 2)), ((1, 2), (2, 2), (0, 3)),
    ((0, 3), (2, 2), (1, 3)), ((1, 3), (2, 2), (2, 3)), ((2, 3), (2, 2), (3, 3)),
]

FIG_TORUS_SIGNS = {
    (0, 0): 0, (1, 0): 1, (2, 0): 1, (3, 0): 1,
    (0, 1): 0, (1, 1): 0, (2, 1): 1, (3, 1): 1,
    (0, 2): 1, (1, 2): 0, (2, 2): 0, (3, 2): 1,
    (0, 3): 0, (1, 3): 0, (2, 3): 1, (3, 3): 1,
}

FIG_TORUS_BETTI = [2, 2]
FIG_TORUS_CLASSES = [(0, 0), (1, 1)]


def fig_torus_triangulation() -> Triangulation:
    """ The primitive triangulation of cube(2, 3) carrying the sample T-curve

    :return: The triangulation, vertices in lexicographic order
    :rtype: Triangulation
    """
    return Triangulation.from_point_simplices(cube(2, 3), FIG_TORUS_TRIANGLES)


def fig_torus_signs(K: Triangulation) -> SignDistribution:
    return SignDistribution(tuple(FIG_TORUS_SIGNS[v] for v in K.vertices), "fig_torus")


def write_sample_files(triangulation_path: str, signs_path: str) -> None:
    """ Writes the sample triangulation and its signs in the JSON formats read by the CLI

    :param str triangulation_path: Output path of the triangulation.
    :param str signs_path: Output path of the signs.
    :return: None
    """
    K = fig_torus_triangulation()
    save_triangulation(K, triangulation_path)
    with open(signs_path, "w") as file:
        json.dump(fig_torus_signs(K).to_json(), file, sort_keys = True)
    return None
