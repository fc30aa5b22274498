from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional
import json, logging
import numpy as np
from src.F2Linalg import *
from src.Exterior import *
from src.Lattice import *
from src.Polytope import *


class TriangulationError(Exception):
    # Custom exception for invalid triangulations and unreadable triangulation files

    def __init__(self, message):
        """Handles triangulations failing validation or loading

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


@dataclass(frozen = True)
class SignDistribution:
    # One sign per vertex of K, in the lexicographic vertex order of the triangulation

    values: tuple[int, ...]
    label: str = "custom"

    def __getitem__(self, vertex: int) -> int:
        return self.values[vertex]

    def __len__(self) -> int:
        return len(self.values)

    def to_json(self) -> dict:
        return {"signs": list(self.values)}


@dataclass(frozen = True)
class WedgeCovector:
    simplex_id: int
    p: int
    value: int


class Triangulation:
    """ Primitive triangulation of a lattice polytope.

    Vertices are kept in lexicographic order and every simplex is a sorted tuple of
    vertex indices. Simplices of all dimensions get a global id, ordered by
    dimension and then lexicographically; cubical cells and real cells refer to
    simplices through these ids.
    """

    def __init__(self, polytope: LatticePolytope, vertices: list, maximal_simplices: list):
        """ Initializes the triangulation and its full simplex poset

        :param LatticePolytope polytope: The triangulated polytope.
        :param list vertices: Lattice points, in any order.
        :param list maximal_simplices: Tuples of indices into vertices.
        :raises TriangulationError: if a simplex refers to a missing vertex
        """
        points = [tuple(int(x) for x in v) for v in vertices]
        order = sorted(range(len(points)), key = lambda i: points[i])
        new_index = {old: new for new, old in enumerate(order)}
        self.polytope: LatticePolytope = polytope
        self.dim: int = polytope.dim
        self.vertices: tuple[Point, ...] = tuple(points[i] for i in order)
        self.vertex_index: dict = {v: i for i, v in enumerate(self.vertices)}

        maximal = set()
        for simplex in maximal_simplices:
            if any(i < 0 or i >= len(points) for i in simplex):
                logging.error("Triangulation: simplex with unknown vertex " + str(simplex))
                raise TriangulationError(f"simplex {tuple(simplex)} refers to a missing vertex")
            maximal.add(tuple(sorted(new_index[i] for i in simplex)))
        self.maximal: tuple = tuple(sorted(maximal))

        faces: dict[int, set] = {}
        for simplex in self.maximal:
            for size in range(1, len(simplex) + 1):
                for face in combinations(simplex, size):
                    faces.setdefault(size - 1, set()).add(face)
        self.simplices: dict[int, list] = {p: sorted(faces.get(p, ())) for p in range(self.dim + 1)}
        self.simplex_list: list = [s for p in range(self.dim + 1) for s in self.simplices[p]]
        self.simplex_ids: dict = {s: i for i, s in enumerate(self.simplex_list)}
        self._omega_cache: dict = {}

    @staticmethod
    def from_point_simplices(polytope: LatticePolytope, simplices: list) -> "Triangulation":
        """ Builds a triangulation from maximal simplices given by their lattice points."""
        points = sorted({tuple(x) for s in simplices for x in s})
        index = {v: i for i, v in enumerate(points)}
        return Triangulation(polytope, points, [tuple(index[tuple(x)] for x in s) for s in simplices])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.vertices == other.vertices and self.maximal == other.maximal

    __hash__ = object.__hash__

    def simplex(self, sid: int) -> tuple:
        return self.simplex_list[sid]

    def simplex_id(self, simplex) -> int:
        return self.simplex_ids[tuple(sorted(simplex))]

    def simplex_dim(self, sid: int) -> int:
        return len(self.simplex_list[sid]) - 1

    def points(self, sid: int) -> list:
        return [self.vertices[i] for i in self.simplex_list[sid]]

    def faces_of(self, sid: int) -> list:
        """ Ids of all faces of a simplex, itself included."""
        simplex = self.simplex_list[sid]
        out = []
        for size in range(1, len(simplex) + 1):
            for face in combinations(simplex, size):
                out.append(self.simplex_ids[face])
        return sorted(out)

    def edges(self) -> list:
        return [self.simplex_ids[s] for s in self.simplices.get(1, [])]

    def f_vector(self) -> list:
        return [len(self.simplices[p]) for p in range(self.dim + 1)]

    def stats(self) -> dict:
        return {"dim": self.dim, "vertices": len(self.vertices), "maximal_simplices": len(self.maximal),
                "f_vector": self.f_vector()}

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices],
                "maximal_simplices": [list(s) for s in self.maximal], "polytope": self.polytope.to_json()}

    def __str__(self) -> str:
        return f"Triangulation of {self.polytope.family} with {len(self.maximal)} maximal simplices"


def _edge_matrix(points: list) -> np.ndarray:
    base = np.array(points[0], dtype = object)
    return np.array([np.array(x, dtype = object) - base for x in points[1:]], dtype = object)


def validate(K: Triangulation) -> Verdict:
    """ Checks that K is a primitive triangulation of its polytope.

    Integrality, primitivity and covering are checked directly. The face-to-face
    property is checked as a pseudomanifold condition: every (n-1)-face in the
    interior of P lies in exactly two maximal simplices, on opposite sides, and
    every (n-1)-face on the boundary lies in exactly one. Together with the volume
    count this forces the simplices to tile P.

    :param Triangulation K: The triangulation to check.
    :return: Verdict with the offending simplex or simplex pair as witness
    :rtype: Verdict
    """
    P, n = K.polytope, K.dim
    for v in K.vertices:
        if len(v) != n or not P.contains(v):
            return Verdict(False, f"vertex {v} is not a lattice point of {P.family}", (v,))

    total = 0
    for simplex in K.maximal:
        points = [K.vertices[i] for i in simplex]
        if len(simplex) != n + 1:
            return Verdict(False, f"maximal simplex {simplex} has {len(simplex)} vertices", (simplex,))
        volume = abs(determinant(_edge_matrix(points)))
        if volume != 1:
            return Verdict(False, f"simplex {simplex} has normalized volume {volume}", (simplex,))
        total += volume
    expected = P.normalized_volume()
    if total != expected:
        return Verdict(False, f"simplices cover volume {total}, polytope has {expected}", ())

    ridges: dict = {}
    for simplex in K.maximal:
        for k in range(len(simplex)):
            ridge = simplex[:k] + simplex[k + 1:]
            ridges.setdefault(ridge, []).append((simplex, simplex[k]))
    for ridge, holders in sorted(ridges.items()):
        points = [K.vertices[i] for i in ridge]
        on_boundary = bool(P.tight_facets(points))
        if on_boundary:
            if len(holders) != 1:
                return Verdict(False, f"boundary face {ridge} lies in {len(holders)} simplices",
                               tuple(h[0] for h in holders[:2]))
            continue
        if len(holders) != 2:
            return Verdict(False, f"interior face {ridge} lies in {len(holders)} simplices",
                           tuple(h[0] for h in holders[:2]))
        sides = []
        for simplex, apex in holders:
            sides.append(determinant(_edge_matrix(points + [K.vertices[apex]])) > 0)
        if sides[0] == sides[1]:
            return Verdict(False, f"simplices {holders[0][0]} and {holders[1][0]} overlap across {ridge}",
                           (holders[0][0], holders[1][0]))
    return Verdict(True)


def trivial_triangulation(P: LatticePolytope) -> Triangulation:
    return Triangulation(P, P.vertices, [tuple(range(len(P.vertices)))])


def _simplex_params(K: Triangulation) -> tuple:
    kind, params = parse_family(K.polytope.family)
    if kind != PolytopeFamily.SIMPLEX:
        logging.error("plus: triangulation is not of a simplex " + K.polytope.family)
        raise InvalidParameterError(f"expected a triangulated simplex, got {K.polytope.family}")
    return params


def plus(K: Triangulation, L: Triangulation) -> Triangulation:
    """ The triangulation K + L of simplex(n, d+1).

    Above x_n = 1 it is K translated by e_n; on x_n = 0 it is L. The slab in
    between is filled with the joins of the i-simplices of K lying in the face
    spanned by 0, d e_1, ..., d e_i (lifted to x_n = 1) with the (n-1-i)-simplices
    of L lying in the face spanned by (d+1) e_i, ..., (d+1) e_(n-1), e_0 = 0.

    :param Triangulation K: Triangulation of simplex(n, d).
    :param Triangulation L: Triangulation of simplex(n-1, d+1).
    :return: Triangulation of simplex(n, d+1)
    :rtype: Triangulation
    :raises InvalidParameterError: if the sizes do not match
    """
    n, d = _simplex_params(K)
    m, e = _simplex_params(L)
    if n < 2 or m != n - 1 or e != d + 1:
        logging.error(f"plus: size mismatch simplex({n},{d}) and simplex({m},{e})")
        raise InvalidParameterError(f"cannot glue simplex({n},{d}) with simplex({m},{e})")

    def up(x):
        return x[:-1] + (x[-1] + 1,)

    maximal = [[up(K.vertices[i]) for i in s] for s in K.maximal]
    for i in range(n):
        tops = [s for s in K.simplices[i]
                if all(K.vertices[v][c] == 0 for v in s for c in range(i, n))]
        bottoms = [s for s in L.simplices[n - 1 - i]
                   if i == 0 or (all(L.vertices[v][c] == 0 for v in s for c in range(i - 1))
                   and all(sum(L.vertices[v]) == d + 1 for v in s))]
        for top in tops:
            for bottom in bottoms:
                maximal.append([up(K.vertices[v]) for v in top] + [L.vertices[v] + (0,) for v in bottom])
    return Triangulation.from_point_simplices(simplex(n, d + 1), maximal)


@lru_cache(maxsize = None)
def viro(n: int, d: int) -> Triangulation:
    """ The Viro triangulation of simplex(n, d), built by viro(n, d-1) + viro(n-1, d).

    :param int n: Dimension.
    :param int d: Degree.
    :return: Primitive triangulation with d^n maximal simplices
    :rtype: Triangulation
    :raises InvalidParameterError: if n or d is below 1
    """
    P = simplex(n, d)
    if d == 1:
        return trivial_triangulation(P)
    if n == 1:
        return Triangulation(P, [(i,) for i in range(d + 1)], [(i, i + 1) for i in range(d)])
    return plus(viro(n, d - 1), viro(n - 1, d))


def heredity_pullback(V: Triangulation, d: int) -> Triangulation:
    """ Restricts V to the facet x_1 + ... + x_n = d and pulls it back to simplex(n-1, d).

    The pull-back map sends 0 to d e_1 and d e_i to d e_(i+1).
    """
    n = V.dim
    if n < 2:
        logging.error("heredity_pullback: needs dimension at least 2")
        raise InvalidParameterError("heredity pull-back needs n >= 2")
    on_facet = [s for s in V.simplices[n - 1] if all(sum(V.vertices[v]) == d for v in s)]
    maximal = [[V.vertices[v][1:] for v in s] for s in on_facet]
    return Triangulation.from_point_simplices(simplex(n - 1, d), maximal)


def prism_triangulation(points: list) -> list:
    """ The canonical triangulation of simplex x [0, 1], vertices taken in lexicographic order.

    :param list points: Vertices of a simplex.
    :return: n+1 simplices, the i-th joining [v_0..v_i] x {1} with [v_i..v_n] x {0}
    :rtype: list
    """
    points = sorted(tuple(p) for p in points)
    out = []
    for i in range(len(points)):
        out.append([p + (1,) for p in points[:i + 1]] + [p + (0,) for p in points[i:]])
    return out


def _staircases(a: int, b: int) -> list:
    # monotone lattice paths from (0, 0) to (a, b)
    out = []
    for ups in combinations(range(a + b), a):
        i = j = 0
        path = [(0, 0)]
        for step in range(a + b):
            if step in ups:
                i += 1
            else:
                j += 1
            path.append((i, j))
        out.append(path)
    return out


def staircase_product(K1: Triangulation, K2: Triangulation,
                      polytope: Optional[LatticePolytope] = None) -> Triangulation:
    """ Staircase triangulation of the product of two triangulated polytopes.

    Each product of maximal simplices is cut along the monotone lattice paths over
    their sorted vertex lists; the global vertex orders make the pieces agree on
    common faces.

    :param Triangulation K1: First factor.
    :param Triangulation K2: Second factor.
    :param LatticePolytope polytope: The product polytope, built from the factors when omitted.
    :return: Triangulation of the product
    :rtype: Triangulation
    """
    if polytope is None:
        P1, P2 = K1.polytope, K2.polytope
        inequalities = [(a + (0,) * P2.dim, b) for a, b in P1.inequalities]
        inequalities += [((0,) * P1.dim + a, b) for a, b in P2.inequalities]
        polytope = LatticePolytope(P1.dim + P2.dim, [u + w for u in P1.vertices for w in P2.vertices],
                                   inequalities, f"{P1.family}x{P2.family}")
    paths = _staircases(K1.dim, K2.dim)
    maximal = []
    for A in K1.maximal:
        for B in K2.maximal:
            for path in paths:
                maximal.append([K1.vertices[A[i]] + K2.vertices[B[j]] for i, j in path])
    return Triangulation.from_point_simplices(polytope, maximal)


def cube_triangulation(n: int, d: int) -> Triangulation:
    P = cube(n, d)
    K = viro(1, d)
    for _ in range(n - 1):
        K = staircase_product(K, viro(1, d))
    return Triangulation(P, K.vertices, K.maximal)


def product_triangulation(n1: int, d1: int, n2: int, d2: int) -> Triangulation:
    return staircase_product(viro(n1, d1), viro(n2, d2), product(n1, d1, n2, d2))


def builtin_triangulation(family: str) -> Triangulation:
    """ Default triangulation of a built-in polytope family.

    :param str family: A family label as accepted by build_polytope.
    :return: viro(n, d), cube_triangulation(n, d) or product_triangulation(...)
    :rtype: Triangulation
    """
    kind, params = parse_family(family)
    build_polytope(family)
    if kind == PolytopeFamily.SIMPLEX:
        return viro(*params)
    if kind == PolytopeFamily.CUBE:
        return cube_triangulation(*params)
    return product_triangulation(*params)


def omega(K: Triangulation, simplex_id: int) -> WedgeCovector:
    """ Generator of the line of p-th wedges of the tangent lattice of a simplex, mod 2.

    :param Triangulation K: The triangulation.
    :param int simplex_id: Global id of a p-simplex.
    :return: The p-form as a packed vector over the p-subsets of coordinates
    :rtype: WedgeCovector
    :raises TriangulationError: if the simplex is not primitive
    """
    if simplex_id in K._omega_cache:
        return K._omega_cache[simplex_id]
    points = K.points(simplex_id)
    p = len(points) - 1
    if p > 0:
        diffs = _edge_matrix(points)
        if index_in_saturation(diffs.T) != 1:
            logging.error("omega: non-primitive simplex " + str(K.simplex(simplex_id)))
            raise TriangulationError(f"simplex {K.simplex(simplex_id)} is not primitive")
        vectors = []
        for row in diffs:
            vec = 0
            for c, x in enumerate(row):
                if x % 2:
                    vec |= 1 << c
            vectors.append(vec)
        value = wedge(vectors, K.dim)
    else:
        value = 1
    result = WedgeCovector(simplex_id, p, value)
    K._omega_cache[simplex_id] = result
    return result


MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """ One splitmix64 output for the state x (already advanced by the caller)."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def signs_from_seed(K: Triangulation, seed: int) -> SignDistribution:
    # vertex i takes the low bit of splitmix64(seed + (i + 1) * gamma)
    values = tuple(splitmix64(seed + (i + 1) * GOLDEN_GAMMA) & 1 for i in range(len(K.vertices)))
    return SignDistribution(values, f"seed:{seed}")


def random_signs(K: Triangulation, count: int, seed: int) -> list:
    """ count reproducible sign distributions, the k-th drawn from sub-seed splitmix64(seed + k * gamma)."""
    return [signs_from_seed(K, splitmix64(seed + k * GOLDEN_GAMMA)) for k in range(count)]


def harnack_signs(K: Triangulation) -> SignDistribution:
    values = []
    for v in K.vertices:
        sign = 1
        for x in v:
            sign &= x & 1
        values.append(sign)
    return SignDistribution(tuple(values), "harnack")


def zero_signs(K: Triangulation) -> SignDistribution:
    return SignDistribution((0,) * len(K.vertices), "zero")


def signs_from_json(K: Triangulation, data: dict) -> SignDistribution:
    """ Reads {"signs": [...]} or {"random_seed": N}.

    :raises TriangulationError: if the sign list does not match the vertex count
    """
    if "random_seed" in data:
        return signs_from_seed(K, int(data["random_seed"]))
    values = tuple(int(x) & 1 for x in data.get("signs", []))
    if len(values) != len(K.vertices):
        logging.error("signs_from_json: wrong number of signs")
        raise TriangulationError(f"expected {len(K.vertices)} signs, got {len(values)}")
    return SignDistribution(values, "file")


def load_signs(K: Triangulation, source: str) -> SignDistribution:
    """ Resolves a sign source: harnack, zero, seed:N or a JSON file path."""
    if source == "harnack":
        return harnack_signs(K)
    if source == "zero":
        return zero_signs(K)
    if source.startswith("seed:"):
        return signs_from_seed(K, int(source[5:]))
    try:
        with open(source, "r") as file:
            data = json.load(file)
    except (OSError, ValueError) as e:
        logging.error("load_signs: cannot read " + source)
        raise TriangulationError(f"cannot read signs from {source}: {e}")
    signs = signs_from_json(K, data)
    return SignDistribution(signs.values, source)


def triangulation_from_json(data: dict) -> Triangulation:
    """ Builds and validates a triangulation from its JSON form.

    :param dict data: {"dim", "vertices", "maximal_simplices", "polytope"}.
    :return: The validated triangulation
    :rtype: Triangulation
    :raises TriangulationError: if the data is malformed or fails validation
    """
    try:
        P = polytope_from_json(data["polytope"])
        K = Triangulation(P, data["vertices"], [tuple(s) for s in data["maximal_simplices"]])
    except KeyError as e:
        logging.error("triangulation_from_json: missing field " + str(e))
        raise TriangulationError(f"triangulation file is missing the field {e}")
    if K.dim != data.get("dim", K.dim):
        logging.error("triangulation_from_json: dimension mismatch")
        raise TriangulationError(f"dim {data['dim']} does not match the polytope")
    verdict = validate(K)
    if not verdict.ok:
        logging.error("triangulation_from_json: " + verdict.reason)
        raise TriangulationError(verdict.reason)
    return K


def load_triangulation(path: str) -> Triangulation:
    try:
        with open(path, "r") as file:
            data = json.load(file)
    except (OSError, ValueError) as e:
        logging.error("load_triangulation: cannot read " + path)
        raise TriangulationError(f"cannot read triangulation from {path}: {e}")
    return triangulation_from_json(data)


def save_triangulation(K: Triangulation, path: str) -> None:
    with open(path, "w") as file:
        json.dump(K.to_json(), file, sort_keys = True)
