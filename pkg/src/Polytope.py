from enum import Enum
from dataclasses import dataclass
from itertools import combinations
from typing import Optional
import logging, math, re
import numpy as np
from src.F2Linalg import *
from src.Lattice import *


class PolytopeFamily(Enum):
    # Built-in families of smooth lattice polytopes

    SIMPLEX: str = 'simplex'
    CUBE: str = 'cube'
    PRODUCT: str = 'product'


class InvalidParameterError(Exception):
    # Custom exception for out-of-range construction parameters

    def __init__(self, message):
        """Handles invalid parameters passed to a constructor

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


class GeometryError(Exception):
    # Custom exception for points that do not lie where they should

    def __init__(self, message):
        """Handles geometric precondition failures, such as points outside the polytope

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


@dataclass(frozen = True)
class Verdict:
    # Outcome of a check: never raised, always returned

    ok: bool
    reason: str = ""
    witness: tuple = ()


@dataclass(frozen = True)
class Face:
    vertex_ids: frozenset
    dim: int
    facets: frozenset


Point = tuple[int, ...]


class LatticePolytope:

    def __init__(self, dim: int, vertices: list, inequalities: list, family: str = "custom"):
        """ Initializes a full-dimensional lattice polytope and its face lattice

        :param int dim: Ambient dimension n.
        :param list vertices: Integer points, the vertices of the polytope.
        :param list inequalities: Pairs (normal, offset) meaning normal . x >= offset, one per facet.
        :param str family: Provenance label such as "simplex(2,3)".
        :raises GeometryError: if a vertex violates an inequality or the polytope is not full-dimensional
        """
        self.dim: int = dim
        self.vertices: tuple[Point, ...] = tuple(sorted(tuple(int(x) for x in v) for v in vertices))
        self.inequalities: tuple = tuple((tuple(int(a) for a in normal), int(b)) for normal, b in inequalities)
        self.family: str = family
        self._sed_cache: dict = {}

        for v in self.vertices:
            if len(v) != dim:
                logging.error("LatticePolytope: vertex of wrong length " + str(v))
                raise GeometryError(f"vertex {v} is not in dimension {dim}")
            if not self.contains(v):
                logging.error("LatticePolytope: vertex outside its inequalities " + str(v))
                raise GeometryError(f"vertex {v} violates the facet inequalities")

        self.faces: list[Face] = self.__enumerate_faces()
        if self.faces[-1].dim != dim:
            logging.error("LatticePolytope: not full-dimensional")
            raise GeometryError(f"polytope {family} is not full-dimensional")
        self._face_by_vertices = {f.vertex_ids: f for f in self.faces}

    def __value(self, k: int, point) -> int:
        normal, offset = self.inequalities[k]
        return sum(a * x for a, x in zip(normal, point)) - offset

    def contains(self, point) -> bool:
        return all(self.__value(k, point) >= 0 for k in range(len(self.inequalities)))

    def tight_facets(self, points) -> frozenset:
        """ Facet inequalities attaining equality on every given point."""
        return frozenset(k for k in range(len(self.inequalities))
                         if all(self.__value(k, p) == 0 for p in points))

    def __affine_dim(self, ids) -> int:
        ids = sorted(ids)
        if len(ids) <= 1:
            return 0
        base = np.array(self.vertices[ids[0]], dtype = object)
        diffs = np.array([np.array(self.vertices[i], dtype = object) - base for i in ids[1:]], dtype = object).T
        return rank(diffs)

    def __enumerate_faces(self) -> list:
        faces = {}
        all_ids = frozenset(range(len(self.vertices)))
        for size in range(len(self.inequalities) + 1):
            for combo in combinations(range(len(self.inequalities)), size):
                ids = frozenset(i for i in all_ids
                                if all(self.__value(k, self.vertices[i]) == 0 for k in combo))
                if not ids or ids in faces:
                    continue
                tight = self.tight_facets([self.vertices[i] for i in ids])
                faces[ids] = Face(ids, self.__affine_dim(ids), tight)
        return sorted(faces.values(), key = lambda f: (f.dim, sorted(f.vertex_ids)))

    def face_counts(self) -> dict:
        counts: dict = {}
        for f in self.faces:
            counts[f.dim] = counts.get(f.dim, 0) + 1
        return counts

    def smallest_face(self, points) -> Face:
        """ The face containing the given points in its relative interior hull.

        :param points: Lattice points of the polytope.
        :return: The smallest face containing all the points
        :rtype: Face
        :raises GeometryError: if a point is outside the polytope
        """
        points = [tuple(p) for p in points]
        for p in points:
            if len(p) != self.dim or not self.contains(p):
                logging.error("smallest_face: point outside the polytope " + str(p))
                raise GeometryError(f"point {p} is not in the polytope {self.family}")
        tight = self.tight_facets(points)
        ids = frozenset(i for i, v in enumerate(self.vertices)
                        if all(self.__value(k, v) == 0 for k in tight))
        return self._face_by_vertices[ids]

    def tangent_lattice(self, face: Face) -> np.ndarray:
        """ Basis, as columns, of the saturated lattice of the face directions."""
        ids = sorted(face.vertex_ids)
        if len(ids) <= 1:
            return np.zeros((self.dim, 0), dtype = object)
        base = np.array(self.vertices[ids[0]], dtype = object)
        diffs = np.array([np.array(self.vertices[i], dtype = object) - base for i in ids[1:]], dtype = object).T
        return saturation(diffs)

    def sedentarity(self, points) -> Subspace:
        """ Sedentarity space of the smallest face containing the points.

        It is the set of v in F2^n killed mod 2 by every covector of the saturated
        tangent lattice of that face, so dim = n - dim(face) for smooth polytopes.

        :param points: Lattice points of the polytope, usually the vertices of a simplex.
        :return: Subspace of F2^n
        :rtype: Subspace
        """
        face = self.smallest_face(points)
        if face.vertex_ids not in self._sed_cache:
            basis = self.tangent_lattice(face)
            cols = []
            for j in range(self.dim):
                col = 0
                for i in range(basis.shape[1]):
                    if basis[j, i] % 2:
                        col |= 1 << i
                cols.append(col)
            self._sed_cache[face.vertex_ids] = F2Matrix(basis.shape[1], self.dim, tuple(cols)).kernel()
        return self._sed_cache[face.vertex_ids]

    def facets_of(self, face: Face) -> list:
        return [g for g in self.faces if g.dim == face.dim - 1 and g.vertex_ids < face.vertex_ids]

    def pulling_simplices(self, face: Optional[Face] = None) -> list:
        """ Pulling triangulation of a face, each face pulled at its least vertex.

        :param Face face: Face to triangulate, the whole polytope by default.
        :return: List of vertex-index tuples
        :rtype: list
        """
        face = self.faces[-1] if face is None else face
        if face.dim == 0:
            return [tuple(face.vertex_ids)]
        apex = min(face.vertex_ids)
        out = []
        for facet in self.facets_of(face):
            if apex in facet.vertex_ids:
                continue
            for simplex in self.pulling_simplices(facet):
                out.append((apex,) + simplex)
        return out

    def normalized_volume(self) -> int:
        """ n! times the Euclidean volume, an integer for lattice polytopes."""
        total = 0
        for simplex in self.pulling_simplices():
            base = np.array(self.vertices[simplex[0]], dtype = object)
            rows = [np.array(self.vertices[i], dtype = object) - base for i in simplex[1:]]
            total += abs(determinant(np.array(rows, dtype = object)))
        return total

    def smoothness_check(self) -> Verdict:
        """ Checks that primitive facet normals form a Z-basis at every vertex.

        :return: Verdict with the first failing vertex as witness
        :rtype: Verdict
        """
        for v in self.vertices:
            tight = sorted(self.tight_facets([v]))
            if len(tight) != self.dim:
                return Verdict(False, f"vertex {v} lies on {len(tight)} facets", (v,))
            normals = []
            for k in tight:
                normal = self.inequalities[k][0]
                g = 0
                for a in normal:
                    g = math.gcd(g, a)
                normals.append([a // g for a in normal])
            if abs(determinant(np.array(normals, dtype = object))) != 1:
                return Verdict(False, f"facet normals at {v} do not form a basis", (v,))
        return Verdict(True)

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices], "family": self.family}

    def __str__(self) -> str:
        return f"{self.family} in dimension {self.dim} with {len(self.vertices)} vertices"


def _check_params(*params: int) -> None:
    for x in params:
        if not isinstance(x, int) or x < 1:
            logging.error("build_polytope: invalid parameter " + str(x))
            raise InvalidParameterError(f"dimension and size parameters must be integers >= 1, got {x}")


def simplex(n: int, d: int) -> LatticePolytope:
    """ The d-dilate of the unimodular n-simplex, convex hull of 0, d e_1, ..., d e_n."""
    _check_params(n, d)
    vertices = [tuple(0 for _ in range(n))]
    for i in range(n):
        vertices.append(tuple(d if j == i else 0 for j in range(n)))
    inequalities = [(tuple(1 if j == i else 0 for j in range(n)), 0) for i in range(n)]
    inequalities.append((tuple(-1 for _ in range(n)), -d))
    return LatticePolytope(n, vertices, inequalities, f"simplex({n},{d})")


def cube(n: int, d: int) -> LatticePolytope:
    _check_params(n, d)
    vertices = []
    for mask in range(1 << n):
        vertices.append(tuple(d if (mask >> i) & 1 else 0 for i in range(n)))
    inequalities = []
    for i in range(n):
        inequalities.append((tuple(1 if j == i else 0 for j in range(n)), 0))
        inequalities.append((tuple(-1 if j == i else 0 for j in range(n)), -d))
    return LatticePolytope(n, vertices, inequalities, f"cube({n},{d})")


def product(n1: int, d1: int, n2: int, d2: int) -> LatticePolytope:
    """ Product of simplex(n1, d1) and simplex(n2, d2) in dimension n1 + n2.

    :return: The product polytope
    :rtype: LatticePolytope
    """
    _check_params(n1, d1, n2, d2)
    first, second = simplex(n1, d1), simplex(n2, d2)
    vertices = [a + b for a in first.vertices for b in second.vertices]
    inequalities = [(normal + (0,) * n2, b) for normal, b in first.inequalities]
    inequalities += [((0,) * n1 + normal, b) for normal, b in second.inequalities]
    return LatticePolytope(n1 + n2, vertices, inequalities, f"product({n1},{d1},{n2},{d2})")


_FAMILY_PATTERN = re.compile(r"^\s*(simplex|cube|product)\s*\(([\d\s,]*)\)\s*$")


def parse_family(family: str) -> tuple:
    """ Splits a family label such as "cube(2,3)" into (PolytopeFamily, params).

    :raises InvalidParameterError: if the label is malformed
    """
    match = _FAMILY_PATTERN.match(family)
    if match is None:
        logging.error("parse_family: unknown family " + family)
        raise InvalidParameterError(f"unknown polytope family '{family}'")
    params = tuple(int(x) for x in match.group(2).split(",") if x.strip())
    kind = PolytopeFamily(match.group(1))
    expected = 4 if kind == PolytopeFamily.PRODUCT else 2
    if len(params) != expected:
        logging.error("parse_family: wrong parameter count " + family)
        raise InvalidParameterError(f"family {kind.value} takes {expected} parameters, got {len(params)}")
    return kind, params


def build_polytope(family: str) -> LatticePolytope:
    """ Builds a member of one of the built-in families.

    :param str family: "simplex(n,d)", "cube(n,d)" or "product(n1,d1,n2,d2)".
    :return: The polytope with its face lattice
    :rtype: LatticePolytope
    :raises InvalidParameterError: if n or d is below 1 or the label is malformed
    """
    kind, params = parse_family(family)
    if kind == PolytopeFamily.SIMPLEX:
        return simplex(*params)
    if kind == PolytopeFamily.CUBE:
        return cube(*params)
    return product(*params)


def polytope_from_json(data: dict) -> LatticePolytope:
    polytope = build_polytope(data["family"])
    if polytope.dim != data.get("dim", polytope.dim):
        logging.error("polytope_from_json: dimension does not match family")
        raise InvalidParameterError(f"dim {data['dim']} does not match family {data['family']}")
    return polytope


def sedentarity(P: LatticePolytope, point_set) -> Subspace:
    return P.sedentarity(point_set)


def smoothness_check(P: LatticePolytope) -> Verdict:
    return P.smoothness_check()
