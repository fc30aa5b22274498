from dataclasses import dataclass
from enum import Enum
from typing import Optional
import logging
from src.F2Linalg import *
from src.Exterior import *
from src.Triangulation import *
from src.CubicalComplex import *
from src.Tropical import *
from src.GroupAlgebra import *
from src.Spectral import *


class AssemblyError(Exception):
    # Custom exception for a T-hypersurface complex that fails its structural checks

    def __init__(self, message):
        """Handles failures while assembling the T-hypersurface and its filtration

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


class FiltrationMethod(Enum):
    # Two constructions of the filtration of the sign cosheaf

    INTERSECTION: str = 'intersection'
    EDGE_SUMS: str = 'edge_sums'


@dataclass(frozen = True)
class RealCell:
    # arg is the least representative of its coset of Sed(base), base a simplex id or a cubical cell

    arg: int
    base: object


@dataclass(frozen = True)
class ArgSet:
    cell: tuple
    rank: int
    members: tuple

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, point: int) -> bool:
        return point in self.members

    def complement(self) -> list:
        present = set(self.members)
        return [u for u in range(1 << self.rank) if u not in present]


class RealLift:
    """ The real part RP of the toric variety, as the Delta-complex RK and as folded cubical models.

    Real simplices are pairs (arg, simplex) with arg a canonical representative of
    F2^n / Sed(simplex). The folded models live on the cubical subdivision of K:
    the cosheaf K^RP has the group algebra F2[V] as stalk on a cell with quotient V,
    and its dual O_RP has the functions V -> F2.
    """

    def __init__(self, T: TropicalCoefficients, check: bool = True):
        self.T: TropicalCoefficients = T
        self.K: Triangulation = T.K
        self.n: int = T.n
        labels, dims, self.index = [], [], {}
        for sid in range(len(self.K.simplex_list)):
            free = T.free(sid)
            for u in range(1 << len(free)):
                arg = expand(u, free)
                self.index[(arg, sid)] = len(labels)
                labels.append(RealCell(arg, sid))
                dims.append(self.K.simplex_dim(sid))
        facets = []
        for cell in labels:
            simplex = self.K.simplex(cell.base)
            fs = []
            if len(simplex) > 1:
                for k in range(len(simplex)):
                    f = self.K.simplex_ids[simplex[:k] + simplex[k + 1:]]
                    fs.append(self.index[(T.sed(f).reduce(cell.arg), f)])
            facets.append(fs)
        self.poset: SimplexPoset = SimplexPoset(dims, facets, labels)
        self._cache: dict = {}
        self._extensions: dict = {}
        if check:
            self.check_cocycle()

    def omega_value(self, element: int) -> int:
        """ omega_RX on a real edge: omega(|e|) evaluated at arg(e)."""
        cell = self.poset.labels[element]
        return parity(omega(self.K, cell.base).value & cell.arg)

    def check_cocycle(self) -> None:
        """ Checks that every omega(e) vanishes on Sed(e) and that omega_RX is closed.

        :raises InternalConsistencyError: on the first failing edge or triangle
        """
        for e in self.K.edges():
            if not descends(omega(self.K, e).value, 1, self.T.sed(e), self.n):
                logging.error("check_cocycle: omega does not vanish on Sed of " + str(self.K.simplex(e)))
                raise InternalConsistencyError(f"omega of edge {self.K.simplex(e)} does not vanish on its sedentarity")
        for t in self.poset.elements(2):
            if sum(self.omega_value(e) for e in self.poset.facets[t]) % 2:
                logging.error("check_cocycle: d omega != 0 on " + str(self.poset.labels[t]))
                raise InternalConsistencyError(f"omega_RX is not closed on {self.poset.labels[t]}")

    def real_simplices(self, dim: int) -> list:
        return [self.poset.labels[i] for i in self.poset.elements(dim)]

    def simplicial_complex(self) -> ChainComplexF2:
        if "simplicial" not in self._cache:
            self._cache["simplicial"] = simplicial_chain_complex(self.poset)
        return self._cache["simplicial"]

    def simplicial_cochains(self) -> ChainComplexF2:
        if "simplicial_dual" not in self._cache:
            self._cache["simplicial_dual"] = self.simplicial_complex().transpose()
        return self._cache["simplicial_dual"]

    def betti_numbers(self) -> list:
        return self.simplicial_complex().betti_numbers()

    def omega_cochain(self) -> int:
        out = 0
        for i, e in enumerate(self.poset.elements(1)):
            if self.omega_value(e):
                out |= 1 << i
        return out

    def cubical_complex(self) -> CubicalComplex:
        """ Cubical subdivision of RK itself, the direct model of RP."""
        if "cubical" not in self._cache:
            self._cache["cubical"] = CubicalComplex(self.poset)
        return self._cache["cubical"]

    def group_extension(self, big: int, small: int) -> F2Matrix:
        # x^u -> x^(pi u) from F2[V_big] to F2[V_small]
        key = (big, small)
        if key not in self._extensions:
            proj = self.T.quotient_map(big, small)
            cols = tuple(1 << proj.apply(u) for u in range(1 << proj.n_cols))
            self._extensions[key] = F2Matrix(1 << proj.n_rows, len(cols), cols)
        return self._extensions[key]

    def chains(self) -> CellularChainComplex:
        if "chains" not in self._cache:
            self._cache["chains"] = complex_with_coefficients(self.T.cells, RealCosheaf(self), check = self.T.check)
        return self._cache["chains"]

    def cochains(self) -> CellularChainComplex:
        if "cochains" not in self._cache:
            self._cache["cochains"] = complex_with_coefficients(self.T.cells, RealSheaf(self), check = self.T.check)
        return self._cache["cochains"]

    def fundamental_chain(self) -> int:
        return (1 << self.chains().dims[self.n]) - 1

    def facet_cycle(self, i: int) -> Optional[int]:
        """ The lift of the facet {x_i = 0} with all its arguments, as a folded (n-1)-chain.

        :param int i: Coordinate index.
        :return: The chain, or None when no facet of P lies in {x_i = 0}
        :rtype: Optional[int]
        """
        C = self.chains()
        q = self.n - 1
        chain = 0
        for cell in self.T.cells.cells[q]:
            a, b = cell
            if self.K.simplex_dim(a) != 0:
                continue
            if all(self.K.vertices[v][i] == 0 for v in self.K.simplex(b)):
                chain |= ((1 << C.coefficients.stalk_dim(cell)) - 1) << C.offsets[q][cell]
        return chain or None

    def subdivision_map(self, q: int) -> F2Matrix:
        """ Cochain map from folded cubical q-cochains to simplicial q-cochains of RK.

        A real simplex (v, b) receives the sum over the vertices w of b of phi(w; b)
        evaluated at v.
        """
        C = self.cochains()
        simplices = self.poset.elements(q)
        row = {e: i for i, e in enumerate(simplices)}
        cols = [0] * C.dims[q]
        for cell in self.T.cells.cells.get(q, []):
            a, b = cell
            if self.K.simplex_dim(a) != 0:
                continue
            free = self.T.free(b)
            offset = C.offsets[q][cell]
            for u in range(1 << len(free)):
                cols[offset + u] = 1 << row[self.index[(expand(u, free), b)]]
        return F2Matrix(len(simplices), len(cols), tuple(cols))

    def alexander_whitney(self, alpha: int, k: int, beta: int, l: int) -> int:
        """ Simplicial cup product on RK, front k-face times back l-face."""
        position = {}
        for q in {k, l, k + l}:
            position[q] = {e: i for i, e in enumerate(self.poset.elements(q))}
        out = 0
        for i, e in enumerate(self.poset.elements(k + l)):
            cell = self.poset.labels[e]
            simplex = self.K.simplex(cell.base)
            front = self.K.simplex_ids[simplex[:k + 1]]
            back = self.K.simplex_ids[simplex[k:]]
            fi = self.index[(self.T.sed(front).reduce(cell.arg), front)]
            bi = self.index[(self.T.sed(back).reduce(cell.arg), back)]
            if (alpha >> position[k][fi]) & 1 and (beta >> position[l][bi]) & 1:
                out |= 1 << i
        return out

    def degree_coordinates(self) -> tuple:
        """ omega_RX evaluated on the lifted coordinate axes through the origin."""
        out = []
        for i in range(self.n):
            total = 0
            for simplex in self.K.simplices[1]:
                points = [self.K.vertices[v] for v in simplex]
                if all(x[j] == 0 for x in points for j in range(self.n) if j != i):
                    sid = self.K.simplex_ids[simplex]
                    free = self.T.free(sid)
                    for u in range(1 << len(free)):
                        total ^= self.omega_value(self.index[(expand(u, free), sid)])
            out.append(total)
        return tuple(out)


class RealCosheaf(CellularCosheaf):

    def __init__(self, lift: RealLift):
        self.lift = lift

    def stalk_dim(self, cell: tuple) -> int:
        return 1 << self.lift.T.rank_of(cell)

    def extension(self, cell: tuple, face: tuple) -> F2Matrix:
        return self.lift.group_extension(cell[1], face[1])


class RealSheaf(CellularSheaf):
    # functions on V, restricted by pull-back along the quotient maps

    def __init__(self, lift: RealLift):
        self.lift = lift

    def stalk_dim(self, cell: tuple) -> int:
        return 1 << self.lift.T.rank_of(cell)

    def restriction(self, face: tuple, cell: tuple) -> F2Matrix:
        return self.lift.group_extension(cell[1], face[1]).transpose()

    def product(self, cell: tuple, x: int, y: int) -> int:
        return x & y

    def unit(self, cell: tuple) -> int:
        return (1 << self.stalk_dim(cell)) - 1


def real_lift(K: Triangulation, check: bool = True) -> RealLift:
    """ Builds RK, checks omega_RX and returns the lift together with its tropical data."""
    return RealLift(build_tropical_coefficients(K, check), check)


class CohomologyRing:
    """ H^*(RP; F2) on the folded cubical model, with the cubical cup product.

    Classes are packed coordinate vectors in the pivot basis of each H^q.
    """

    def __init__(self, lift: RealLift):
        self.lift: RealLift = lift
        self.n: int = lift.n
        self.C: CellularChainComplex = lift.cochains()
        self.H: dict = {q: self.C.homology(q) for q in range(self.n + 1)}
        self._omega: Optional[int] = None

    def dim(self, q: int) -> int:
        return self.H[q].dim if q in self.H else 0

    def betti_numbers(self) -> list:
        return [self.dim(q) for q in range(self.n + 1)]

    def representative(self, q: int, coords: int) -> int:
        return self.H[q].lift(coords)

    def class_of(self, q: int, cocycle: int) -> int:
        return self.H[q].coordinates(cocycle)

    def product(self, q1: int, x: int, q2: int, y: int) -> int:
        if q1 + q2 > self.n:
            return 0
        value = cup(self.representative(q1, x), q1, self.representative(q2, y), q2, self.C)
        return self.class_of(q1 + q2, value)

    def multiplication_matrix(self, alpha: int, q: int) -> F2Matrix:
        """ Matrix of beta -> alpha u beta from H^q to H^(q+1), alpha in H^1."""
        cols = tuple(self.product(1, alpha, q, 1 << j) for j in range(self.dim(q)))
        return F2Matrix(self.dim(q + 1), len(cols), cols)

    def evaluate(self, cochain: int) -> int:
        """ Pairing of a top-degree cochain with the fundamental class of RP."""
        return parity(cochain & self.lift.fundamental_chain())

    def omega_class(self) -> int:
        """ Coordinates of the class of omega_RX in H^1, transported from RK.

        :raises InternalConsistencyError: if the subdivision map does not reach the class
        """
        if self._omega is None:
            simplicial = self.lift.simplicial_cochains().homology(1)
            sd = self.lift.subdivision_map(1)
            cols = tuple(simplicial.coordinates(sd.apply(rep)) for rep in self.H[1].reps)
            target = simplicial.coordinates(self.lift.omega_cochain())
            solution = solve(F2Matrix(simplicial.dim, len(cols), cols), target)
            if solution is None:
                logging.error("omega_class: class of omega_RX not reached by the subdivision map")
                raise InternalConsistencyError("the class of omega_RX has no cubical preimage")
            self._omega = solution
        return self._omega

    def omega_cocycle(self) -> int:
        return self.representative(1, self.omega_class())

    def subdivision_on_cohomology(self, q: int) -> F2Matrix:
        simplicial = self.lift.simplicial_cochains().homology(q)
        sd = self.lift.subdivision_map(q)
        cols = tuple(simplicial.coordinates(sd.apply(rep)) for rep in self.H[q].reps)
        return F2Matrix(simplicial.dim, len(cols), cols)

    def alexander_whitney_check(self) -> Verdict:
        """ Compares the cubical ring with the Alexander-Whitney ring of RK through the subdivision map."""
        for q in range(self.n + 1):
            M = self.subdivision_on_cohomology(q)
            if not (M.n_rows == M.n_cols == M.rank()):
                return Verdict(False, f"subdivision map is not an isomorphism on H^{q}", (q,))
        simplicial = self.lift.simplicial_cochains()
        for q1 in range(1, self.n + 1):
            for q2 in range(1, self.n + 1 - q1):
                sd1, sd2 = self.lift.subdivision_map(q1), self.lift.subdivision_map(q2)
                sd12 = self.lift.subdivision_map(q1 + q2)
                for i, x in enumerate(self.H[q1].reps):
                    for j, y in enumerate(self.H[q2].reps):
                        cubical = sd12.apply(cup(x, q1, y, q2, self.C))
                        aw = self.lift.alexander_whitney(sd1.apply(x), q1, sd2.apply(y), q2)
                        H = simplicial.homology(q1 + q2)
                        if H.coordinates(cubical) != H.coordinates(aw):
                            logging.warning(f"alexander_whitney_check: products differ in H^{q1}xH^{q2}")
                            return Verdict(False, f"cubical and simplicial cup differ on H^{q1} x H^{q2}", (q1, q2, i, j))
        return Verdict(True)


def rp_cohomology_ring(lift: RealLift) -> CohomologyRing:
    return CohomologyRing(lift)


def arg_set(lift: RealLift, eps: SignDistribution, cell: tuple) -> ArgSet:
    """ Arguments v of the cell (a; b) with d eps(e) + omega(e)(v) = 1 for some edge e of a.

    :param RealLift lift: The real lift.
    :param SignDistribution eps: Signs on the vertices of K.
    :param tuple cell: A cell of the cubical subdivision of K.
    :return: Members as points of V in free coordinates, ascending
    :rtype: ArgSet
    """
    T, K = lift.T, lift.K
    conditions = []
    for e, form, _ in T.edge_forms(cell):
        i, j = K.simplex(e)
        conditions.append((form, eps[i] ^ eps[j]))
    m = T.rank_of(cell)
    members = tuple(u for u in range(1 << m) if any(parity(form & u) ^ de for form, de in conditions))
    return ArgSet(cell, m, members)


class SignCosheaf(CellularCosheaf):
    # K^RXeps: span of the x^v, v in Arg, with the restriction of the group algebra extensions

    def __init__(self, hyp: "THypersurface"):
        self.hyp = hyp
        self._maps: dict = {}

    def stalk_dim(self, cell: tuple) -> int:
        return len(self.hyp.args[cell])

    def extension(self, cell: tuple, face: tuple) -> F2Matrix:
        key = (cell, face)
        if key in self._maps:
            return self._maps[key]
        proj = self.hyp.T.quotient_map(cell[1], face[1])
        target = self.hyp.arg_index(face)
        cols = []
        for u in self.hyp.args[cell].members:
            image = proj.apply(u)
            if image not in target:
                logging.error(f"SignCosheaf: argument {u} of {cell} does not project into {face}")
                raise AssemblyError(f"argument {u} of {cell} leaves the T-hypersurface on {face}")
            cols.append(1 << target[image])
        self._maps[key] = F2Matrix(len(target), len(cols), tuple(cols))
        return self._maps[key]


class SignSheaf(CellularSheaf):
    # O_RXeps: functions on Arg

    def __init__(self, hyp: "THypersurface"):
        self.cosheaf = hyp.cosheaf
        self._maps: dict = {}

    def stalk_dim(self, cell: tuple) -> int:
        return self.cosheaf.stalk_dim(cell)

    def restriction(self, face: tuple, cell: tuple) -> F2Matrix:
        key = (face, cell)
        if key not in self._maps:
            self._maps[key] = self.cosheaf.extension(cell, face).transpose()
        return self._maps[key]

    def product(self, cell: tuple, x: int, y: int) -> int:
        return x & y

    def unit(self, cell: tuple) -> int:
        return (1 << self.stalk_dim(cell)) - 1


class _Components:
    # union-find over hashable items

    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


class THypersurface:
    """ The T-hypersurface RX_eps, folded onto the dual hypersurface X of K.

    A cell (v; a; b) of RX_eps is a cell (a; b) of X with an argument v in
    Arg_eps(a; b). Its chains form the complex of the sign cosheaf.
    """

    def __init__(self, lift: RealLift, eps: SignDistribution, check: bool = True):
        """ Initializes the T-hypersurface of a sign distribution

        :param RealLift lift: The real lift of K.
        :param SignDistribution eps: One sign per vertex of K.
        :param bool check: Run the functoriality and manifold checks.
        :raises AssemblyError: if the signs do not match K or the complex is not a closed manifold
        """
        if len(eps) != len(lift.K.vertices):
            logging.error("THypersurface: sign count does not match the vertices")
            raise AssemblyError(f"{len(eps)} signs given for {len(lift.K.vertices)} vertices")
        self.lift: RealLift = lift
        self.T: TropicalCoefficients = lift.T
        self.K: Triangulation = lift.K
        self.n: int = lift.n
        self.eps: SignDistribution = eps
        self.X: CubicalComplex = self.T.X
        self.args: dict = {cell: arg_set(lift, eps, cell) for cell in self.X.all_cells()}
        self._arg_index: dict = {}
        self.cosheaf: SignCosheaf = SignCosheaf(self)
        self.complex: CellularChainComplex = complex_with_coefficients(self.X, self.cosheaf, check = check)
        self._cache: dict = {}
        self._steps: dict = {}
        if check:
            self.manifold_check()

    def arg_index(self, cell: tuple) -> dict:
        if cell not in self._arg_index:
            self._arg_index[cell] = {u: i for i, u in enumerate(self.args[cell].members)}
        return self._arg_index[cell]

    def is_empty(self) -> bool:
        return all(len(s) == 0 for s in self.args.values())

    def betti_numbers(self) -> list:
        return self.complex.betti_numbers()

    def cell_counts(self) -> list:
        return list(self.complex.dims)

    def euler_characteristic(self) -> int:
        return self.complex.euler_characteristic()

    def manifold_check(self) -> None:
        """ Every (n-2)-cell lies in exactly two (n-1)-cells.

        :raises AssemblyError: with the first cell where this fails
        """
        if self.n < 2:
            return
        top = self.n - 1
        counts: dict = {}
        for cell in self.X.cells[top]:
            for face in self.X.facets(cell):
                proj = self.T.quotient_map(cell[1], face[1])
                for u in self.args[cell].members:
                    key = (face, proj.apply(u))
                    counts[key] = counts.get(key, 0) + 1
        for face in self.X.cells[top - 1]:
            for u in self.args[face].members:
                if counts.get((face, u), 0) != 2:
                    logging.error(f"manifold_check: cell {(u, face)} has {counts.get((face, u), 0)} cofaces")
                    raise AssemblyError(f"cell ({u}; {face}) lies in {counts.get((face, u), 0)} top cells")

    def components(self) -> list:
        """ Connected components, each as the sorted list of its top cells (cell, arg)."""
        forest = _Components()
        for k in range(self.X.dim + 1):
            for cell in self.X.cells[k]:
                for u in self.args[cell].members:
                    forest.find((cell, u))
                    for face in self.X.facets(cell):
                        forest.union((cell, u), (face, self.T.quotient_map(cell[1], face[1]).apply(u)))
        groups: dict = {}
        for cell in self.X.cells[self.X.dim]:
            for u in self.args[cell].members:
                groups.setdefault(forest.find((cell, u)), []).append((cell, u))
        return sorted((sorted(g) for g in groups.values()), key = lambda g: g[0])

    def chain_of(self, top_cells: list) -> int:
        q = self.X.dim
        out = 0
        for cell, u in top_cells:
            out |= 1 << (self.complex.offsets[q][cell] + self.arg_index(cell)[u])
        return out

    def inclusion_chain_map(self, q: int) -> F2Matrix:
        """ Chain map from RX_eps to RP on the folded models: x^v at (a; b) goes to x^v in F2[V_b]."""
        key = ("inclusion", q)
        if key not in self._cache:
            target = self.lift.chains()
            cols = []
            for cell in self.X.cells.get(q, []):
                offset = target.offsets[q][cell]
                for u in self.args[cell].members:
                    cols.append(1 << (offset + u))
            self._cache[key] = F2Matrix(target.dims[q], len(cols), tuple(cols))
        return self._cache[key]

    def fundamental_class_in_RP(self, top_cells: Optional[list] = None) -> int:
        """ Coordinates in H_(n-1)(RP) of the push-forward of a union of components."""
        q = self.n - 1
        if top_cells is None:
            top_cells = [(cell, u) for cell in self.X.cells[q] for u in self.args[cell].members]
        image = self.inclusion_chain_map(q).apply(self.chain_of(top_cells))
        return self.lift.chains().homology(q).coordinates(image)

    def component_classes(self) -> list:
        """ Classes of the components in the basis of lifted coordinate facets {x_i = 0}.

        Facets are taken in coordinate order and kept when independent of the
        previous ones. A class outside their span is reported as None.

        :return: One tuple of 0/1 per component, in component order
        :rtype: list
        """
        H = self.lift.chains().homology(self.n - 1)
        ech, basis = Echelon(), []
        for i in range(self.n):
            chain = self.lift.facet_cycle(i)
            if chain is None:
                continue
            coords = H.coordinates(chain)
            independent, _ = ech.add(coords)
            if independent:
                basis.append(coords)
        M = F2Matrix(H.dim, len(basis), tuple(basis))
        out = []
        for component in self.components():
            solution = solve(M, self.fundamental_class_in_RP(component))
            if solution is None:
                logging.warning("component_classes: class outside the span of the coordinate facets")
                out.append(None)
            else:
                out.append(tuple((solution >> j) & 1 for j in range(len(basis))))
        return out

    def cochains(self) -> CellularChainComplex:
        if "cochains" not in self._cache:
            self._cache["cochains"] = complex_with_coefficients(self.X, SignSheaf(self), check = False)
        return self._cache["cochains"]

    def restriction_map(self, q: int) -> F2Matrix:
        """ i^q: H^q(RP) -> H^q(RX_eps), computed from the cochain-level restriction."""
        source, target = self.lift.cochains().homology(q), self.cochains().homology(q)
        f = self.inclusion_chain_map(q).transpose()
        return induced_map_on_subquotient(f, source.num, source.den, target.num, target.den, source, target)

    def pushforward_map(self, q: int) -> F2Matrix:
        """ i_q: H_q(RX_eps) -> H_q(RP)."""
        source, target = self.complex.homology(q), self.lift.chains().homology(q)
        f = self.inclusion_chain_map(q)
        return induced_map_on_subquotient(f, source.num, source.den, target.num, target.den, source, target)

    def poincare_duality_check(self, ring: CohomologyRing) -> Verdict:
        """ <beta, [RX_eps]> = <beta u omega_RX, [RP]> for every beta in H^(n-1)(RP)."""
        q = self.n - 1
        top_cells = [(cell, u) for cell in self.X.cells[q] for u in self.args[cell].members]
        pushed = self.inclusion_chain_map(q).apply(self.chain_of(top_cells))
        w = ring.omega_cocycle()
        for j, beta in enumerate(ring.H[q].reps):
            left = parity(beta & pushed)
            right = ring.evaluate(cup(beta, q, w, 1, ring.C))
            if left != right:
                return Verdict(False, f"RX_eps and omega_RX pair differently with class {j} of H^{q}", (j,))
        return Verdict(True)

    def direct_complex(self) -> CellularChainComplex:
        """ RX_eps as a subcomplex of the cubical subdivision of RK, constant coefficients."""
        if "direct" not in self._cache:
            poset = self.lift.poset
            good = set()
            for e in poset.elements(1):
                i, j = self.K.simplex(poset.labels[e].base)
                if self.eps[i] ^ self.eps[j] ^ self.lift.omega_value(e):
                    good.add(e)
            R = self.lift.cubical_complex()
            sub = R.subcomplex(lambda c: poset.dims[c[0]] >= 1 and not good.isdisjoint(poset.down[c[0]]))
            self._cache["direct"] = complex_with_coefficients(sub, ConstantCosheaf(), check = False)
        return self._cache["direct"]

    def direct_betti(self) -> list:
        return self.direct_complex().betti_numbers()

    def filtration_step(self, cell: tuple, k: int, method: FiltrationMethod) -> Subspace:
        """ K^RXeps_(k) on one cell, as a subspace of F2[V]. Steps are computed once per hypersurface.

        :param tuple cell: A cell of X.
        :param int k: Filtration index.
        :param FiltrationMethod method: INTERSECTION or EDGE_SUMS.
        :return: Subspace of F2^(2^m)
        :rtype: Subspace
        """
        key = (cell, k, method)
        if key not in self._steps:
            self._steps[key] = self._build_step(cell, k, method)
        return self._steps[key]

    def _build_step(self, cell: tuple, k: int, method: FiltrationMethod) -> Subspace:
        members = self.args[cell]
        m = members.rank
        if method == FiltrationMethod.INTERSECTION:
            monomials = span((1 << u for u in members.members), 1 << m)
            return intersection(monomials, aug_power_basis(m, k))
        parts = [Subspace.zero(1 << m)]
        for e, form, kernel in self.T.edge_forms(cell):
            i, j = self.K.simplex(e)
            de = self.eps[i] ^ self.eps[j]
            origin = next((u for u in range(1 << m) if parity(form & u) ^ de), None)
            if origin is None:
                continue
            shifted = (group_multiply(1 << origin, g) for g in aug_power_of_subspace(kernel, k).basis)
            parts.append(span(shifted, 1 << m))
        return subspace_sum(*parts)

    def filtered_complex(self, method: FiltrationMethod = FiltrationMethod.INTERSECTION) -> FilteredComplexF2:
        """ Chains of RX_eps with the decreasing filtration K^RXeps_(k), k = 0..n.

        :raises AssemblyError: if a filtration step leaves the sign cosheaf or the boundary does not preserve it
        """
        key = ("filtered", method)
        if key in self._cache:
            return self._cache[key]
        C = self.complex
        filtration = {}
        for q in range(C.top + 1):
            for k in range(1, self.n + 1):
                gens = []
                for cell in self.X.cells[q]:
                    members = self.args[cell].members
                    offset = C.offsets[q][cell]
                    for g in self.filtration_step(cell, k, method).basis:
                        if expand(compress(g, members), members) != g:
                            logging.error(f"filtered_complex: step {k} on {cell} leaves the sign cosheaf")
                            raise AssemblyError(f"filtration step {k} on {cell} is not supported on Arg")
                        gens.append(compress(g, members) << offset)
                filtration[(k, q)] = span(gens, C.dims[q])
        for q in range(1, C.top + 1):
            for k in range(1, self.n + 1):
                if not image_of(C.differential(q), filtration[(k, q)]).issubspace(filtration[(k, q - 1)]):
                    logging.error(f"filtered_complex: boundary leaves step {k} in degree {q}")
                    raise AssemblyError(f"boundary does not preserve filtration step {k} in degree {q}")
        filtered = FilteredComplexF2(C, filtration, self.n, check = False)
        self._cache[key] = filtered
        return filtered

    def filtration_equality(self) -> Verdict:
        for cell in self.X.all_cells():
            for k in range(self.n + 1):
                a = self.filtration_step(cell, k, FiltrationMethod.INTERSECTION)
                b = self.filtration_step(cell, k, FiltrationMethod.EDGE_SUMS)
                if a != b:
                    return Verdict(False, f"filtrations differ on {cell} at step {k}", (cell, k))
        return Verdict(True)

    def graded_pieces_check(self, method: FiltrationMethod = FiltrationMethod.INTERSECTION) -> Verdict:
        """ Projecting step k to the k-th exterior power gives exactly F_k^X, with kernel step k+1."""
        for cell in self.X.all_cells():
            m = self.args[cell].rank
            for k in range(self.n):
                step = self.filtration_step(cell, k, method)
                following = self.filtration_step(cell, k + 1, method)
                expected = self.T.fx(cell, k)
                image = span((eta_inverse(k, g, m) for g in step.basis), binomial(m, k))
                if image != expected or step.dim - following.dim != expected.dim:
                    return Verdict(False, f"graded piece {k} on {cell} does not match F_{k}^X", (cell, k))
        return Verdict(True)


def t_hypersurface(lift: RealLift, eps: SignDistribution, check: bool = True) -> THypersurface:
    return THypersurface(lift, eps, check)


def filtered_t_complex(hyp: THypersurface, method: str = "intersection") -> FilteredComplexF2:
    return hyp.filtered_complex(FiltrationMethod(method))
