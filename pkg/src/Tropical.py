from dataclasses import dataclass, field
import logging
from src.F2Linalg import *
from src.Exterior import *
from src.Polytope import *
from src.Triangulation import *
from src.CubicalComplex import *


class InternalConsistencyError(Exception):
    # Custom exception for two independent computations that disagree

    def __init__(self, message):
        """Handles disagreement between constructions that must coincide

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


def binomial(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


def descends(alpha: int, p: int, sed: Subspace, n: int) -> bool:
    """ Whether a p-form on F2^n vanishes as soon as one argument lies in sed."""
    if p == 0:
        return True
    return all(contract(s, 1, alpha, p, n) == 0 for s in sed.basis)


class TropicalCoefficients:
    """ Tropical cosheaves F_k^P and F_k^X on the cubical subdivision of K.

    On a cell (a; b) the stalk of F_1^P is V = F2^n / Sed(b), written in the basis
    of classes of the free coordinates of Sed(b); F_k^P is its k-th exterior
    power. F_k^X lives on the dual hypersurface and is built as the sum over the
    edges e of a of the k-th powers of ker omega(e); with check=True every stalk
    is compared with the kernel of the contraction by omega(a).
    """

    def __init__(self, K: Triangulation, check: bool = True):
        self.K: Triangulation = K
        self.P: LatticePolytope = K.polytope
        self.n: int = K.dim
        self.poset: SimplexPoset = poset_of(K)
        self.cells: CubicalComplex = CubicalComplex(self.poset)
        self.X: CubicalComplex = dual_hypersurface(self.cells)
        self._sed: dict = {}
        self._fx: dict = {}
        self._qmap: dict = {}
        self._complexes: dict = {}
        self._forms: dict = {}
        self._edges: dict = {}
        self.check: bool = check
        if check:
            self.verify_constructions()

    def sed(self, sid: int) -> Subspace:
        if sid not in self._sed:
            self._sed[sid] = self.P.sedentarity(self.K.points(sid))
        return self._sed[sid]

    def free(self, sid: int) -> tuple:
        return self.sed(sid).free_coordinates()

    def rank_of(self, cell: tuple) -> int:
        # dimension of V on the cell
        return len(self.free(cell[1]))

    def quotient_map(self, big: int, small: int) -> F2Matrix:
        """ The projection F2^n / Sed(big) -> F2^n / Sed(small) for small <= big, in free coordinates."""
        key = (big, small)
        if key not in self._qmap:
            target = self.free(small)
            sed = self.sed(small)
            cols = tuple(compress(sed.reduce(1 << c), target) for c in self.free(big))
            self._qmap[key] = F2Matrix(len(target), len(cols), cols)
        return self._qmap[key]

    def form_on_cell(self, sid: int, cell: tuple) -> tuple[int, int]:
        """ omega(sid) read as a form on the quotient V of the cell.

        :return: (form, degree)
        :rtype: tuple[int, int]
        :raises InternalConsistencyError: if omega(sid) does not vanish on Sed(sid)
        """
        key = (sid, cell[1])
        if key not in self._forms:
            w = omega(self.K, sid)
            if not descends(w.value, w.p, self.sed(sid), self.n):
                logging.error("form_on_cell: omega does not vanish on the sedentarity of " + str(self.K.simplex(sid)))
                raise InternalConsistencyError(f"omega of {self.K.simplex(sid)} does not vanish on its sedentarity")
            self._forms[key] = (restrict_form(w.value, w.p, self.n, self.free(cell[1])), w.p)
        return self._forms[key]

    def edge_forms(self, cell: tuple) -> list:
        """ (e, omega(e) on V, its kernel) for every edge e of a, the cell being (a; b)."""
        if cell not in self._edges:
            m = self.rank_of(cell)
            out = []
            for e in sorted(self.poset.down[cell[0]]):
                if self.poset.dims[e] != 1:
                    continue
                form, _ = self.form_on_cell(e, cell)
                kernel = F2Matrix(1, m, tuple((form >> i) & 1 for i in range(m))).kernel()
                out.append((e, form, kernel))
            self._edges[cell] = out
        return self._edges[cell]

    def fx_by_sum(self, cell: tuple, k: int) -> Subspace:
        parts = [exterior_power_of_subspace(kernel, k) for _, _, kernel in self.edge_forms(cell)]
        return subspace_sum(*parts)

    def fx_by_contraction(self, cell: tuple, k: int) -> Subspace:
        m = self.rank_of(cell)
        form, p = self.form_on_cell(cell[0], cell)
        return contraction_matrix(form, p, k, m).kernel()

    def fx(self, cell: tuple, k: int) -> Subspace:
        """ The stalk F_k^X(cell) as a subspace of the k-th exterior power of V."""
        key = (cell, k)
        if key not in self._fx:
            self._fx[key] = self.fx_by_sum(cell, k)
        return self._fx[key]

    def verify_constructions(self) -> None:
        """ Compares both constructions of F_k^X and the expected dimension on every cell.

        :raises InternalConsistencyError: on the first mismatch
        """
        for cell in self.X.all_cells():
            m, p = self.rank_of(cell), self.poset.dims[cell[0]]
            for k in range(self.n + 1):
                by_sum, by_kernel = self.fx(cell, k), self.fx_by_contraction(cell, k)
                if by_sum != by_kernel:
                    logging.error(f"verify_constructions: F_{k}^X differs on {cell}")
                    raise InternalConsistencyError(f"the two constructions of F_{k}^X differ on cell {cell}")
                expected = binomial(m, k) - binomial(m - p, k - p)
                if by_sum.dim != expected:
                    logging.error(f"verify_constructions: dim F_{k}^X on {cell} is {by_sum.dim}")
                    raise InternalConsistencyError(f"dim F_{k}^X on {cell} is {by_sum.dim}, expected {expected}")

    def cosheaf_P(self, k: int) -> "ExteriorCosheaf":
        return ExteriorCosheaf(self, k)

    def cosheaf_X(self, k: int) -> "HypersurfaceCosheaf":
        return HypersurfaceCosheaf(self, k)

    def complex_P(self, k: int) -> CellularChainComplex:
        key = ("P", k)
        if key not in self._complexes:
            self._complexes[key] = complex_with_coefficients(self.cells, self.cosheaf_P(k), check = self.check)
        return self._complexes[key]

    def complex_X(self, k: int) -> CellularChainComplex:
        key = ("X", k)
        if key not in self._complexes:
            self._complexes[key] = complex_with_coefficients(self.X, self.cosheaf_X(k), check = self.check)
        return self._complexes[key]

    def inclusion_chain_map(self, k: int, q: int) -> F2Matrix:
        """ Chain map C_q(X; F_k^X) -> C_q(K; F_k^P) induced by the stalk inclusions."""
        target = self.complex_P(k)
        cols = []
        if q > self.X.dim:
            return F2Matrix.zeros(target.dims[q] if q <= target.top else 0, 0)
        for cell in self.X.cells[q]:
            offset = target.offsets[q][cell]
            for u in self.fx(cell, k).basis:
                cols.append(u << offset)
        return F2Matrix(target.dims[q], len(cols), tuple(cols))


class ExteriorCosheaf(CellularCosheaf):
    # F_k^P: k-th exterior powers of the quotients V, extensions are compound projections

    def __init__(self, trop: TropicalCoefficients, k: int):
        self.trop, self.k = trop, k

    def stalk_dim(self, cell: tuple) -> int:
        return binomial(self.trop.rank_of(cell), self.k)

    def extension(self, cell: tuple, face: tuple) -> F2Matrix:
        return compound(self.trop.quotient_map(cell[1], face[1]), self.k)


class HypersurfaceCosheaf(CellularCosheaf):
    # F_k^X: stalk coordinates are the canonical basis of fx(cell, k)

    def __init__(self, trop: TropicalCoefficients, k: int):
        self.trop, self.k = trop, k

    def stalk_dim(self, cell: tuple) -> int:
        return self.trop.fx(cell, self.k).dim

    def extension(self, cell: tuple, face: tuple) -> F2Matrix:
        big = compound(self.trop.quotient_map(cell[1], face[1]), self.k)
        target = QuotientBasis(self.trop.fx(face, self.k), Subspace.zero(big.n_rows))
        cols = tuple(target.coordinates(big.apply(u)) for u in self.trop.fx(cell, self.k).basis)
        return F2Matrix(target.dim, len(cols), cols)


def build_tropical_coefficients(K: Triangulation, check: bool = True) -> TropicalCoefficients:
    return TropicalCoefficients(K, check)


@dataclass
class TropicalHomology:
    # table[p][q] = dim H_{p,q}

    n: int
    X: list = field(default_factory = list)
    P: list = field(default_factory = list)

    def hodge_X(self, p: int, q: int) -> int:
        if 0 <= p < len(self.X) and 0 <= q < len(self.X[p]):
            return self.X[p][q]
        return 0

    def total_X(self) -> int:
        return sum(sum(row) for row in self.X)

    def column_sums_X(self) -> list:
        """ sum over p of dim H_{p,q}(X), for q = 0..n-1."""
        return [sum(self.hodge_X(p, q) for p in range(self.n)) for q in range(self.n)]

    def euler_characteristic_X(self) -> int:
        return sum((-1) ** (p + q) * self.X[p][q] for p in range(len(self.X)) for q in range(len(self.X[p])))


def tropical_homology(T: TropicalCoefficients) -> TropicalHomology:
    """ Dimensions of H_{p,q}(X; F2) and H_{p,q}(P; F2) for p, q = 0..n.

    Each table is also recomputed on the transposed complexes, where it gives the
    cohomology H^{p,q}; the two must agree.

    :raises InternalConsistencyError: if homology and cohomology dimensions differ
    """
    n = T.n
    result = TropicalHomology(n)
    for label, build in (("X", T.complex_X), ("P", T.complex_P)):
        table = []
        for p in range(n + 1):
            C = build(p)
            row = [C.betti(q) for q in range(n + 1)]
            dual = C.transpose()
            if [dual.betti(q) for q in range(n + 1)] != row:
                logging.error(f"tropical_homology: H_{p},* and H^{p},* of {label} differ")
                raise InternalConsistencyError(f"homology and cohomology dimensions of {label} differ at p = {p}")
            table.append(row)
        setattr(result, label, table)
    return result


def euler_characteristic_from_cells(T: TropicalCoefficients) -> int:
    """ sum over p and cells c of X of (-1)^(p + dim c) dim F_p^X(c)."""
    total = 0
    for cell in T.X.all_cells():
        sign = (-1) ** T.X.cell_dim(cell)
        for p in range(T.n + 1):
            total += (-1) ** p * sign * T.fx(cell, p).dim
    return total


@dataclass(frozen = True)
class InclusionMap:
    p: int
    q: int
    matrix: F2Matrix
    adjoint: F2Matrix

    @property
    def rank(self) -> int:
        return self.matrix.rank()

    @property
    def adjoint_rank(self) -> int:
        return self.adjoint.rank()


def _pairing_matrix(cohomology: QuotientBasis, homology: QuotientBasis) -> F2Matrix:
    # entry (s, l) = <phi_s, c_l>
    cols = []
    for c in homology.reps:
        col = 0
        for s, phi in enumerate(cohomology.reps):
            if parity(phi & c):
                col |= 1 << s
        cols.append(col)
    return F2Matrix(cohomology.dim, homology.dim, tuple(cols))


def inclusion_maps(T: TropicalCoefficients) -> dict:
    """ The maps i_{p,q}: H_{p,q}(X) -> H_{p,q}(P) and their adjoints i^{p,q}.

    Matrices are written in the pivot bases of the homology and cohomology groups.
    Adjointness is verified through the evaluation pairings of both sides.

    :return: (p, q) -> InclusionMap for p, q = 0..n-1
    :rtype: dict
    :raises InternalConsistencyError: if the adjoint relation fails
    """
    out = {}
    for p in range(T.n):
        CX, CP = T.complex_X(p), T.complex_P(p)
        DX, DP = CX.transpose(), CP.transpose()
        for q in range(T.n):
            chain_map = T.inclusion_chain_map(p, q)
            hx, hp = CX.homology(q), CP.homology(q)
            matrix = induced_map_on_subquotient(chain_map, hx.num, hx.den, hp.num, hp.den, hx, hp)
            cx, cp = DX.homology(q), DP.homology(q)
            adjoint = induced_map_on_subquotient(chain_map.transpose(), cp.num, cp.den, cx.num, cx.den, cp, cx)
            left = adjoint.transpose() @ _pairing_matrix(cx, hx)
            right = _pairing_matrix(cp, hp) @ matrix
            if left != right:
                logging.error(f"inclusion_maps: i^{p},{q} is not adjoint to i_{p},{q}")
                raise InternalConsistencyError(f"i^({p},{q}) is not adjoint to i_({p},{q})")
            out[(p, q)] = InclusionMap(p, q, matrix, adjoint)
    return out


def lefschetz_check(T: TropicalCoefficients, maps: dict = None) -> Verdict:
    """ i^{q,q} is an isomorphism whenever 2q < n - 1."""
    maps = inclusion_maps(T) if maps is None else maps
    for q in range(T.n):
        if 2 * q >= T.n - 1:
            break
        i = maps[(q, q)]
        if not (i.adjoint.n_rows == i.adjoint.n_cols == i.adjoint_rank):
            return Verdict(False, f"i^({q},{q}) is not an isomorphism", (q,))
    return Verdict(True)
