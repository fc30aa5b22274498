from typing import Callable, Optional
import logging
from src.F2Linalg import *


class CoefficientConsistencyError(Exception):
    # Custom exception for coefficient systems that are not functorial

    def __init__(self, message):
        """Handles extension or restriction maps whose composites disagree

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


class ChainComplexError(Exception):
    # Custom exception for differentials that do not square to zero

    def __init__(self, message):
        """Handles malformed chain complexes

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


class DegreeError(Exception):
    # Custom exception for cochains whose degrees cannot be multiplied

    def __init__(self, message):
        """Handles cup products of non-composable degrees

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


class SimplexPoset:
    """ Face poset of a Delta-complex: a dimension and a list of facets per element.

    Elements are integers 0..len-1. down[i] is the set of all faces of i, itself
    included; the poset of a triangulation and the poset of its real lift both
    use this class.
    """

    def __init__(self, dims: list, facets: list, labels: Optional[list] = None):
        self.dims: list = list(dims)
        self.facets: list = [tuple(sorted(f)) for f in facets]
        self.labels: list = list(labels) if labels is not None else list(range(len(self.dims)))
        self.cofacets: list = [[] for _ in self.dims]
        for i, fs in enumerate(self.facets):
            for f in fs:
                self.cofacets[f].append(i)
        self.down: list = [frozenset()] * len(self.dims)
        for i in sorted(range(len(self.dims)), key = lambda j: self.dims[j]):
            below = {i}
            for f in self.facets[i]:
                below |= self.down[f]
            self.down[i] = frozenset(below)

    def __len__(self) -> int:
        return len(self.dims)

    def leq(self, a: int, b: int) -> bool:
        return a in self.down[b]

    def elements(self, dim: int) -> list:
        return [i for i, d in enumerate(self.dims) if d == dim]

    @property
    def dim(self) -> int:
        return max(self.dims) if self.dims else -1


def poset_of(K) -> SimplexPoset:
    """ Face poset of a triangulation, elements being its global simplex ids."""
    facets = []
    for simplex in K.simplex_list:
        if len(simplex) == 1:
            facets.append(())
        else:
            facets.append(tuple(K.simplex_ids[simplex[:k] + simplex[k + 1:]] for k in range(len(simplex))))
    return SimplexPoset([len(s) - 1 for s in K.simplex_list], facets, list(K.simplex_list))


class CubicalComplex:
    """ Cubical subdivision of a Delta-complex, or a closed subcomplex of one.

    The cell (a; b) exists for every pair of simplices a <= b and has dimension
    dim b - dim a; its faces are the pairs (a'; b') with a <= a' <= b' <= b.
    """

    def __init__(self, poset: SimplexPoset, cells: Optional[list] = None):
        self.poset: SimplexPoset = poset
        if cells is None:
            cells = [(a, b) for b in range(len(poset)) for a in poset.down[b]]
        by_dim: dict = {}
        for cell in cells:
            by_dim.setdefault(self.cell_dim(cell), []).append(tuple(cell))
        self.dim: int = max(by_dim) if by_dim else -1
        self.cells: dict = {k: sorted(by_dim.get(k, [])) for k in range(self.dim + 1)}
        self.index: dict = {}
        for k in self.cells:
            for i, cell in enumerate(self.cells[k]):
                self.index[cell] = i

    def __contains__(self, cell) -> bool:
        return cell in self.index

    def __len__(self) -> int:
        return len(self.index)

    def cell_dim(self, cell: tuple) -> int:
        return self.poset.dims[cell[1]] - self.poset.dims[cell[0]]

    def all_cells(self) -> list:
        return [cell for k in range(self.dim + 1) for cell in self.cells[k]]

    def facets(self, cell: tuple) -> list:
        """ Codimension-one faces of a cell that belong to this complex.

        :param tuple cell: A pair (a, b) of simplex ids.
        :return: Faces (a'; b) with a' covering a and (a; b') with b' covered by b
        :rtype: list
        """
        a, b = cell
        out = []
        for up in self.poset.cofacets[a]:
            if self.poset.leq(up, b) and (up, b) in self.index:
                out.append((up, b))
        for down in self.poset.facets[b]:
            if self.poset.leq(a, down) and (a, down) in self.index:
                out.append((a, down))
        return out

    def faces(self, cell: tuple) -> list:
        a, b = cell
        down_b = self.poset.down[b]
        out = []
        for lower in down_b:
            if self.poset.leq(a, lower):
                for upper in down_b:
                    if self.poset.leq(lower, upper) and (lower, upper) in self.index:
                        out.append((lower, upper))
        return out

    def middles(self, a: int, c: int, k: int) -> list:
        """ Simplices m with a <= m <= c and dim m = dim a + k."""
        target = self.poset.dims[a] + k
        return sorted(m for m in self.poset.down[c]
                      if self.poset.dims[m] == target and self.poset.leq(a, m))

    def subcomplex(self, predicate: Callable) -> "CubicalComplex":
        """ Closed subcomplex of the cells satisfying the predicate.

        :raises CoefficientConsistencyError: if the selected cells are not closed under faces
        """
        kept = [cell for cell in self.all_cells() if predicate(cell)]
        sub = CubicalComplex(self.poset, kept)
        for cell in kept:
            for face in self.facets(cell):
                if face not in sub:
                    logging.error("subcomplex: selection not closed at " + str(cell))
                    raise CoefficientConsistencyError(f"face {face} of {cell} is missing from the subcomplex")
        return sub

    def cell_counts(self) -> list:
        return [len(self.cells[k]) for k in range(self.dim + 1)]


def cubical_cells(K) -> CubicalComplex:
    return CubicalComplex(poset_of(K))


def dual_hypersurface(C: CubicalComplex) -> CubicalComplex:
    """ The subcomplex X of cells (a; b) with dim a >= 1, pure of dimension n-1."""
    return C.subcomplex(lambda cell: C.poset.dims[cell[0]] >= 1)


class CellularCosheaf:
    """ Coefficient system whose maps go from a cell to its faces.

    Subclasses implement stalk_dim and extension(cell, face) for every face of a
    cell, not only codimension-one faces.
    """

    def stalk_dim(self, cell: tuple) -> int:
        raise NotImplementedError

    def extension(self, cell: tuple, face: tuple) -> F2Matrix:
        raise NotImplementedError


class CellularSheaf:
    """ Coefficient system whose maps go from a face to the cells containing it.

    Sheaves of algebras also implement product and unit on every stalk, and their
    restriction maps are algebra maps.
    """

    def stalk_dim(self, cell: tuple) -> int:
        raise NotImplementedError

    def restriction(self, face: tuple, cell: tuple) -> F2Matrix:
        raise NotImplementedError

    def product(self, cell: tuple, x: int, y: int) -> int:
        raise NotImplementedError

    def unit(self, cell: tuple) -> int:
        raise NotImplementedError


class ConstantCosheaf(CellularCosheaf):

    def stalk_dim(self, cell: tuple) -> int:
        return 1

    def extension(self, cell: tuple, face: tuple) -> F2Matrix:
        return F2Matrix.identity(1)


class ConstantSheaf(CellularSheaf):

    def stalk_dim(self, cell: tuple) -> int:
        return 1

    def restriction(self, face: tuple, cell: tuple) -> F2Matrix:
        return F2Matrix.identity(1)

    def product(self, cell: tuple, x: int, y: int) -> int:
        return x & y

    def unit(self, cell: tuple) -> int:
        return 1


class ChainComplexF2:
    """ Finite complex of F2 vector spaces in degrees 0..len(dims)-1.

    differentials[q] maps C_q to C_(q + degree): degree -1 for chain complexes and
    +1 for cochain complexes.
    """

    def __init__(self, dims: list, differentials: dict, degree: int = -1, check: bool = True):
        """ Initializes the complex and checks that d o d = 0

        :param list dims: Dimension of each chain group.
        :param dict differentials: Degree q to F2Matrix; missing degrees are zero maps.
        :param int degree: -1 or +1.
        :param bool check: Verify shapes and d o d = 0.
        :raises ChainComplexError: if a differential has the wrong shape or d o d != 0
        """
        self.dims: list = list(dims)
        self.degree: int = degree
        self.differentials: dict = {}
        for q in range(len(self.dims)):
            target = q + degree
            if 0 <= target < len(self.dims):
                d = differentials.get(q, F2Matrix.zeros(self.dims[target], self.dims[q]))
                if check and (d.n_rows, d.n_cols) != (self.dims[target], self.dims[q]):
                    logging.error(f"ChainComplexF2: differential in degree {q} has the wrong shape")
                    raise ChainComplexError(f"differential in degree {q} is {d.n_rows}x{d.n_cols}, "
                                            f"expected {self.dims[target]}x{self.dims[q]}")
                self.differentials[q] = d
        if check:
            for q, d in self.differentials.items():
                after = self.differentials.get(q + degree)
                if after is not None and not (after @ d).is_zero():
                    logging.error(f"ChainComplexF2: d o d != 0 in degree {q}")
                    raise ChainComplexError(f"composite of differentials is nonzero in degree {q}")
        self._homology: dict = {}

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def differential(self, q: int) -> F2Matrix:
        if q in self.differentials:
            return self.differentials[q]
        target = q + self.degree
        rows = self.dims[target] if 0 <= target < len(self.dims) else 0
        cols = self.dims[q] if 0 <= q < len(self.dims) else 0
        return F2Matrix.zeros(rows, cols)

    def cycles(self, q: int) -> Subspace:
        return self.differential(q).kernel()

    def boundaries(self, q: int) -> Subspace:
        if q - self.degree in self.differentials:
            return self.differentials[q - self.degree].image()
        return Subspace.zero(self.dims[q])

    def homology(self, q: int) -> QuotientBasis:
        """ Cycles modulo boundaries in degree q, with pivot-based representatives."""
        if q not in self._homology:
            self._homology[q] = QuotientBasis(self.cycles(q), self.boundaries(q))
        return self._homology[q]

    def betti(self, q: int) -> int:
        if q < 0 or q > self.top:
            return 0
        return self.homology(q).dim

    def betti_numbers(self) -> list:
        return [self.betti(q) for q in range(len(self.dims))]

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * d for q, d in enumerate(self.dims))

    def transpose(self) -> "ChainComplexF2":
        """ The dual complex: same groups, transposed differentials, opposite degree."""
        dual = {q + self.degree: d.transpose() for q, d in self.differentials.items()}
        return ChainComplexF2(self.dims, dual, -self.degree, check = False)


class CellularChainComplex(ChainComplexF2):
    """ (Co)chains of a cubical complex with coefficients, with the per-cell layout.

    C_k is the direct sum of the stalks of the k-cells in index order; offsets[k]
    maps each cell to the position of its first coordinate.
    """

    def __init__(self, complex: CubicalComplex, coefficients, dims: list, offsets: dict,
                 differentials: dict, degree: int):
        super().__init__(dims, differentials, degree)
        self.complex = complex
        self.coefficients = coefficients
        self.offsets = offsets
        self._cup_terms: dict = {}

    def cup_terms(self, k: int, l: int) -> list:
        """ For each (k+l)-cell (a; c): its offset and, per middle m, the cells (a; m)
        and (m; c) with their restrictions to (a; c). Built once per pair of degrees.
        """
        key = (k, l)
        if key not in self._cup_terms:
            F, cx = self.coefficients, self.complex
            out = []
            for cell in cx.cells[k + l]:
                a, c = cell
                terms = [((a, m), (m, c), F.restriction((a, m), cell), F.restriction((m, c), cell))
                         for m in cx.middles(a, c, k)]
                out.append((cell, self.offsets[k + l][cell], terms))
            self._cup_terms[key] = out
        return self._cup_terms[key]

    def value(self, k: int, vector: int, cell: tuple) -> int:
        """ Component of a k-chain on one cell, as a packed stalk vector."""
        start = self.offsets[k][cell]
        width = self.coefficients.stalk_dim(cell)
        return (vector >> start) & ((1 << width) - 1)

    def chain(self, k: int, values: dict) -> int:
        out = 0
        for cell, v in values.items():
            out |= v << self.offsets[k][cell]
        return out


def check_functoriality(complex: CubicalComplex, F) -> None:
    """ Compares composites along every length-2 chain of faces with the direct map.

    :raises CoefficientConsistencyError: on the first disagreement
    """
    is_sheaf = isinstance(F, CellularSheaf)
    for cell in complex.all_cells():
        for face in complex.facets(cell):
            for small in complex.facets(face):
                if is_sheaf:
                    composite = F.restriction(face, cell) @ F.restriction(small, face)
                    direct = F.restriction(small, cell)
                else:
                    composite = F.extension(face, small) @ F.extension(cell, face)
                    direct = F.extension(cell, small)
                if composite != direct:
                    logging.error(f"check_functoriality: {small} < {face} < {cell}")
                    raise CoefficientConsistencyError(f"maps along {small} < {face} < {cell} do not compose")


def complex_with_coefficients(complex: CubicalComplex, F, check: bool = True) -> CellularChainComplex:
    """ Cellular chains of a cosheaf or cochains of a sheaf.

    For a cosheaf, d c = sum over facets f of c of the extension of c to f. For a
    sheaf, (d alpha)(c) = sum over facets f of c of the restriction of alpha(f) to c.

    :param CubicalComplex complex: Cells carrying the coefficients.
    :param F: CellularCosheaf or CellularSheaf.
    :param bool check: Verify functoriality first.
    :return: Chain complex (degree -1) or cochain complex (degree +1) with its cell layout
    :rtype: CellularChainComplex
    :raises CoefficientConsistencyError: if F is not functorial
    """
    if check:
        check_functoriality(complex, F)
    is_sheaf = isinstance(F, CellularSheaf)
    dims, offsets = [], {}
    for k in range(complex.dim + 1):
        offsets[k] = {}
        total = 0
        for cell in complex.cells[k]:
            offsets[k][cell] = total
            total += F.stalk_dim(cell)
        dims.append(total)

    differentials = {}
    for k in range(1, complex.dim + 1):
        entries: dict = {}
        for cell in complex.cells[k]:
            for face in complex.facets(cell):
                if is_sheaf:
                    block = F.restriction(face, cell)
                    row0, col0 = offsets[k][cell], offsets[k - 1][face]
                else:
                    block = F.extension(cell, face)
                    row0, col0 = offsets[k - 1][face], offsets[k][cell]
                for j, col in enumerate(block.columns):
                    entries[col0 + j] = entries.get(col0 + j, 0) ^ (col << row0)
        if is_sheaf:
            differentials[k - 1] = F2Matrix(dims[k], dims[k - 1],
                                            tuple(entries.get(j, 0) for j in range(dims[k - 1])))
        else:
            differentials[k] = F2Matrix(dims[k - 1], dims[k], tuple(entries.get(j, 0) for j in range(dims[k])))
    return CellularChainComplex(complex, F, dims, offsets, differentials, 1 if is_sheaf else -1)


def cup(alpha: int, k: int, beta: int, l: int, C: CellularChainComplex) -> int:
    """ Cup product of cochains with coefficients in a sheaf of algebras.

    (alpha u beta)(a; c) is the sum over middles m, a <= m <= c with dim m = dim a + k,
    of the product at (a; c) of alpha(a; m) and beta(m; c), both restricted to (a; c).

    :param int alpha: Packed k-cochain.
    :param int k: Degree of alpha.
    :param int beta: Packed l-cochain.
    :param int l: Degree of beta.
    :param CellularChainComplex C: Cochain complex of a sheaf of algebras.
    :return: Packed (k+l)-cochain
    :rtype: int
    :raises DegreeError: if the degrees are negative or exceed the complex dimension
    """
    if C.degree != 1:
        logging.error("cup: expected a cochain complex")
        raise DegreeError("cup products are defined on cochains")
    if k < 0 or l < 0 or k + l > C.complex.dim:
        logging.error(f"cup: degrees {k} and {l} are not composable")
        raise DegreeError(f"cannot multiply cochains of degrees {k} and {l} on a complex of dimension {C.complex.dim}")
    if alpha >> C.dims[k] or beta >> C.dims[l]:
        logging.error("cup: cochain does not fit its degree")
        raise DegreeError(f"cochains do not live in degrees {k} and {l}")
    F = C.coefficients
    out = 0
    for cell, start, terms in C.cup_terms(k, l):
        total = 0
        for left, right, to_left, to_right in terms:
            x = C.value(k, alpha, left)
            if not x:
                continue
            y = C.value(l, beta, right)
            if y:
                total ^= F.product(cell, to_left.apply(x), to_right.apply(y))
        if total:
            out |= total << start
    return out


def unit_cochain(C: CellularChainComplex) -> int:
    return C.chain(0, {cell: C.coefficients.unit(cell) for cell in C.complex.cells[0]})


def simplicial_chain_complex(poset: SimplexPoset) -> ChainComplexF2:
    """ Simplicial chains of a Delta-complex over F2, one generator per element."""
    by_dim = {k: poset.elements(k) for k in range(poset.dim + 1)}
    index = {k: {s: i for i, s in enumerate(by_dim[k])} for k in by_dim}
    differentials = {}
    for k in range(1, poset.dim + 1):
        cols = []
        for s in by_dim[k]:
            col = 0
            for f in poset.facets[s]:
                col ^= 1 << index[k - 1][f]
            cols.append(col)
        differentials[k] = F2Matrix(len(by_dim[k - 1]), len(cols), tuple(cols))
    return ChainComplexF2([len(by_dim[k]) for k in range(poset.dim + 1)], differentials, -1)
