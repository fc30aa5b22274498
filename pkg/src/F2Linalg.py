from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional
import logging
import numpy as np


class DimensionMismatchError(Exception):
    # Operands live in different ambient spaces

    def __init__(self, message):
        """Handles mismatched dimensions of matrices and subspaces

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


class InvariantViolationError(Exception):
    # A containment or consistency precondition failed upstream

    def __init__(self, message):
        """Handles violated preconditions of the linear algebra layer

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


def weight(vector: int) -> int:
    """ Number of nonzero coordinates of a packed vector."""
    return bin(vector).count("1")


def parity(vector: int) -> int:
    return weight(vector) & 1


def bits(vector: int) -> list[int]:
    """ Indices of the nonzero coordinates of a packed vector, ascending.

    :param int vector: Packed F2 vector, bit i is coordinate i.
    :return: List of coordinate indices
    :rtype: list[int]
    """
    out = []
    while vector:
        low = vector & -vector
        out.append(low.bit_length() - 1)
        vector ^= low
    return out


class Echelon:
    """ Incremental elimination over F2 with highest-bit pivots.

    Each stored row carries a tag, an int recording which inserted vectors were
    combined to produce it, so that dependencies and coordinates can be read off.
    """

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vector: int, tag: int = 0) -> tuple[int, int]:
        """ Clears leading pivots of vector until its top bit is not a pivot.

        :param int vector: Packed vector to reduce.
        :param int tag: Tag to accumulate alongside the vector.
        :return: The remainder and the accumulated tag
        :rtype: tuple[int, int]
        """
        rows = self.rows
        while vector:
            row = rows.get(vector.bit_length() - 1)
            if row is None:
                break
            vector ^= row[0]
            tag ^= row[1]
        return vector, tag

    def add(self, vector: int, tag: int = 0) -> tuple[bool, int]:
        """ Inserts a vector.

        :return: (True, tag) if the vector was independent, otherwise (False, dependency tag)
        :rtype: tuple[bool, int]
        """
        vector, tag = self.reduce(vector, tag)
        if vector == 0:
            return False, tag
        self.rows[vector.bit_length() - 1] = (vector, tag)
        return True, tag

    def canonical_basis(self) -> tuple[int, ...]:
        """ Fully reduced basis of the span, sorted by pivot ascending.

        A reduced row vanishes on every other pivot below its own, so one pass
        over the pivot bits of a row clears all of them.
        """
        reduced: dict[int, int] = {}
        mask = 0
        for pivot in sorted(self.rows):
            vector = self.rows[pivot][0]
            for lower in bits(vector & mask):
                vector ^= reduced[lower]
            reduced[pivot] = vector
            mask |= 1 << pivot
        return tuple(reduced[p] for p in sorted(reduced))


@dataclass(frozen = True)
class F2Matrix:
    """ Matrix over F2 with immutable shape.

    Storage packs each column into one int (bit i of column j is entry (i, j)).
    Callers exchange explicit 0/1 arrays through from_array and to_array.
    """

    n_rows: int
    n_cols: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if len(self.columns) != self.n_cols:
            logging.error("F2Matrix: column count mismatch")
            raise DimensionMismatchError(f"expected {self.n_cols} columns, got {len(self.columns)}")
        bound = 1 << self.n_rows
        for col in self.columns:
            if col < 0 or col >= bound:
                logging.error("F2Matrix: column out of range")
                raise DimensionMismatchError(f"column {col:b} does not fit in {self.n_rows} rows")

    @staticmethod
    def zeros(n_rows: int, n_cols: int) -> "F2Matrix":
        return F2Matrix(n_rows, n_cols, (0,) * n_cols)

    @staticmethod
    def identity(n: int) -> "F2Matrix":
        return F2Matrix(n, n, tuple(1 << i for i in range(n)))

    @staticmethod
    def from_columns(n_rows: int, columns: Iterable[int]) -> "F2Matrix":
        columns = tuple(columns)
        return F2Matrix(n_rows, len(columns), columns)

    @staticmethod
    def from_array(array) -> "F2Matrix":
        """ Builds a matrix from a 2D array of integers, reduced mod 2.

        :param array: Anything numpy can turn into a 2D integer array.
        :return: The packed matrix
        :rtype: F2Matrix
        """
        arr = np.asarray(array, dtype = np.int64) % 2
        if arr.ndim != 2:
            logging.error("F2Matrix.from_array: not a 2D array")
            raise DimensionMismatchError(f"expected a 2D array, got shape {arr.shape}")
        n_rows, n_cols = arr.shape
        columns = []
        for j in range(n_cols):
            col = 0
            for i in np.flatnonzero(arr[:, j]):
                col |= 1 << int(i)
            columns.append(col)
        return F2Matrix(n_rows, n_cols, tuple(columns))

    def to_array(self) -> np.ndarray:
        arr = np.zeros((self.n_rows, self.n_cols), dtype = np.uint8)
        for j, col in enumerate(self.columns):
            for i in bits(col):
                arr[i, j] = 1
        return arr

    def entry(self, i: int, j: int) -> int:
        return (self.columns[j] >> i) & 1

    def apply(self, vector: int) -> int:
        """ Image of a packed vector.

        :param int vector: Packed vector of length n_cols.
        :return: Packed vector of length n_rows
        :rtype: int
        """
        out = 0
        for j in bits(vector):
            out ^= self.columns[j]
        return out

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.n_cols != other.n_rows:
            logging.error("F2Matrix product: inner dimensions differ")
            raise DimensionMismatchError(f"cannot compose {self.n_rows}x{self.n_cols} with "
                                         f"{other.n_rows}x{other.n_cols}")
        return F2Matrix(self.n_rows, other.n_cols, tuple(self.apply(c) for c in other.columns))

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            logging.error("F2Matrix sum: shapes differ")
            raise DimensionMismatchError("cannot add matrices of different shapes")
        return F2Matrix(self.n_rows, self.n_cols, tuple(a ^ b for a, b in zip(self.columns, other.columns)))

    def transpose(self) -> "F2Matrix":
        out = [0] * self.n_rows
        for j, col in enumerate(self.columns):
            for i in bits(col):
                out[i] |= 1 << j
        return F2Matrix(self.n_cols, self.n_rows, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.columns)

    def rank(self) -> int:
        ech = Echelon()
        for col in self.columns:
            ech.add(col)
        return len(ech)

    def kernel(self) -> "Subspace":
        """ Null space of the matrix, as a canonical subspace of F2^n_cols."""
        ech = Echelon()
        relations = []
        for j, col in enumerate(self.columns):
            independent, tag = ech.add(col, 1 << j)
            if not independent:
                relations.append(tag)
        return span(relations, self.n_cols)

    def image(self) -> "Subspace":
        return span(self.columns, self.n_rows)


@dataclass(frozen = True)
class Subspace:
    """ Subspace of F2^ambient_dim in canonical form.

    basis holds the reduced column-echelon basis: every vector has a distinct
    pivot (its highest nonzero coordinate), no other basis vector touches that
    pivot, and vectors are listed by pivot ascending. Equal subspaces therefore
    have identical bases.
    """

    ambient_dim: int
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(v.bit_length() - 1 for v in self.basis)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, tuple(1 << i for i in range(ambient_dim)))

    @cached_property
    def pivot_mask(self) -> int:
        out = 0
        for v in self.basis:
            out |= 1 << (v.bit_length() - 1)
        return out

    @cached_property
    def _by_pivot(self) -> dict[int, int]:
        return {v.bit_length() - 1: v for v in self.basis}

    def reduce(self, vector: int) -> int:
        """ Canonical representative of vector modulo the subspace.

        The result vanishes on every pivot coordinate; it is the smallest
        integer encoding in the coset. Basis vectors vanish on each other's
        pivots, so only the pivot bits of the input need clearing.

        :param int vector: Packed vector.
        :return: Packed representative
        :rtype: int
        """
        rows = self._by_pivot
        for pivot in bits(vector & self.pivot_mask):
            vector ^= rows[pivot]
        return vector

    def contains(self, vector: int) -> bool:
        return self.reduce(vector) == 0

    def issubspace(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(v) for v in self.basis)

    def to_matrix(self) -> F2Matrix:
        return F2Matrix(self.ambient_dim, self.dim, self.basis)

    def annihilator(self) -> "Subspace":
        """ Vectors x with u.x = 0 for every u in the subspace."""
        return F2Matrix(self.ambient_dim, self.dim, self.basis).transpose().kernel()

    def free_coordinates(self) -> tuple[int, ...]:
        # coordinates that survive in the quotient by this subspace
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    def __str__(self) -> str:
        return f"Subspace(dim={self.dim} of {self.ambient_dim})"


def _check_ambient(U: Subspace, W: Subspace) -> None:
    if U.ambient_dim != W.ambient_dim:
        logging.error("Subspaces in different ambient spaces")
        raise DimensionMismatchError(f"ambient dimensions {U.ambient_dim} and {W.ambient_dim} differ")


def span(vectors: Iterable[int], ambient_dim: int) -> Subspace:
    """ Canonical subspace spanned by packed vectors.

    :param vectors: Packed vectors of F2^ambient_dim.
    :param int ambient_dim: Dimension of the ambient space.
    :return: The span in canonical form
    :rtype: Subspace
    """
    ech = Echelon()
    bound = 1 << ambient_dim
    for v in vectors:
        if v < 0 or v >= bound:
            logging.error("span: vector outside the ambient space")
            raise DimensionMismatchError(f"vector {v:b} does not fit in dimension {ambient_dim}")
        ech.add(v)
    return Subspace(ambient_dim, ech.canonical_basis())


def canonicalize(generators: F2Matrix) -> Subspace:
    """ Canonical form of the column span of a generator matrix.

    :param F2Matrix generators: Matrix whose columns generate the subspace.
    :return: The span in reduced column-echelon form
    :rtype: Subspace
    """
    return span(generators.columns, generators.n_rows)


def sum_and_intersection(U: Subspace, W: Subspace) -> tuple[Subspace, Subspace]:
    """ Sum and intersection from a single elimination.

    Vectors of U enter tagged with themselves and vectors of W with tag 0, so every
    vector of W that becomes dependent exposes, in its tag, an element of U that
    also lies in W.

    :param Subspace U: First subspace.
    :param Subspace W: Second subspace.
    :return: (U + W, U intersect W)
    :rtype: tuple[Subspace, Subspace]
    """
    _check_ambient(U, W)
    ech = Echelon()
    for u in U.basis:
        ech.add(u, u)
    common = []
    for w in W.basis:
        independent, tag = ech.add(w, 0)
        if not independent:
            common.append(tag)
    n = U.ambient_dim
    total = Subspace(n, ech.canonical_basis())
    return total, span(common, n)


def subspace_sum(*spaces: Subspace) -> Subspace:
    if not spaces:
        logging.error("subspace_sum: nothing to add")
        raise DimensionMismatchError("subspace_sum needs at least one subspace")
    n = spaces[0].ambient_dim
    for S in spaces:
        _check_ambient(spaces[0], S)
    return span((v for S in spaces for v in S.basis), n)


def intersection(U: Subspace, W: Subspace) -> Subspace:
    _check_ambient(U, W)
    if U.dim == U.ambient_dim or W.dim == 0:
        return W
    if W.dim == W.ambient_dim or U.dim == 0:
        return U
    return sum_and_intersection(U, W)[1]


def image_of(f: F2Matrix, U: Subspace) -> Subspace:
    if f.n_cols != U.ambient_dim:
        logging.error("image_of: map and subspace do not match")
        raise DimensionMismatchError(f"map from dimension {f.n_cols} applied to subspace of {U.ambient_dim}")
    return span((f.apply(u) for u in U.basis), f.n_rows)


def preimage(f: F2Matrix, W: Subspace) -> Subspace:
    """ All vectors whose image lies in W.

    :param F2Matrix f: Linear map.
    :param Subspace W: Subspace of the target.
    :return: The preimage of W under f
    :rtype: Subspace
    """
    if f.n_rows != W.ambient_dim:
        logging.error("preimage: map and subspace do not match")
        raise DimensionMismatchError(f"map into dimension {f.n_rows} pulled back from {W.ambient_dim}")
    reduced = F2Matrix(f.n_rows, f.n_cols, tuple(W.reduce(c) for c in f.columns))
    return reduced.kernel()


class QuotientBasis:
    """ Coordinates on a subquotient num / den.

    reps lists vectors of num whose classes form a basis of the quotient; they are
    taken from the canonical basis of num in pivot order, so the choice is
    deterministic.
    """

    def __init__(self, num: Subspace, den: Subspace):
        _check_ambient(num, den)
        if not den.issubspace(num):
            logging.error("QuotientBasis: denominator not inside numerator")
            raise InvariantViolationError("denominator is not contained in the numerator")
        self.num = num
        self.den = den
        self.reps: list[int] = []
        self._ech = Echelon()
        for v in den.basis:
            self._ech.add(v, 0)
        for v in num.basis:
            independent, _ = self._ech.add(v, 1 << len(self.reps))
            if independent:
                self.reps.append(v)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coordinates(self, vector: int) -> int:
        """ Coordinates of the class of vector in the basis of reps.

        :param int vector: Element of num.
        :return: Packed coordinate vector of length dim
        :rtype: int
        :raises InvariantViolationError: if vector is not in num
        """
        remainder, tag = self._ech.reduce(vector, 0)
        if remainder:
            logging.error("QuotientBasis: vector outside the numerator")
            raise InvariantViolationError("vector does not lie in the numerator of the subquotient")
        return tag

    def lift(self, coords: int) -> int:
        out = 0
        for k in bits(coords):
            out ^= self.reps[k]
        return out


def induced_map_on_subquotient(f: F2Matrix, src_num: Subspace, src_den: Subspace,
                               dst_num: Subspace, dst_den: Subspace,
                               src: Optional[QuotientBasis] = None,
                               dst: Optional[QuotientBasis] = None) -> F2Matrix:
    """ Matrix of the map src_num/src_den -> dst_num/dst_den induced by f.

    Precomputed coset bases may be passed in to keep coordinates consistent
    across several calls.

    :param F2Matrix f: Linear map between the ambient spaces.
    :return: Matrix in the coset bases of QuotientBasis(src_num, src_den) and QuotientBasis(dst_num, dst_den)
    :rtype: F2Matrix
    :raises InvariantViolationError: if a containment precondition fails
    """
    if f.n_cols != src_num.ambient_dim or f.n_rows != dst_num.ambient_dim:
        logging.error("induced_map_on_subquotient: shapes do not match")
        raise DimensionMismatchError("map shape does not match the subquotients")
    for v in src_num.basis:
        if not dst_num.contains(f.apply(v)):
            logging.error("induced_map_on_subquotient: f(src_num) not in dst_num")
            raise InvariantViolationError("f does not map the source numerator into the target numerator")
    for v in src_den.basis:
        if not dst_den.contains(f.apply(v)):
            logging.error("induced_map_on_subquotient: f(src_den) not in dst_den")
            raise InvariantViolationError("f does not map the source denominator into the target denominator")
    src = src if src is not None else QuotientBasis(src_num, src_den)
    dst = dst if dst is not None else QuotientBasis(dst_num, dst_den)
    return F2Matrix(dst.dim, src.dim, tuple(dst.coordinates(f.apply(r)) for r in src.reps))


def solve(f: F2Matrix, target: int) -> Optional[int]:
    """ Some x with f x = target, or None when target is not in the image.

    :param F2Matrix f: Linear map.
    :param int target: Packed vector of length f.n_rows.
    :return: Packed solution of length f.n_cols, or None
    :rtype: Optional[int]
    """
    ech = Echelon()
    for j, col in enumerate(f.columns):
        ech.add(col, 1 << j)
    remainder, tag = ech.reduce(target, 0)
    return tag if remainder == 0 else None
