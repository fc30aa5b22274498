from functools import lru_cache
from itertools import combinations
from src.F2Linalg import *


# Exterior powers of F2^m. A k-vector is packed over the basis e_S of k-subsets S,
# ordered as itertools.combinations(range(m), k); subsets themselves are bitmasks.


@lru_cache(maxsize = None)
def subsets(m: int, k: int) -> tuple[int, ...]:
    """ k-subsets of range(m) as bitmasks, in combinations order.

    :param int m: Size of the ground set.
    :param int k: Size of the subsets.
    :return: Tuple of bitmasks
    :rtype: tuple[int, ...]
    """
    if k < 0 or k > m:
        return ()
    out = []
    for combo in combinations(range(m), k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        out.append(mask)
    return tuple(out)


@lru_cache(maxsize = None)
def subset_index(m: int, k: int) -> dict[int, int]:
    return {mask: i for i, mask in enumerate(subsets(m, k))}


def compress(mask: int, coords: tuple[int, ...]) -> int:
    """ Re-indexes the bits of mask lying in coords to positions 0..len(coords)-1."""
    out = 0
    for new, old in enumerate(coords):
        if (mask >> old) & 1:
            out |= 1 << new
    return out


def expand(mask: int, coords: tuple[int, ...]) -> int:
    out = 0
    for new, old in enumerate(coords):
        if (mask >> new) & 1:
            out |= 1 << old
    return out


def minor(vectors: list[int], cols: int) -> int:
    """ Determinant mod 2 of the square matrix with rows vectors restricted to cols."""
    if len(vectors) != weight(cols):
        return 0
    ech = Echelon()
    for v in vectors:
        independent, _ = ech.add(v & cols)
        if not independent:
            return 0
    return 1


def wedge(vectors: list[int], m: int) -> int:
    """ The k-vector v_1 ^ ... ^ v_k of F2^m in the subset basis.

    :param list vectors: Packed vectors of F2^m.
    :param int m: Ambient dimension.
    :return: Packed element of the k-th exterior power
    :rtype: int
    """
    k = len(vectors)
    out = 0
    for i, cols in enumerate(subsets(m, k)):
        if minor(vectors, cols):
            out |= 1 << i
    return out


def exterior_power_of_subspace(W: Subspace, k: int) -> Subspace:
    """ The k-th exterior power of W as a subspace of the k-th exterior power of the ambient space."""
    m = W.ambient_dim
    gens = [wedge(list(combo), m) for combo in combinations(W.basis, k)]
    return span(gens, len(subsets(m, k)))


def compound(f: F2Matrix, k: int) -> F2Matrix:
    """ The map induced by f on k-th exterior powers."""
    cols = []
    for mask in subsets(f.n_cols, k):
        cols.append(wedge([f.columns[i] for i in bits(mask)], f.n_rows))
    return F2Matrix(len(subsets(f.n_rows, k)), len(cols), tuple(cols))


def wedge_product(a: int, k: int, b: int, l: int, m: int) -> int:
    # e_S ^ e_T = e_{S u T} when disjoint; no signs over F2
    src_a, src_b = subsets(m, k), subsets(m, l)
    index = subset_index(m, k + l)
    out = 0
    for i in bits(a):
        S = src_a[i]
        for j in bits(b):
            T = src_b[j]
            if S & T == 0:
                out ^= 1 << index[S | T]
    return out


def contract(alpha: int, p: int, vector: int, k: int, m: int) -> int:
    """ Contraction of a k-vector by a p-form.

    Defined by beta(alpha . v) = (beta ^ alpha)(v); in subset coordinates
    e*_A . e_S = e_(S minus A) when A is contained in S, and 0 otherwise.

    :param int alpha: Packed element of the p-th exterior power of the dual.
    :param int p: Degree of alpha.
    :param int vector: Packed k-vector.
    :param int k: Degree of vector.
    :param int m: Ambient dimension.
    :return: Packed (k-p)-vector
    :rtype: int
    """
    if p > k:
        return 0
    forms, vecs = subsets(m, p), subsets(m, k)
    index = subset_index(m, k - p)
    out = 0
    for i in bits(alpha):
        A = forms[i]
        for j in bits(vector):
            S = vecs[j]
            if A & S == A:
                out ^= 1 << index[S ^ A]
    return out


def contraction_matrix(alpha: int, p: int, k: int, m: int) -> F2Matrix:
    cols = tuple(contract(alpha, p, 1 << j, k, m) for j in range(len(subsets(m, k))))
    return F2Matrix(len(subsets(m, k - p)), len(cols), cols)


def restrict_form(alpha: int, p: int, n: int, coords: tuple[int, ...]) -> int:
    """ Restriction of a p-form on F2^n to the coordinate subspace spanned by coords.

    Used to read a form that vanishes on a sedentarity space as a form on the
    quotient, whose basis is the classes of the free coordinates.
    """
    index = subset_index(len(coords), p)
    allowed = 0
    for c in coords:
        allowed |= 1 << c
    out = 0
    forms = subsets(n, p)
    for i in bits(alpha):
        A = forms[i]
        if A & allowed == A:
            out |= 1 << index[compress(A, coords)]
    return out
