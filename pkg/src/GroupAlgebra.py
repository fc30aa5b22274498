from functools import lru_cache
from itertools import combinations
from typing import Optional
import logging
from src.F2Linalg import *
from src.Exterior import *


# Elements of the group algebra F2[V], V = F2^m, and functions V -> F2 share one
# encoding: an int with bit v set when the coefficient of x^v (resp. the value at v)
# is 1. Points v of V are ints < 2^m.


def monomial(v: int) -> int:
    return 1 << v


def group_multiply(a: int, b: int) -> int:
    """ Product in F2[V]: x^v x^w = x^(v + w)."""
    out = 0
    for v in bits(a):
        for w in bits(b):
            out ^= 1 << (v ^ w)
    return out


def augmentation(a: int) -> int:
    return parity(a)


def basis_product(vectors: list[int], m: int) -> int:
    """ prod over the given vectors b of (1 + x^b)."""
    out = 1
    for b in vectors:
        out = group_multiply(out, 1 | (1 << b))
    return out


def _subset_indicator(S: int, m: int) -> int:
    # prod over i in S of (1 + x^(e_i)) is the sum of x^v over v contained in S
    out = 0
    for v in range(1 << m):
        if v & S == v:
            out |= 1 << v
    return out


@lru_cache(maxsize = None)
def aug_power_basis(m: int, k: int) -> Subspace:
    """ The k-th power of the augmentation ideal of F2[F2^m].

    :param int m: Dimension of V.
    :param int k: Filtration index; k <= 0 gives the whole algebra, k > m gives 0.
    :return: Subspace of F2^(2^m) spanned by the products over |S| >= k of (1 + x^(e_i))
    :rtype: Subspace
    """
    gens = [_subset_indicator(S, m) for S in range(1 << m) if weight(S) >= k]
    return span(gens, 1 << m)


def aug_power_of_subspace(W: Subspace, k: int) -> Subspace:
    """ m^k of the subalgebra F2[W] inside F2[V], V = F2^(W.ambient_dim)."""
    m = W.ambient_dim
    gens = []
    for size in range(max(k, 0), W.dim + 1):
        for combo in combinations(W.basis, size):
            gens.append(basis_product(list(combo), m))
    return span(gens, 1 << m)


def group_algebra_of_subspace(W: Subspace) -> Subspace:
    m = W.ambient_dim
    elements = {0}
    for b in W.basis:
        elements |= {x ^ b for x in elements}
    return span((1 << w for w in elements), 1 << m)


def subspaces_of_dim(m: int, k: int) -> list[Subspace]:
    """ All k-dimensional subspaces of F2^m, each once."""
    found = {}
    for combo in combinations(range(1, 1 << m), k):
        W = span(combo, m)
        if W.dim == k:
            found[W.basis] = W
    return [found[key] for key in sorted(found)]


def aug_power_by_subspace_sums(m: int, k: int) -> Subspace:
    """ Span of the sums of x^w over the k-dimensional subspaces W, an independent description of m^k."""
    if k > m:
        return Subspace.zero(1 << m)
    gens = []
    for W in subspaces_of_dim(m, k):
        element = 0
        for w in range(1 << m):
            if W.contains(w):
                element |= 1 << w
        gens.append(element)
    return span(gens, 1 << m)


def superset_transform(a: int, m: int) -> int:
    """ c_S = sum over v containing S of a_v: coordinates of a in the basis prod_(i in S) (1 + x^(e_i))."""
    values = [(a >> v) & 1 for v in range(1 << m)]
    for i in range(m):
        step = 1 << i
        for v in range(1 << m):
            if not v & step:
                values[v] ^= values[v | step]
    out = 0
    for v, x in enumerate(values):
        if x:
            out |= 1 << v
    return out


def subset_transform(f: int, m: int) -> int:
    """ a_S = sum over v contained in S of f(v): the algebraic normal form of a truth table."""
    values = [(f >> v) & 1 for v in range(1 << m)]
    for i in range(m):
        step = 1 << i
        for v in range(1 << m):
            if v & step:
                values[v] ^= values[v ^ step]
    out = 0
    for v, x in enumerate(values):
        if x:
            out |= 1 << v
    return out


def filtration_level(a: int, m: int) -> Optional[int]:
    """ Largest k with a in m^k, None for a = 0."""
    coords = superset_transform(a, m)
    if coords == 0:
        return None
    return min(weight(S) for S in bits(coords))


def eta(k: int, element: int, m: int) -> int:
    """ The isomorphism from the k-th exterior power of V onto m^k / m^(k+1).

    e_S maps to the class of prod over i in S of (1 + x^(e_i)); the returned int is
    that canonical representative.

    :param int k: Degree.
    :param int element: Packed k-vector of F2^m.
    :param int m: Dimension of V.
    :return: Representative in F2[V]
    :rtype: int
    """
    out = 0
    for i in bits(element):
        out ^= _subset_indicator(subsets(m, k)[i], m)
    return out


def eta_inverse(k: int, a: int, m: int) -> int:
    """ Inverse of eta: the image of a in m^k / m^(k+1), as a packed k-vector.

    :raises InvariantViolationError: if a is not in m^k
    """
    coords = superset_transform(a, m)
    index = subset_index(m, k)
    out = 0
    for S in bits(coords):
        size = weight(S)
        if size < k:
            logging.error(f"eta_inverse: element not in the {k}-th power of the augmentation ideal")
            raise InvariantViolationError(f"element {a:b} is not in m^{k}")
        if size == k:
            out |= 1 << index[S]
    return out


# Functions on V


def monomial_function(S: int, m: int) -> int:
    """ Truth table of prod over i in S of v_i."""
    out = 0
    for v in range(1 << m):
        if v & S == S:
            out |= 1 << v
    return out


def degree(f: int, m: int) -> Optional[int]:
    """ Degree of f as a reduced polynomial, None for the zero function.

    :param int f: Truth table over the 2^m points.
    :param int m: Dimension of V.
    :return: The degree, or None when f = 0
    :rtype: Optional[int]
    """
    anf = subset_transform(f, m)
    if anf == 0:
        return None
    return max(weight(S) for S in bits(anf))


@lru_cache(maxsize = None)
def degree_filtration(m: int, k: int) -> Subspace:
    """ O^(k): functions of degree at most k, spanned by the monomials of degree <= k."""
    gens = [monomial_function(S, m) for S in range(1 << m) if weight(S) <= k]
    return span(gens, 1 << m)


def function_multiply(f: int, g: int) -> int:
    return f & g


def pairing(f: int, a: int) -> int:
    """ <f; a> = sum over v of f(v) a_v."""
    return parity(f & a)


def contract_function(f: int, a: int) -> int:
    """ f . a = sum over v of f(v) a_v x^v."""
    return f & a


def characteristic_function(points) -> int:
    out = 0
    for v in points:
        out |= 1 << v
    return out


def affine_subspace(W: Subspace, offset: int) -> list[int]:
    out = []
    for v in range(1 << W.ambient_dim):
        if W.contains(v ^ offset):
            out.append(v)
    return out
