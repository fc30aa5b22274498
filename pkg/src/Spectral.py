from dataclasses import dataclass, field
from typing import Optional
import logging
from src.F2Linalg import *
from src.CubicalComplex import *


class FiltrationError(Exception):
    # Custom exception for filtrations that are not compatible with the differential

    def __init__(self, message):
        """Handles invalid filtered complexes

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


class StructureViolationError(Exception):
    # Custom exception for pages that break a structural property the engine relies on

    def __init__(self, message):
        """Handles structural failures of computed pages

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


class FilteredComplexF2:
    """ A finite chain complex with a bounded filtration of length L.

    Homological complexes (degree -1) carry a decreasing filtration F_p with
    F_p = C for p <= 0 and F_p = 0 for p > L. Cohomological complexes (degree +1)
    carry an increasing filtration F^p with F^p = 0 for p < 0 and F^p = C for p >= L.
    filtration holds the remaining steps, keyed by (p, q).
    """

    def __init__(self, complex: ChainComplexF2, filtration: dict, length: int, check: bool = True):
        """ Initializes the filtered complex

        :param ChainComplexF2 complex: The underlying complex.
        :param dict filtration: (p, q) -> Subspace of C_q for the steps strictly inside the bounds.
        :param int length: The filtration length L.
        :param bool check: Verify nesting and compatibility with the differential.
        :raises FiltrationError: if the filtration is not nested or not preserved by the differential
        """
        self.complex: ChainComplexF2 = complex
        self.filtration: dict = dict(filtration)
        self.length: int = length
        self.increasing: bool = complex.degree == 1
        self._bounds: dict = {}
        if check:
            self.validate()

    @property
    def direction(self) -> str:
        return "cohomology" if self.increasing else "homology"

    def F(self, p: int, q: int) -> Subspace:
        if q < 0 or q > self.complex.top:
            return Subspace.zero(0)
        p = self.clip(p)
        if self.increasing:
            bound = "zero" if p < 0 else "full" if p >= self.length else None
        else:
            bound = "full" if p <= 0 else "zero" if p > self.length else None
        if bound is None:
            return self.filtration[(p, q)]
        if (bound, q) not in self._bounds:
            total = self.complex.dims[q]
            self._bounds[(bound, q)] = Subspace.full(total) if bound == "full" else Subspace.zero(total)
        return self._bounds[(bound, q)]

    def clip(self, p: int) -> int:
        """ The index in -1..L (increasing) or 0..L+1 (decreasing) with the same step as p."""
        if self.increasing:
            return min(max(p, -1), self.length)
        return min(max(p, 0), self.length + 1)

    def p_range(self) -> range:
        return range(0, self.length + 1)

    def validate(self) -> None:
        C = self.complex
        for q in range(C.top + 1):
            for p in range(-1, self.length + 2):
                small, big = (self.F(p, q), self.F(p + 1, q)) if self.increasing else (self.F(p + 1, q), self.F(p, q))
                if not small.issubspace(big):
                    logging.error(f"FilteredComplexF2: filtration not nested at p={p}, q={q}")
                    raise FiltrationError(f"filtration is not nested at p = {p}, q = {q}")
                target = q + C.degree
                if 0 <= target <= C.top:
                    image = image_of(C.differential(q), self.F(p, q))
                    if not image.issubspace(self.F(p, target)):
                        logging.error(f"FilteredComplexF2: differential leaves F_{p} in degree {q}")
                        raise FiltrationError(f"the differential does not preserve filtration step {p} in degree {q}")

    def graded_dim(self, p: int, q: int) -> int:
        if self.increasing:
            return self.F(p, q).dim - self.F(p - 1, q).dim
        return self.F(p, q).dim - self.F(p + 1, q).dim


def dualize(C: FilteredComplexF2) -> FilteredComplexF2:
    """ Transposed complex with the annihilator filtration.

    A decreasing F_p becomes the increasing F^p = Ann(F_(p+1)); an increasing F^p
    becomes the decreasing F_p = Ann(F^(p-1)). Graded pieces are dual to each other.

    :param FilteredComplexF2 C: A filtered complex of either direction.
    :return: The dual filtered complex
    :rtype: FilteredComplexF2
    """
    dual = C.complex.transpose()
    filtration = {}
    for q in range(C.complex.top + 1):
        for p in range(0, C.length + 1):
            if C.increasing:
                if 1 <= p <= C.length:
                    filtration[(p, q)] = C.F(p - 1, q).annihilator()
            elif 0 <= p < C.length:
                filtration[(p, q)] = C.F(p + 1, q).annihilator()
    return FilteredComplexF2(dual, filtration, C.length, check = False)


@dataclass
class Page:
    r: int
    dims: dict = field(default_factory = dict)
    differentials: dict = field(default_factory = dict)
    bases: dict = field(default_factory = dict)
    target_of: dict = field(default_factory = dict)

    def rank(self, p: int, q: int) -> int:
        d = self.differentials.get((p, q))
        return d.rank() if d is not None else 0

    def total_by_degree(self) -> dict:
        out: dict = {}
        for (p, q), d in self.dims.items():
            out[q] = out.get(q, 0) + d
        return out

    def is_degenerate(self) -> bool:
        return all(d.is_zero() for d in self.differentials.values())

    def to_json(self) -> dict:
        return {"r": self.r,
                "dims": [[p, q, d] for (p, q), d in sorted(self.dims.items()) if d],
                "ranks": [[p, q, self.rank(p, q)] for (p, q) in sorted(self.differentials) if self.rank(p, q)]}


class SpectralSequence:
    """ Pages of the spectral sequence of a filtered complex, computed from the defining subquotients.

    With s = +1 for decreasing filtrations and s = -1 for increasing ones,
    Z_r(p, q) = F(p, q) intersected with the preimage of F(p + s r, q + deg), and

        E_r(p, q) = Z_r(p, q) / (Z_(r-1)(p + s, q) + D Z_(r-1)(p - s (r-1), q - deg)),

    with Z_r = F for r <= 0. The differential goes from (p, q) to (p + s r, q + deg).
    """

    def __init__(self, C: FilteredComplexF2):
        self.C: FilteredComplexF2 = C
        self.sign: int = -1 if C.increasing else 1
        self.step: int = C.complex.degree
        self._Z: dict = {}
        self._preimages: dict = {}
        self.pages: list = []

    def Z(self, r: int, p: int, q: int) -> Subspace:
        if r <= 0 or q < 0 or q > self.C.complex.top:
            return self.C.F(p, q)
        # keyed by the two filtration steps involved
        key = (self.C.clip(p), q, self.C.clip(p + self.sign * r))
        if key not in self._Z:
            if 0 <= q + self.step <= self.C.complex.top:
                self._Z[key] = intersection(self.C.F(p, q), self.preimage(key[2], q))
            else:
                self._Z[key] = self.C.F(p, q)
        return self._Z[key]

    def preimage(self, p: int, q: int) -> Subspace:
        """ Chains of degree q whose differential lies in F(p, q + deg)."""
        key = (self.C.clip(p), q)
        if key not in self._preimages:
            self._preimages[key] = preimage(self.C.complex.differential(q), self.C.F(p, q + self.step))
        return self._preimages[key]

    def denominator(self, r: int, p: int, q: int) -> Subspace:
        s = self.sign
        lower = self.Z(r - 1, p + s, q)
        source_q = q - self.step
        if 0 <= source_q <= self.C.complex.top:
            D = self.C.complex.differential(source_q)
            boundary = image_of(D, self.Z(r - 1, p - s * (r - 1), source_q))
            return subspace_sum(lower, boundary)
        return lower

    def page(self, r: int) -> Page:
        C = self.C
        page = Page(r)
        for q in range(C.complex.top + 1):
            for p in C.p_range():
                num = self.Z(r, p, q)
                page.bases[(p, q)] = QuotientBasis(num, self.denominator(r, p, q))
                page.dims[(p, q)] = page.bases[(p, q)].dim
        for (p, q), source in page.bases.items():
            target_key = (p + self.sign * r, q + self.step)
            target = page.bases.get(target_key)
            if target is None or source.dim == 0 or target.dim == 0:
                continue
            D = C.complex.differential(q)
            page.differentials[(p, q)] = induced_map_on_subquotient(D, source.num, source.den, target.num,
                                                                    target.den, source, target)
            page.target_of[(p, q)] = target_key
        return page

    def compute(self) -> list:
        """ Pages r = 0..L+1, checking that each page is the homology of the previous one.

        :return: List of Page
        :rtype: list
        :raises StructureViolationError: if a page does not match the homology of its predecessor
        """
        self.pages = []
        for r in range(self.C.length + 2):
            page = self.page(r)
            if self.pages:
                previous = self.pages[-1]
                for key, d in page.dims.items():
                    incoming = [previous.rank(*src) for src, dst in previous.target_of.items() if dst == key]
                    expected = previous.dims[key] - previous.rank(*key) - sum(incoming)
                    if d != expected:
                        logging.error(f"SpectralSequence: page {r} at {key} is not the homology of page {r - 1}")
                        raise StructureViolationError(f"dim E_{r}{key} = {d}, expected {expected}")
            self.pages.append(page)
        return self.pages


def compute_pages(C: FilteredComplexF2, direction: Optional[str] = None) -> list:
    """ All pages of the spectral sequence, E_infinity being the last one.

    :param FilteredComplexF2 C: The filtered complex.
    :param str direction: "homology" or "cohomology"; the complex is dualized when it points the other way.
    :return: Pages for r = 0..L+1
    :rtype: list
    """
    if direction is not None and direction != C.direction:
        C = dualize(C)
    return SpectralSequence(C).compute()


def degeneracy_index(pages: list) -> int:
    """ Least r0 >= 0 such that every differential of every page r >= r0 vanishes."""
    r0 = 0
    for page in pages:
        if not page.is_degenerate():
            r0 = page.r + 1
    return r0


def infinity_by_degree(pages: list) -> list:
    last = pages[-1].total_by_degree()
    return [last.get(q, 0) for q in range(max(last) + 1)] if last else []


def euler_characteristics(pages: list) -> list:
    out = []
    for page in pages:
        out.append(sum((-1) ** q * d for (p, q), d in page.dims.items()))
    return out


@dataclass(frozen = True)
class PairingMatrix:
    source: tuple
    partner: tuple
    matrix: F2Matrix

    @property
    def rank(self) -> int:
        return self.matrix.rank()

    @property
    def nondegenerate(self) -> bool:
        return self.matrix.n_rows == self.matrix.n_cols == self.rank


def page_pairing(pages: list, r: int, algebra: CellularChainComplex, top: int) -> dict:
    """ Cup pairings E_r^{p,q} x E_r^{top-p,top-q} -> E_r^{top,top} on a cohomological spectral sequence.

    Representatives of both factors are multiplied with the cubical cup product
    of algebra, whose cochain coordinates must be those of the filtered complex,
    and the product is read in the coset basis of E_r^{top,top}.

    :param list pages: Cohomological pages.
    :param int r: Page number, r >= 1.
    :param CellularChainComplex algebra: Cochains of a sheaf of algebras.
    :param int top: Top degree, n - 1 for a hypersurface.
    :return: (p, q) -> PairingMatrix
    :rtype: dict
    :raises StructureViolationError: if E_r^{top,top} is not one-dimensional
    """
    page = pages[r]
    target = page.bases.get((top, top))
    if target is None or target.dim != 1:
        logging.error(f"page_pairing: E_{r}^(top,top) has dimension {target.dim if target else 0}")
        raise StructureViolationError(f"E_{r}^({top},{top}) must be one-dimensional, "
                                      f"got {target.dim if target else 0}")
    out = {}
    for (p, q), source in page.bases.items():
        partner_key = (top - p, top - q)
        partner = page.bases.get(partner_key)
        if partner is None or source.dim == 0 or partner.dim == 0:
            continue
        cols = []
        for y in partner.reps:
            col = 0
            for i, x in enumerate(source.reps):
                if target.coordinates(cup(x, q, y, top - q, algebra)):
                    col |= 1 << i
            cols.append(col)
        out[(p, q)] = PairingMatrix((p, q), partner_key, F2Matrix(source.dim, len(cols), tuple(cols)))
    return out
