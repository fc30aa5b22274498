from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Optional
import logging
from src.F2Linalg import *
from src.Polytope import *
from src.Triangulation import *
from src.CubicalComplex import *
from src.Tropical import *
from src.Spectral import *
from src.Patchwork import *


@dataclass
class InvariantRecord:
    """ Numerical invariants and theorem verdicts of one T-hypersurface.

    verdicts maps a check name to its Verdict; skipped maps the name of a check
    whose hypothesis does not hold to the reason.
    """

    signs: str
    sign_values: tuple
    betti_RX: list
    betti_RP: list
    tropical_table: list
    ell: int
    r_index: int
    iota_degree: int
    iota_P: int
    euler_characteristic: int
    degree: tuple
    component_classes: list
    conjecture_holds: bool
    homology_pages: list = field(default_factory = list)
    cohomology_pages: list = field(default_factory = list)
    verdicts: dict = field(default_factory = dict)
    skipped: dict = field(default_factory = dict)

    @property
    def counterexample(self) -> bool:
        return any(not v.ok for v in self.verdicts.values())

    def to_json(self, side: str = "both") -> dict:
        """ Plain JSON form with integer values only.

        :param str side: Which pages to include: "homology", "cohomology" or "both".
        :return: The record as a dict
        :rtype: dict
        """
        out = {"signs": self.signs, "sign_values": list(self.sign_values), "betti_RX": list(self.betti_RX),
               "betti_RP": list(self.betti_RP), "tropical_table": [list(row) for row in self.tropical_table],
               "ell": self.ell, "r_index": self.r_index, "iota_degree": self.iota_degree, "iota_P": self.iota_P,
               "euler_characteristic": self.euler_characteristic, "degree": list(self.degree),
               "component_classes": [None if c is None else list(c) for c in self.component_classes],
               "conjecture_holds": self.conjecture_holds, "counterexample": self.counterexample,
               "verdicts": {name: verdict_to_json(v) for name, v in sorted(self.verdicts.items())},
               "skipped": dict(sorted(self.skipped.items()))}
        if side in ("homology", "both"):
            out["homology_pages"] = [page.to_json() for page in self.homology_pages]
        if side in ("cohomology", "both"):
            out["cohomology_pages"] = [page.to_json() for page in self.cohomology_pages]
        return out


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    return x


def verdict_to_json(v: Verdict) -> dict:
    return {"ok": v.ok, "reason": v.reason, "witness": _plain(v.witness)}


def _check(ok: bool, reason: str, witness: tuple = ()) -> Verdict:
    return Verdict(True) if ok else Verdict(False, reason, witness)


def _require(name: str, verdict: Verdict) -> Verdict:
    if not verdict.ok:
        logging.error(f"{name}: {verdict.reason}")
        raise InternalConsistencyError(f"{name} failed: {verdict.reason}")
    return verdict


def iota(ring: CohomologyRing, alpha: int) -> int:
    """ Least q >= -1 such that alpha u beta = 0 for some nonzero beta in H^(q+1).

    :param CohomologyRing ring: Cohomology of RP.
    :param int alpha: Coordinates of a class of H^1.
    :return: iota(alpha), at most n - 1
    :rtype: int
    """
    for j in range(ring.n + 1):
        if ring.dim(j) and ring.multiplication_matrix(alpha, j).rank() < ring.dim(j):
            return j - 1
    return ring.n - 1


def iota_space(ring: CohomologyRing) -> int:
    """ Maximum of iota over all classes of H^1."""
    return max(iota(ring, alpha) for alpha in range(1 << ring.dim(1)))


def injectivity(hyp: THypersurface) -> list:
    """ For q = 0..n-1, whether i^q: H^q(RP) -> H^q(RX_eps) is injective.

    Ranks of i^q are compared with the ranks of i_q on homology.

    :raises InternalConsistencyError: if the two ranks differ
    """
    out = []
    for q in range(hyp.n):
        restriction = hyp.restriction_map(q)
        pushforward = hyp.pushforward_map(q)
        if restriction.rank() != pushforward.rank():
            logging.error(f"injectivity: rank i^{q} = {restriction.rank()}, rank i_{q} = {pushforward.rank()}")
            raise InternalConsistencyError(f"i^{q} and i_{q} have different ranks")
        out.append(restriction.rank() == restriction.n_cols)
    return out


def rank_ell(hyp: THypersurface, injective: Optional[list] = None) -> int:
    """ Largest q0 such that i^q is injective for every q <= q0, -1 if i^0 is not."""
    if hyp.is_empty():
        logging.warning("rank_ell: empty T-hypersurface, rank set to -1")
        return -1
    injective = injectivity(hyp) if injective is None else injective
    ell = -1
    for q, ok in enumerate(injective):
        if not ok:
            break
        ell = q
    return ell


class PatchworkAnalysis:
    """ Everything that depends on the triangulation only, shared by all sign distributions.

    Holds the real lift, the tropical tables, the cohomology ring of RP with its
    iota numbers, and the checks that do not involve signs.
    """

    def __init__(self, K: Triangulation, viro: bool = False, check: bool = True):
        """ Initializes the analysis of a triangulation

        :param Triangulation K: A primitive triangulation of a smooth polytope.
        :param bool viro: K is a Viro triangulation.
        :param bool check: Run the construction checks of every layer.
        """
        self.K: Triangulation = K
        self.n: int = K.dim
        self.viro: bool = viro
        self.check: bool = check
        self.lift: RealLift = real_lift(K, check)
        self.T: TropicalCoefficients = self.lift.T
        self.tropical: TropicalHomology = tropical_homology(self.T)
        self.ring: CohomologyRing = rp_cohomology_ring(self.lift)
        self.omega_class: int = self.ring.omega_class()
        self.iota_P: int = iota_space(self.ring)
        self.iota_degree: int = iota(self.ring, self.omega_class)
        self.verdicts: dict = {"tropical_lefschetz": lefschetz_check(self.T),
                               "alexander_whitney": self.ring.alexander_whitney_check(),
                               "subdivision_invariance": _check(self.lift.betti_numbers() == self.ring.betti_numbers(),
                                                                "simplicial and cubical Betti numbers of RP differ")}

    def odd_projective(self) -> bool:
        # simplex(n, d) with d odd
        family = self.K.polytope.family
        if not family.startswith("simplex("):
            return False
        kind, params = parse_family(family)
        return params[1] % 2 == 1

    def hypersurface(self, eps: SignDistribution) -> THypersurface:
        return t_hypersurface(self.lift, eps, self.check)

    def pages(self, hyp: THypersurface, side: str = "homology",
              method: FiltrationMethod = FiltrationMethod.INTERSECTION) -> list:
        return compute_pages(hyp.filtered_complex(method), side)

    def verify(self, eps: SignDistribution) -> InvariantRecord:
        return verify(self, eps)


def _spectral_verdicts(analysis: PatchworkAnalysis, hyp: THypersurface, hom: list, coh: list) -> dict:
    n, top = analysis.n, analysis.n - 1
    verdicts = {}

    structure = Verdict(True)
    for page in hom[2:]:
        for (p, q), d in page.dims.items():
            if d and p != q and p + q != n - 1:
                structure = Verdict(False, f"E^{page.r}_({p},{q}) is off the two lines", (page.r, p, q))
                break
        if not structure.ok:
            break
    verdicts["structure"] = structure

    symmetry = Verdict(True)
    for page in coh[1:]:
        for (p, q), d in page.dims.items():
            if p > top or q > top:
                if d:
                    symmetry = Verdict(False, f"E_{page.r}^({p},{q}) is nonzero above degree {top}", (page.r, p, q))
                continue
            if d != page.dims.get((top - p, top - q), 0):
                symmetry = Verdict(False, f"E_{page.r}^({p},{q}) and its dual differ", (page.r, p, q))
            elif page.rank(p, q) != page.rank(top - p + page.r, top - 1 - q):
                symmetry = Verdict(False, f"d_{page.r}^({p},{q}) and its dual differ in rank", (page.r, p, q))
            if not symmetry.ok:
                break
        if not symmetry.ok:
            break
    verdicts["symmetry"] = symmetry

    pairing = Verdict(True)
    algebra = hyp.cochains()
    for r in (1, 2):
        if r >= len(coh):
            break
        try:
            matrices = page_pairing(coh, r, algebra, top)
        except StructureViolationError as e:
            logging.warning("page_pairing: " + str(e))
            pairing = Verdict(False, str(e), (r,))
            break
        for key, matrix in sorted(matrices.items()):
            if not matrix.nondegenerate:
                pairing = Verdict(False, f"cup pairing on E_{r}^{key} is degenerate", (r,) + key)
                break
        if not pairing.ok:
            break
    verdicts["page_pairing"] = pairing

    tropical = Verdict(True)
    for (p, q), d in sorted(hom[1].dims.items()):
        if d != analysis.tropical.hodge_X(p, q):
            tropical = Verdict(False, f"E^1_({p},{q}) has dimension {d}, H_({p},{q}) has "
                                      f"{analysis.tropical.hodge_X(p, q)}", (p, q))
            break
    verdicts["first_page_tropical"] = tropical
    return verdicts


def _internal_checks(analysis: PatchworkAnalysis, hyp: THypersurface, hom: list, coh: list) -> dict:
    # failures here are bugs and raise
    T = analysis.T
    checks = {"filtration_equality": hyp.filtration_equality(),
              "graded_pieces": hyp.graded_pieces_check()}

    filtered = hyp.filtered_complex()
    graded = Verdict(True)
    for q in range(filtered.complex.top + 1):
        for k in range(analysis.n + 1):
            expected = sum(T.fx(cell, k).dim for cell in hyp.X.cells[q])
            if filtered.graded_dim(k, q) != expected:
                graded = Verdict(False, f"gr_{k} in degree {q} has the wrong dimension", (k, q))
    checks["graded_dimensions"] = graded

    direct = hyp.direct_betti()
    folded = hyp.betti_numbers()
    # an empty subcomplex has no degrees at all
    direct += [0] * (len(folded) - len(direct))
    checks["direct_model"] = _check(direct == folded, "folded and direct Betti numbers differ", tuple(direct))
    limit = infinity_by_degree(hom)
    limit += [0] * (len(direct) - len(limit))
    checks["convergence"] = _check(limit == direct, "E-infinity does not add up to the Betti numbers", tuple(limit))
    eulers = euler_characteristics(hom)
    checks["euler"] = _check(len(set(eulers)) == 1 and eulers[0] == hyp.euler_characteristic()
                             == sum((-1) ** q * b for q, b in enumerate(folded)),
                             "Euler characteristic changes across pages", tuple(eulers))
    same = all(h.dims == c.dims for h, c in zip(hom, coh)) and degeneracy_index(hom) == degeneracy_index(coh)
    checks["homology_cohomology_duality"] = _check(same, "homology and cohomology pages differ")
    for name, verdict in checks.items():
        _require(name, verdict)
    return checks


# statements about nonempty T-hypersurfaces only
_RANK_CHECKS = ("page_pairing", "vanishing_criterion", "degeneracy_criterion", "degeneracy_criterion_iota",
                "ell_lower_bound", "r_upper_bound", "ell_iota", "r_iota_bound", "viro_degeneration")


def verify(analysis: PatchworkAnalysis, eps: SignDistribution) -> InvariantRecord:
    """ Computes the invariants of RX_eps and checks every structural statement about them.

    Theorem checks come back as verdicts, a failure being data. Checks comparing
    two computations of the same object raise.

    :param PatchworkAnalysis analysis: Shared data of the triangulation.
    :param SignDistribution eps: The sign distribution.
    :return: The record with its verdicts
    :rtype: InvariantRecord
    :raises InternalConsistencyError: if two independent computations disagree
    """
    n = analysis.n
    hyp = analysis.hypersurface(eps)
    hom = analysis.pages(hyp, "homology")
    coh = analysis.pages(hyp, "cohomology")
    betti = hyp.betti_numbers()
    injective = injectivity(hyp)
    ell = rank_ell(hyp, injective)
    r = degeneracy_index(coh)

    verdicts = dict(analysis.verdicts)
    skipped = {}
    verdicts.update(_internal_checks(analysis, hyp, hom, coh))
    verdicts.update(_spectral_verdicts(analysis, hyp, hom, coh))
    verdicts["poincare_duality"] = hyp.poincare_duality_check(analysis.ring)

    vanishing, criterion, strong = Verdict(True), Verdict(True), Verdict(True)
    strong_applies = analysis.iota_P >= n // 2 - 2
    for r0 in range(2, n + 1):
        if (n - r0) % 2:
            continue
        q = (n - r0) // 2
        if coh[r0].is_degenerate() != injective[q]:
            vanishing = Verdict(False, f"page {r0} degenerate = {coh[r0].is_degenerate()}, "
                                       f"i^{q} injective = {injective[q]}", (r0, q))
        later = all(page.is_degenerate() for page in coh[r0:])
        if later != all(injective[:q + 1]):
            criterion = Verdict(False, f"pages from {r0} degenerate = {later}, "
                                       f"i^j injective for j <= {q} = {all(injective[:q + 1])}", (r0, q))
        if strong_applies and later != injective[q]:
            strong = Verdict(False, f"pages from {r0} degenerate = {later}, i^{q} injective = {injective[q]}", (r0, q))
    verdicts["vanishing_criterion"] = vanishing
    verdicts["degeneracy_criterion"] = criterion
    if strong_applies:
        verdicts["degeneracy_criterion_iota"] = strong
    else:
        skipped["degeneracy_criterion_iota"] = f"iota(RP) = {analysis.iota_P} < floor(n/2) - 2"

    bound = (n - r) // 2
    first = _check(ell >= bound, f"ell = {ell} < floor((n - r)/2) = {bound}", (ell, r))
    if first.ok and r >= 3 + n % 2 and ell != bound:
        first = Verdict(False, f"ell = {ell} but equality with {bound} is expected for r = {r}", (ell, r))
    verdicts["ell_lower_bound"] = first
    upper = max(2, n - 2 * ell - 1)
    second = _check(r <= upper, f"r = {r} > max(2, n - 2 ell - 1) = {upper}", (ell, r))
    if second.ok and 2 * ell <= n - 5 and r != upper:
        second = Verdict(False, f"r = {r} but equality with {upper} is expected for ell = {ell}", (ell, r))
    verdicts["r_upper_bound"] = second
    verdicts["ell_iota"] = _check(ell >= analysis.iota_degree, f"ell = {ell} < iota[omega] = {analysis.iota_degree}",
                                  (ell, analysis.iota_degree))
    verdicts["r_iota_bound"] = _check(r <= max(2, n - 2 * analysis.iota_degree - 1),
                                      f"r = {r} exceeds the bound from iota[omega]", (r, analysis.iota_degree))

    columns = analysis.tropical.column_sums_X()
    verdicts["betti_bounds"] = _check(all(b <= columns[q] for q, b in enumerate(betti)),
                                      "a Betti number exceeds its tropical bound", tuple(betti))
    if n % 2:
        total, expected = sum(betti), analysis.tropical.total_X()
        verdicts["mod4_congruence"] = _check((total - expected) % 4 == 0,
                                             f"total Betti {total} and {expected} differ mod 4", (total, expected))
    else:
        skipped["mod4_congruence"] = "RX_eps is odd dimensional"
    if analysis.odd_projective():
        verdicts["odd_degree_degeneration"] = _check(r <= 2, f"odd degree but r = {r}", (r,))
    else:
        skipped["odd_degree_degeneration"] = "not an odd dilate of a simplex"
    if analysis.viro:
        verdicts["viro_degeneration"] = _check(r <= 2 and ell >= (n - 1) // 2,
                                               f"Viro triangulation with r = {r}, ell = {ell}", (r, ell))
    else:
        skipped["viro_degeneration"] = "not a Viro triangulation"

    if hyp.is_empty():
        for name in _RANK_CHECKS:
            if name in verdicts:
                del verdicts[name]
                skipped[name] = "empty T-hypersurface"

    conjecture = hyp.is_empty() or ell >= (n - 1) // 2
    if not conjecture:
        logging.warning(f"verify: ell = {ell} below floor((n-1)/2) for signs {eps.label}")
    for name, verdict in verdicts.items():
        if not verdict.ok:
            logging.warning(f"verify: {name} fails for signs {eps.label}: {verdict.reason}")

    return InvariantRecord(signs = eps.label, sign_values = tuple(eps.values), betti_RX = betti,
                           betti_RP = analysis.ring.betti_numbers(), tropical_table = analysis.tropical.X,
                           ell = ell, r_index = r, iota_degree = analysis.iota_degree, iota_P = analysis.iota_P,
                           euler_characteristic = hyp.euler_characteristic(),
                           degree = analysis.lift.degree_coordinates(),
                           component_classes = hyp.component_classes(), conjecture_holds = conjecture,
                           homology_pages = hom, cohomology_pages = coh, verdicts = verdicts, skipped = skipped)


_WORKER: dict = {}


def _init_worker(data: dict, viro: bool) -> None:
    _WORKER["analysis"] = PatchworkAnalysis(triangulation_from_json(data), viro)


def _run_worker(values: tuple) -> InvariantRecord:
    label, signs = values
    return verify(_WORKER["analysis"], SignDistribution(signs, label))


def sweep(analysis: PatchworkAnalysis, signs: list, jobs: int = 1) -> list:
    """ Records for many sign distributions, in input order.

    :param PatchworkAnalysis analysis: Shared data of the triangulation.
    :param list signs: SignDistribution items.
    :param int jobs: Worker processes; 1 runs in this process.
    :return: One InvariantRecord per sign distribution
    :rtype: list
    """
    if jobs <= 1 or len(signs) <= 1:
        return [verify(analysis, eps) for eps in signs]
    logging.info(f"sweep: {len(signs)} sign distributions on {jobs} workers")
    with Pool(processes = jobs, initializer = _init_worker, initargs = (analysis.K.to_json(), analysis.viro)) as pool:
        return pool.map(_run_worker, [(eps.label, tuple(eps.values)) for eps in signs])


def sweep_statistics(records: list, n: int) -> dict:
    """ Distributions of ell, r and the Betti vectors over a sweep."""
    stats = {"count": len(records), "ell": {}, "r_index": {}, "betti_RX": {}, "counterexamples": 0,
             "below_conjectured_rank": 0}
    for record in records:
        stats["ell"][record.ell] = stats["ell"].get(record.ell, 0) + 1
        stats["r_index"][record.r_index] = stats["r_index"].get(record.r_index, 0) + 1
        key = ",".join(str(b) for b in record.betti_RX)
        stats["betti_RX"][key] = stats["betti_RX"].get(key, 0) + 1
        stats["counterexamples"] += int(record.counterexample)
        stats["below_conjectured_rank"] += int(record.ell < (n - 1) // 2)
    for name in ("ell", "r_index", "betti_RX"):
        stats[name] = {str(k): v for k, v in sorted(stats[name].items())}
    return stats
