from tabulate import tabulate
from src.Invariants import *


TABLE_STYLE = "mixed_grid"


def hodge_table(tropical: TropicalHomology) -> str:
    """ dim H_{p,q}(X) with p down the rows and q across."""
    n = tropical.n
    rows = [[f"p={p}"] + [tropical.hodge_X(p, q) for q in range(n)] for p in range(n)]
    return tabulate(rows, headers = [""] + [f"q={q}" for q in range(n)], tablefmt = TABLE_STYLE)


def betti_table(record: InvariantRecord) -> str:
    width = max(len(record.betti_RX), len(record.betti_RP))
    rows = [["RX_eps"] + list(record.betti_RX) + [""] * (width - len(record.betti_RX)),
            ["RP"] + list(record.betti_RP) + [""] * (width - len(record.betti_RP))]
    return tabulate(rows, headers = [""] + [f"b{q}" for q in range(width)], tablefmt = TABLE_STYLE)


def page_table(page: Page, cohomology: bool = False) -> str:
    """ Dimensions of one page, filtration index down the rows and degree across.

    :param Page page: The page.
    :param bool cohomology: Label entries E_r^{p,q} instead of E^r_{p,q}.
    :return: The rendered table
    :rtype: str
    """
    ps = sorted({p for p, q in page.dims})
    qs = sorted({q for p, q in page.dims})
    rows = [[f"p={p}"] + [page.dims.get((p, q), 0) for q in qs] for p in ps]
    title = f"E_{page.r}" if cohomology else f"E^{page.r}"
    return tabulate(rows, headers = [title] + [f"q={q}" for q in qs], tablefmt = TABLE_STYLE)


def invariants_table(record: InvariantRecord) -> str:
    rows = [["ell", record.ell], ["r", record.r_index], ["iota[omega]", record.iota_degree],
            ["iota(RP)", record.iota_P], ["Euler characteristic", record.euler_characteristic],
            ["degree", ", ".join(str(x) for x in record.degree)],
            ["components", len(record.component_classes)],
            ["component classes", "; ".join("?" if c is None else str(c) for c in record.component_classes)]]
    return tabulate(rows, headers = ["invariant", "value"], tablefmt = TABLE_STYLE)


def verdict_table(record: InvariantRecord) -> str:
    rows = [[name, "PASS" if v.ok else "FAIL", v.reason] for name, v in sorted(record.verdicts.items())]
    rows += [[name, "skipped", reason] for name, reason in sorted(record.skipped.items())]
    return tabulate(rows, headers = ["check", "verdict", "detail"], tablefmt = TABLE_STYLE)


def sweep_table(stats: dict) -> str:
    rows = []
    for name in ("ell", "r_index", "betti_RX"):
        for value, count in stats[name].items():
            rows.append([name, value, count])
    rows.append(["counterexamples", "", stats["counterexamples"]])
    rows.append(["below conjectured rank", "", stats["below_conjectured_rank"]])
    return tabulate(rows, headers = ["statistic", "value", "count"], tablefmt = TABLE_STYLE)


def print_record(record: InvariantRecord, tropical: TropicalHomology, side: str = "both",
                 verdicts: bool = False) -> None:
    """ Prints the tables of one analysed sign distribution

    :returns: None
    """
    print("\n Tropical table of X: \n")
    print(hodge_table(tropical))
    print("\n Betti numbers: \n")
    print(betti_table(record))
    print("\n Invariants: \n")
    print(invariants_table(record))
    if side in ("homology", "both"):
        for page in record.homology_pages[1:]:
            print()
            print(page_table(page))
    if side in ("cohomology", "both"):
        for page in record.cohomology_pages[1:]:
            print()
            print(page_table(page, cohomology = True))
    if verdicts:
        print("\n Verdicts: \n")
        print(verdict_table(record))
    return None
