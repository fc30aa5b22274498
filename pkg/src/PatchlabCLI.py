from src.Database import *
from src.Interface import *
from src.RunConfig import *
import json
import logging


class PatchlabCLI:

    def __init__(self, config: RunConfig):

        self.config = config

    def __polytope(self) -> LatticePolytope:
        if self.config.viro is not None:
            return simplex(*self.config.viro)
        return build_polytope(self.config.polytope)

    def __triangulation(self) -> tuple:
        """ Builds or loads the triangulation of the run.

        :return: The triangulation and whether it is a Viro triangulation
        :rtype: tuple
        """
        if self.config.viro is not None:
            return viro(*self.config.viro), True
        if self.config.polytope is not None:
            return builtin_triangulation(self.config.polytope), self.config.polytope.startswith("simplex(")
        K = load_triangulation(self.config.triangulation)
        return K, False

    def __label(self) -> str:
        if self.config.viro is not None:
            return "viro({},{})".format(*self.config.viro)
        return self.config.polytope or self.config.triangulation

    def __header(self, K: Triangulation) -> dict:
        return {"config": self.config.to_dict(), "polytope": K.polytope.to_json(),
                "triangulation_stats": K.stats()}

    def __write_report(self, report: dict) -> None:
        if self.config.report is None:
            return None
        with open(self.config.report, "w") as file:
            json.dump(report, file, sort_keys = True, indent = 2)
            file.write("\n")
        logging.info("report written to " + self.config.report)
        return None

    def __cli_build_polytope(self) -> dict:
        """ Builds the polytope, prints its faces and smoothness verdict"""
        P = self.__polytope()
        verdict = smoothness_check(P)
        print("\n Polytope: ", P.family)
        counts = [P.face_counts().get(k, 0) for k in range(P.dim + 1)]
        rows = [[k, count] for k, count in enumerate(counts)]
        print(tabulate(rows, headers = ["dim", "faces"], tablefmt = TABLE_STYLE))
        print("\n Smooth: ", "yes" if verdict.ok else "no, " + verdict.reason)
        return {"config": self.config.to_dict(), "polytope": P.to_json(), "face_counts": counts,
                "normalized_volume": P.normalized_volume(), "smooth": verdict_to_json(verdict)}

    def __cli_triangulate(self) -> dict:
        """ Builds or loads a triangulation and validates it"""
        K, _ = self.__triangulation()
        verdict = validate(K)
        print("\n Triangulation of ", K.polytope.family)
        print(tabulate([[p, c] for p, c in enumerate(K.f_vector())], headers = ["dim", "simplices"],
                       tablefmt = TABLE_STYLE))
        print("\n Valid: ", "yes" if verdict.ok else "no, " + verdict.reason)
        report = self.__header(K)
        report["triangulation"] = K.to_json()
        report["valid"] = verdict_to_json(verdict)
        return report

    def __record_report(self, verdicts: bool) -> dict:
        K, is_viro = self.__triangulation()
        analysis = PatchworkAnalysis(K, is_viro)
        record = verify(analysis, load_signs(K, self.config.signs))
        print_record(record, analysis.tropical, self.config.side, verdicts)
        report = self.__header(K)
        report.update({"tropical_table": {"X": analysis.tropical.X, "P": analysis.tropical.P},
                       "betti": {"RX": record.betti_RX, "RP": record.betti_RP},
                       "invariants": record.to_json(side = self.config.side),
                       "verdicts": {name: verdict_to_json(v) for name, v in sorted(record.verdicts.items())},
                       "counterexample": record.counterexample})
        return report

    def __cli_analyze(self) -> dict:
        return self.__record_report(verdicts = False)

    def __cli_verify(self) -> dict:
        return self.__record_report(verdicts = True)

    def __cli_pages(self) -> dict:
        """ Pages only, without the theorem checks"""
        K, _ = self.__triangulation()
        lift = real_lift(K)
        hyp = t_hypersurface(lift, load_signs(K, self.config.signs))
        filtered = filtered_t_complex(hyp, self.config.method)
        report = self.__header(K)
        report["betti"] = {"RX": hyp.betti_numbers()}
        report["pages"] = {}
        for side in ("homology", "cohomology"):
            if self.config.side not in (side, "both"):
                continue
            pages = compute_pages(filtered, side)
            for page in pages[1:]:
                print()
                print(page_table(page, cohomology = side == "cohomology"))
            report["pages"][side] = [page.to_json() for page in pages]
            report["pages"][side + "_degeneracy_index"] = degeneracy_index(pages)
        return report

    def __cli_sweep(self) -> dict:
        """ Random sign distributions, optionally stored in the database"""
        K, is_viro = self.__triangulation()
        analysis = PatchworkAnalysis(K, is_viro)
        signs = random_signs(K, self.config.random, self.config.seed)
        records = sweep(analysis, signs, self.config.jobs)
        stats = sweep_statistics(records, K.dim)
        print(f"\n {len(records)} sign distributions on {self.__label()}\n")
        print(sweep_table(stats))
        if self.config.db is not None:
            initialize_database(self.config.db)
            for record in records:
                add_record_to_db(self.config.db, self.__label(), record)
        report = self.__header(K)
        report.update({"tropical_table": {"X": analysis.tropical.X, "P": analysis.tropical.P},
                       "records": [record.to_json(side = None) for record in records],
                       "statistics": stats,
                       "counterexample": any(record.counterexample for record in records)})
        return report

    def run(self) -> int:
        """ Runs the configured subcommand and writes its report

        :return: Exit status, 0 unless an error was raised
        :rtype: int
        """
        menu = {
            'build-polytope': self.__cli_build_polytope,
            'triangulate': self.__cli_triangulate,
            'analyze': self.__cli_analyze,
            'pages': self.__cli_pages,
            'sweep': self.__cli_sweep,
            'verify': self.__cli_verify
        }

        try:
            func = menu[self.config.command]
            report = func()
            self.__write_report(report)
        except Exception as e:
            print("\nERROR: Something went wrong!\n", str(e))
            logging.error("Exception:" + str(e))
            return 1
        return 0


def run(config: RunConfig) -> int:
    return PatchlabCLI(config).run()
