from dataclasses import dataclass, asdict, fields
from typing import Optional
import argparse
import logging


COMMANDS = ("build-polytope", "triangulate", "analyze", "pages", "sweep", "verify")
SIDES = ("homology", "cohomology", "both")
METHODS = ("intersection", "edge_sums")


class ConfigError(Exception):
    # Custom exception for invalid run configurations

    def __init__(self, message):
        """Handles invalid combinations of command line options

        :param str message: Message from the exception.
        :return: The function returns nothing
        """
        super().__init__(message)


@dataclass
class RunConfig:
    """ Everything a run depends on; a run is reproducible from this record alone."""

    command: str
    polytope: Optional[str] = None
    viro: Optional[tuple] = None
    triangulation: Optional[str] = None
    signs: str = "harnack"
    random: int = 0
    seed: int = 0
    side: str = "both"
    method: str = "intersection"
    report: Optional[str] = None
    db: Optional[str] = None
    jobs: int = 1
    verbose: bool = False

    def __post_init__(self):
        if self.viro is not None:
            self.viro = tuple(int(x) for x in self.viro)
        self.validate()

    def validate(self) -> None:
        """ Checks the combination of options

        :raises ConfigError: on the first invalid option
        """
        if self.command not in COMMANDS:
            logging.error("RunConfig: unknown command " + str(self.command))
            raise ConfigError(f"unknown command '{self.command}'")
        sources = [x for x in (self.polytope, self.viro, self.triangulation) if x is not None]
        if len(sources) != 1:
            logging.error("RunConfig: expected exactly one of --polytope, --viro, --triangulation")
            raise ConfigError("give exactly one of --polytope, --viro and --triangulation")
        if self.command == "build-polytope" and self.triangulation is not None:
            logging.error("RunConfig: build-polytope needs a polytope")
            raise ConfigError("build-polytope takes --polytope or --viro")
        if self.viro is not None and (len(self.viro) != 2 or min(self.viro) < 1):
            logging.error("RunConfig: bad --viro " + str(self.viro))
            raise ConfigError("--viro takes two positive integers N D")
        if self.side not in SIDES:
            logging.error("RunConfig: bad --side " + str(self.side))
            raise ConfigError(f"--side must be one of {', '.join(SIDES)}")
        if self.method not in METHODS:
            logging.error("RunConfig: bad --method " + str(self.method))
            raise ConfigError(f"--method must be one of {', '.join(METHODS)}")
        if self.jobs < 1 or self.random < 0:
            logging.error("RunConfig: negative count")
            raise ConfigError("--jobs must be at least 1 and --random non-negative")
        if self.command == "sweep" and self.random == 0:
            logging.error("RunConfig: sweep without --random")
            raise ConfigError("sweep needs --random COUNT")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["viro"] = list(self.viro) if self.viro is not None else None
        return out

    @staticmethod
    def from_dict(data: dict) -> "RunConfig":
        """ Rebuilds a configuration from to_dict output, ignoring unknown keys."""
        known = {f.name for f in fields(RunConfig)}
        return RunConfig(**{k: v for k, v in data.items() if k in known})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog = "patchlab",
                                     description = "Patchworked real hypersurfaces and their spectral sequences")
    commands = parser.add_subparsers(dest = "command", required = True)
    helps = {"build-polytope": "build a polytope and check smoothness",
             "triangulate": "build or load a triangulation and validate it",
             "analyze": "invariants of one T-hypersurface",
             "pages": "pages of the spectral sequence of one T-hypersurface",
             "sweep": "invariants over random sign distributions",
             "verify": "all theorem checks for one T-hypersurface"}
    for name in COMMANDS:
        sub = commands.add_parser(name, help = helps[name])
        source = sub.add_mutually_exclusive_group(required = True)
        source.add_argument("--polytope", help = "simplex(n,d), cube(n,d) or product(n1,d1,n2,d2)")
        source.add_argument("--viro", nargs = 2, type = int, metavar = ("N", "D"))
        source.add_argument("--triangulation", metavar = "PATH")
        sub.add_argument("--signs", default = "harnack", help = "harnack, zero, seed:N or a JSON path")
        sub.add_argument("--random", type = int, default = 0, metavar = "COUNT")
        sub.add_argument("--seed", type = int, default = 0)
        sub.add_argument("--side", choices = SIDES, default = "both")
        sub.add_argument("--method", choices = METHODS, default = "intersection")
        sub.add_argument("--report", metavar = "PATH")
        sub.add_argument("--db", metavar = "PATH")
        sub.add_argument("--jobs", type = int, default = 1)
        sub.add_argument("--verbose", action = "store_true")
    return parser


def config_from_args(argv: list) -> RunConfig:
    """ Parses command line arguments into a RunConfig

    :param list argv: Arguments without the program name.
    :return: The validated configuration
    :rtype: RunConfig
    :raises ConfigError: if the options do not form a valid run
    """
    args = build_parser().parse_args(argv)
    return RunConfig(command = args.command, polytope = args.polytope, viro = args.viro,
                     triangulation = args.triangulation, signs = args.signs, random = args.random,
                     seed = args.seed, side = args.side, method = args.method, report = args.report,
                     db = args.db, jobs = args.jobs, verbose = args.verbose)
