from src.PatchlabCLI import *
import logging
import sys


def main() -> None:
    """ Main entry point of the application"""

    try:
        config = config_from_args(sys.argv[1:])
    except ConfigError as e:
        print("\nERROR: ", str(e))
        sys.exit(2)

    logging.basicConfig(filename = "patchlab_log.log", level = logging.INFO if config.verbose else logging.WARNING)

    sys.exit(run(config))


if __name__ == "__main__":
    main()
