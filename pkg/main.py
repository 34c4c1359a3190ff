import logging
import sys

from cli.commands import build_parser, execute
from harness.log_config import init_logger

CONSOLE_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def main() -> None:
    """Entry point of the coset-leader decoding toolkit."""
    args = build_parser().parse_args()  # usage errors exit with code 1 here
    init_logger(
        console_log_level=CONSOLE_LEVELS[min(args.verbose, len(CONSOLE_LEVELS) - 1)],
        log_file=None if args.verbose < 2 else "",
    )  # -vv also writes the log file
    sys.exit(execute(args))


if __name__ == "__main__":
    main()
