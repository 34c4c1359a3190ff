import logging
from typing import Optional

from harness.constants import LOG_FILE_NAME


def init_logger(
    console_log_level: int = logging.WARNING,
    file_log_level: int = logging.DEBUG,
    log_file: Optional[str] = None,
) -> None:
    """Configure the root logger: console (stderr) always, file on request.

    Args:
        console_log_level: Level of the console handler.
        file_log_level: Level of the file handler.
        log_file: Path of the log file, `LOG_FILE_NAME` when empty string is
            given and no file handler at all when None.
    """
    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)
    formatter = logging.Formatter("[%(asctime)s][%(name)s][%(levelname)s]: %(message)s")
    if log_file is not None:
        file_handler = logging.FileHandler(
            log_file or LOG_FILE_NAME, mode="w", encoding="utf-8"
        )
        file_handler.setLevel(file_log_level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    console_handler = logging.StreamHandler()
    console_handler.setLevel(console_log_level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)
