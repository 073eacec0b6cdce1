from loguru import logger
from src.common import config
import os
import sys


def setup_logger(file_name="parafloquet.log", dir=config.LOG_DIR):
    """
    Configures the shared loguru logger.

    A rotating file sink keeps the full DEBUG trail of every run, while the
    console sink only shows messages at the configured level so long sweeps
    stay readable.
    """
    logger.remove()

    fp = os.path.join(dir, file_name)
    logger.add(
        fp,
        rotation="10 MB",
        retention="7 days",
        level="DEBUG",
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | {level} | {file}: {function}: {line} - [{message}]",
        enqueue=True,
        backtrace=True,
        diagnose=True,
    )
    logger.add(
        sys.stderr,
        level=config.LOG_LEVEL,
        format="<green>{time:HH:mm:ss}</green> | {level} | {message}",
    )

    logger.debug("Logger has been successfully configured.")
    return logger


log = setup_logger()
