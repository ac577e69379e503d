import os
import sys
import logging
from logging.handlers import TimedRotatingFileHandler

from app.core.config import settings


def get_logger(name: str = "forestbound"):
    logger = logging.getLogger(name)
    logger.setLevel(settings.LOG_LEVEL.upper())

    # If no handlers are attached, add console (+ optional timed rotating file) handler
    if not logger.handlers:
        # 1) Console handler on stderr; stdout is reserved for report envelopes
        console = logging.StreamHandler(sys.stderr)
        console_fmt = logging.Formatter(
            "[%(asctime)s] [%(levelname)s] %(name)s - %(message)s",
            "%Y-%m-%d %H:%M:%S"
        )
        console.setFormatter(console_fmt)
        logger.addHandler(console)

        # 2) File handler (rotates at midnight, keeps 7 days of logs)
        if settings.LOG_TO_FILE:
            os.makedirs(settings.LOG_DIR, exist_ok=True)
            log_path = os.path.join(settings.LOG_DIR, f"{name}.log")
            file_handler = TimedRotatingFileHandler(
                filename=log_path,
                when="midnight",
                interval=1,
                backupCount=7,
                encoding="utf-8",
            )
            file_handler.suffix = "%Y-%m-%d"
            file_handler.setFormatter(console_fmt)
            logger.addHandler(file_handler)

    return logger
