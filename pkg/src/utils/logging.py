"""
Logging configuration for the partial Pi-property engine
"""

import logging
import os
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

from src.core.config import settings


def setup_logging(name: Optional[str] = None) -> logging.Logger:
    """
    Setup structured logging with JSON format

    Args:
        name: Logger name

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name or "partialpi")

    # Don't add handlers if they already exist
    if logger.handlers:
        return logger

    log_level = os.getenv("PARTIALPI_LOG_LEVEL", settings.log_level).upper()
    logger.setLevel(getattr(logging, log_level, logging.INFO))

    # stdout is reserved for reports
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)

    json_formatter = jsonlogger.JsonFormatter(
        fmt="%(asctime)s %(name)s %(levelname)s %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )
    dev_formatter = logging.Formatter(
        fmt="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    if settings.is_production:
        console_handler.setFormatter(json_formatter)
    else:
        console_handler.setFormatter(dev_formatter)
    logger.addHandler(console_handler)

    if settings.log_file:
        directory = os.path.dirname(settings.log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        file_handler = logging.FileHandler(settings.log_file)
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(json_formatter)
        logger.addHandler(file_handler)

    logger.propagate = False

    return logger


# Create module-specific loggers
perm_logger = setup_logging("partialpi.perm")
lattice_logger = setup_logging("partialpi.lattice")
classify_logger = setup_logging("partialpi.classify")
embeddings_logger = setup_logging("partialpi.embeddings")
verify_logger = setup_logging("partialpi.verify")
cli_logger = setup_logging("partialpi.cli")
