# src/utils/logging_setup.py
import os
import sys
import platform
import logging
from logging.handlers import RotatingFileHandler
from ..config import AppConfig

def setup_logging(config: AppConfig) -> None:
    """Initialize logging for the CLI and bench runs"""
    try:
        handlers = [logging.StreamHandler()]

        log_dir = config.LOG_DIR
        if log_dir is not None:
            log_dir.mkdir(parents=True, exist_ok=True)
            handlers.append(
                RotatingFileHandler(
                    filename=log_dir / "itpsearch.log",
                    maxBytes=5*1024*1024,
                    backupCount=3,
                    encoding='utf-8'
                )
            )

        for handler in handlers:
            handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            ))

        logging.basicConfig(
            level=config.LOG_LEVEL,
            handlers=handlers,
            force=True
        )

        # Log system info
        logging.info(f"Python version: {platform.python_version()}")
        logging.info(f"Operating system: {platform.system()} {platform.version()}")
        logging.info(f"CPU count: {os.cpu_count()}")

    except Exception as e:
        print(f"Failed to setup logging: {e}", file=sys.stderr)
        logging.basicConfig(level=logging.WARNING, force=True)
