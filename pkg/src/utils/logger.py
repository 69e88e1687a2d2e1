import logging
import sys
from logging.handlers import RotatingFileHandler

from config.settings import settings


class IndicatorLogger:
    def __init__(self, level: str = 'WARNING', log_file: str = None):
        self.logger = logging.getLogger('PBI')
        self.logger.setLevel(getattr(logging, level, logging.WARNING))
        self.logger.propagate = False

        # Define log format
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

        if not self.logger.handlers:
            # Console handler on stderr; stdout is reserved for reports
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(formatter)
            self.logger.addHandler(console_handler)

            if log_file:
                file_handler = RotatingFileHandler(log_file, maxBytes=10 * 1024 * 1024, backupCount=5)
                file_handler.setFormatter(formatter)
                self.logger.addHandler(file_handler)

    def set_level(self, level: str):
        self.logger.setLevel(getattr(logging, level.upper(), logging.WARNING))


# Instantiate the logger
logger = IndicatorLogger(settings.LOG_LEVEL, settings.LOG_FILE)


def get_logger(name: str = None):
    """Get logger instance for a specific module"""
    if name:
        return logging.getLogger(f'PBI.{name}')
    return logger.logger
