#!/usr/bin/env python3
"""
Colored console logging for the experiment tool, mirrored into <out>/run.log
"""

import logging
import os
import sys
from pathlib import Path
from typing import Optional


LIBRARY_LOGGERS = ("ppp", "geograph", "motif", "bounds", "moments")


class Colors:
    """ANSI color codes"""
    RED = '\033[31m'
    GREEN = '\033[32m'
    YELLOW = '\033[33m'
    CYAN = '\033[36m'
    RESET = '\033[0m'


def _colors_wanted(stream) -> bool:
    if os.environ.get("NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


class Logger:
    """Colored console logger with an optional run-log transcript"""

    def __init__(self, enable_colors: Optional[bool] = None):
        self.enable_colors = enable_colors
        self._transcript = logging.getLogger("experiment.run")
        self._transcript.propagate = False
        self._transcript.setLevel(logging.INFO)

    def _log(self, color: str, symbol: str, level: str, message: str, file=None):
        if file is None:
            file = sys.stdout if level in ["INFO", "SUCCESS"] else sys.stderr

        colored = self.enable_colors if self.enable_colors is not None else _colors_wanted(file)
        if colored:
            formatted_message = f"{color}{symbol} [{level}]{Colors.RESET} {message}"
        else:
            formatted_message = f"{symbol} [{level}] {message}"
        print(formatted_message, file=file)

        if self._transcript.handlers:
            self._transcript.info(f"[{level}] {message}")

    def info(self, message: str):
        self._log(Colors.CYAN, "ℹ️", "INFO", message)

    def success(self, message: str):
        self._log(Colors.GREEN, "✅", "SUCCESS", message)

    def warning(self, message: str):
        self._log(Colors.YELLOW, "⚠️", "WARNING", message)

    def error(self, message: str):
        self._log(Colors.RED, "❌", "ERROR", message)

    def attach_run_log(self, output_dir) -> Path:
        """Mirror every message into <output_dir>/run.log (replacing a previous attachment)"""
        self.detach_run_log()
        path = Path(output_dir) / "run.log"
        path.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(path, mode="w", encoding="utf-8")
        handler.setFormatter(logging.Formatter('%(asctime)s - %(message)s'))
        self._transcript.addHandler(handler)

        # library loggers (ppp, motif, moments, ...) go to the same file
        for name in LIBRARY_LOGGERS:
            library_logger = logging.getLogger(name)
            library_logger.addHandler(handler)
            if library_logger.level == logging.NOTSET or library_logger.level > logging.INFO:
                library_logger.setLevel(logging.INFO)
        return path

    def detach_run_log(self):
        for handler in list(self._transcript.handlers):
            self._transcript.removeHandler(handler)
            for name in LIBRARY_LOGGERS:
                logging.getLogger(name).removeHandler(handler)
            handler.close()


# Create global logger instance
logger = Logger()


def log_info(message: str):
    logger.info(message)


def log_success(message: str):
    logger.success(message)


def log_warning(message: str):
    logger.warning(message)


def log_error(message: str):
    logger.error(message)


def attach_run_log(output_dir) -> Path:
    return logger.attach_run_log(output_dir)


def detach_run_log():
    logger.detach_run_log()
