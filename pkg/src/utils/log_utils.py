import logging
import sys

LOG_FORMAT = "[%(name)s] %(message)s"


def setup_logging(level: int = logging.INFO) -> None:
    root = logging.getLogger()
    if not any(getattr(h, "_dilator_forge", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._dilator_forge = True
        root.addHandler(handler)
    root.setLevel(level)


def get_logger(tag: str) -> logging.Logger:
    return logging.getLogger(tag)
