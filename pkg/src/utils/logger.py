"""
Logging setup driven by Config
"""

import logging
import os
import sys

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.config import Config  # noqa: E402

_configured = False


def configure_logging() -> None:
    """Install the stderr handler once; DEBUG_MODE forces DEBUG level"""
    global _configured
    if _configured:
        return
    level = logging.DEBUG if Config.is_debug() else getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("fracslice")
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Get a logger under the fracslice namespace"""
    configure_logging()
    return logging.getLogger(f"fracslice.{name}")


def enable_debug() -> None:
    """Switch on DEBUG_MODE after startup, as the --debug flag does"""
    Config.DEBUG_MODE = True
    configure_logging()
    logging.getLogger("fracslice").setLevel(logging.DEBUG)
