"""Buck-converter power line communication models."""

from ._core import *  # noqa: F401,F403
from ._core import ModelError

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
