"""Heisenberg group and CR sphere: conformal maps, sub-Laplacians and
Brownian motions conditioned to hit a point."""

from ._hcr import *  # noqa: F401,F403
from ._hcr import DomainError, ConfigError, run_command

__all__ = [name for name in dir() if not name.startswith("_")]
