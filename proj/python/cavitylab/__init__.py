"""Two-atom cavity exchange simulator."""

from ._core import *  # noqa: F401,F403
from ._core import (
    ConfigError,
    DomainError,
    Error,
    Kinematics,
    PhysicalParams,
    derive_scales,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "Kinematics",
    "PhysicalParams",
    "derive_scales",
]
