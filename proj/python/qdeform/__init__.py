"""Numerics for the (q; l, lambda)-deformed Heisenberg algebra."""

from ._qdeform import *  # noqa: F401,F403
from ._qdeform import DeformParams, DomainError

__all__ = [name for name in dir() if not name.startswith("_")]
