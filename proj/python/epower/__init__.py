"""Entangling power of multipartite unitary gates."""

from ._core import *  # noqa: F401,F403
from ._core import ParseError, UnsupportedError, ValidationError  # noqa: F401
