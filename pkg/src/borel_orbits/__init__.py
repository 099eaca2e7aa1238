"""Borel orbits on Hermitian symmetric varieties, combinatorially."""

from .exceptions import BorelOrbitsError, InvariantViolation, NotAdmissible, ScopeError
from .root_system import Root, build_cominuscule_data, build_root_system

__all__ = ["BorelOrbitsError", "InvariantViolation", "NotAdmissible", "ScopeError", "Root",
           "build_cominuscule_data", "build_root_system"]
