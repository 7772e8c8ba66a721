"""Finite computations on the semidirect product S(M) = P(M) ⋊ M and its relatives."""

__version__ = "0.1.0"

from .monoid import FiniteMonoid, MonoidView, load, save, validate  # noqa: E402
from .expansion import SView, SzView, expand_S, expand_Sz  # noqa: E402
