"""Exact-arithmetic toolkit for Chevalley groups over finite commutative rings."""

from .chevalley import build_basis
from .reps import available_tags, make_representation
from .rings import (
    artinian_decompose,
    ideal_from_generators,
    is_local,
    parse_ring_spec,
)
from .roots import build_root_system

__version__ = "0.1.0"

__all__ = [
    "artinian_decompose",
    "available_tags",
    "build_basis",
    "build_root_system",
    "ideal_from_generators",
    "is_local",
    "make_representation",
    "parse_ring_spec",
]
