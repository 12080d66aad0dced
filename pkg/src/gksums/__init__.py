"""Generalized Kloosterman sums K(a, b, m, <omega>), their geometry and plots."""

from .geometry import HypocycloidRegion, boundary_samples, contains, contains_many, f_map, hypocycloid
from .kloosterman import SumGrid, crt_decompose, gks, gks_grid, gks_pairs, salie_direct, salie_explicit
from .modular import UnitSubgroup, primitive_root, subgroup_from_generator, subgroup_of_order

__version__ = "0.1.0"

__all__ = [
    "HypocycloidRegion",
    "SumGrid",
    "UnitSubgroup",
    "boundary_samples",
    "contains",
    "contains_many",
    "crt_decompose",
    "f_map",
    "gks",
    "gks_grid",
    "gks_pairs",
    "hypocycloid",
    "primitive_root",
    "salie_direct",
    "salie_explicit",
    "subgroup_from_generator",
    "subgroup_of_order",
]
