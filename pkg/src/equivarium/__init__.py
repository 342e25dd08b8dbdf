"""Elmendorf constructions for finite groups, checked exactly at desk scale."""

__version__ = "0.1.0"

from .groups import FiniteGroup, Subgroup, group_from_key
from .categories import FinCategory, Functor, NatTransformation, Preorder, Poset
from .equivariant import GCategory, GPreorder
from .orbit import orbit_category, marked_orbit_category
from .presheaves import OrbitPresheaf, SubgroupFamily, family_presheaf, constant_presheaf, phi
from .elmendorf import c_cat, epsilon, eta_l, ev, unit_zigzag
from .posets import c_pos, milnor, posetal_quotient
from .simplicial import nerve, hocolim_diag, thomason_eta
from .homology import homology

__all__ = [
    "FiniteGroup", "Subgroup", "group_from_key",
    "FinCategory", "Functor", "NatTransformation", "Preorder", "Poset",
    "GCategory", "GPreorder",
    "orbit_category", "marked_orbit_category",
    "OrbitPresheaf", "SubgroupFamily", "family_presheaf", "constant_presheaf", "phi",
    "c_cat", "epsilon", "eta_l", "ev", "unit_zigzag",
    "c_pos", "milnor", "posetal_quotient",
    "nerve", "hocolim_diag", "thomason_eta", "homology",
]
