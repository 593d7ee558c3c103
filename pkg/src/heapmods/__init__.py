"""Finite heaps, trusses, modules and heaps of modules over trusses, with exhaustive verifiers."""

from .dsl import StructureFile, dump, load, parse
from .errors import HeapmodsError
from .fixtures import load_fixtures
from .heap import FiniteGroup, FiniteHeap, validate_group, validate_heap
from .hom import HeapOfModules, hom_morphism, validate_hom
from .iso import iso_search
from .modules import PointedModule, TrussModule, validate_module, validate_pointed
from .symbolic import universal_ring
from .truss import FiniteTruss, validate_truss

__all__ = [
    "FiniteGroup", "FiniteHeap", "FiniteTruss", "HeapOfModules", "HeapmodsError", "PointedModule",
    "StructureFile", "TrussModule", "dump", "hom_morphism", "iso_search", "load", "load_fixtures", "parse",
    "universal_ring", "validate_group", "validate_heap", "validate_hom", "validate_module", "validate_pointed",
    "validate_truss",
]

__version__ = "0.1.0"
