"""Generalised sketches, doctrines as injectivity classes and free completion."""
from .core import (FINSET, SketchCategory, SketchError, SketchObject, SkMap,
                   coproduct, find_extension, identity_map, inclusion, iter_homs,
                   make_map, make_object, pushout, slash_construction)
from .levels import CSK, GPH, TSK, csketch, graph, tsketch
from .doctrines import (D, D_map, DoctrineSpec, GenMap, doctrine, is_injective,
                        is_injective_all)
from .catsketch import category_of_sketch, sketch_of_category
from .soa import Cell, Completion, small_object_argument
from .census import iter_small_sketches, small_graphs

__all__ = [
    "FINSET", "GPH", "CSK", "TSK", "SketchCategory", "SketchError", "SketchObject",
    "SkMap", "coproduct", "find_extension", "identity_map", "inclusion", "iter_homs",
    "make_map", "make_object", "pushout", "slash_construction", "csketch", "graph",
    "tsketch", "D", "D_map", "DoctrineSpec", "GenMap", "doctrine", "is_injective",
    "is_injective_all", "category_of_sketch", "sketch_of_category", "Cell", "Completion",
    "small_object_argument", "iter_small_sketches", "small_graphs",
]
