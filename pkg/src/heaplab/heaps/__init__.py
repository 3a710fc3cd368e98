from .heap import (
    Heap,
    compose,
    delete_vertex,
    double,
    empty_heap,
    factorize,
    format_factors,
    heap_from_word,
    opposite,
    subheap,
)
from .linalg import FieldChoice, boundary_map, heap_kernel_dim, is_acyclic, is_strongly_acyclic
from .props import balanced_convex_chains, dismantle, exposes, has_p1, has_p2
from .structure import ConcurrencyStructure, structure_from_graph, validate_structure
from .tl import TLMonomial, deletion_test, tl_reduce

__all__ = [
    "ConcurrencyStructure",
    "FieldChoice",
    "Heap",
    "TLMonomial",
    "balanced_convex_chains",
    "boundary_map",
    "compose",
    "delete_vertex",
    "deletion_test",
    "dismantle",
    "double",
    "empty_heap",
    "exposes",
    "factorize",
    "format_factors",
    "has_p1",
    "has_p2",
    "heap_from_word",
    "heap_kernel_dim",
    "is_acyclic",
    "is_strongly_acyclic",
    "opposite",
    "structure_from_graph",
    "subheap",
    "tl_reduce",
    "validate_structure",
]
