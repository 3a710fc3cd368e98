"""Graphviz DOT text for Hasse diagrams and concurrency graphs."""

import io

from ..heaps.heap import Heap, covering_pairs
from ..heaps.structure import ConcurrencyStructure


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def heap_to_dot(heap: Heap, name: str = "heap") -> str:
    """Edges run from a vertex to each vertex covering it, so they point up."""
    writer = io.StringIO()
    writer.write(f"digraph {_quote(name)} {{\n")
    writer.write("  rankdir=BT;\n")
    for v in heap.vertices:
        writer.write(f"  v{v} [label={_quote(f'{v}:{heap.labels[v]}')}];\n")
    for x, y in covering_pairs(heap):
        writer.write(f"  v{x} -> v{y};\n")
    writer.write("}\n")
    return writer.getvalue()


def structure_to_dot(structure: ConcurrencyStructure, name: str = "concurrency") -> str:
    writer = io.StringIO()
    writer.write(f"graph {_quote(name)} {{\n")
    for p in structure.pieces:
        writer.write(f"  {_quote(p)};\n")
    for a, b in structure.concurrent:
        writer.write(f"  {_quote(a)} -- {_quote(b)};\n")
    writer.write("}\n")
    return writer.getvalue()
