"""Concurrency structures for the named graph families.

Vertex names follow one convention per family so that fixtures and
witness words stay readable: paths and Dynkin diagrams use ``1..n``,
cycles ``g1..gn``, stars ``c`` with leaves ``x1..xk`` and ``Gamma(p, q, r)``
uses ``c`` with arms ``p1..``, ``q1..``, ``r1..`` numbered outward.
"""

import networkx as nx

from ..errors import StructureError
from ..heaps.structure import ConcurrencyStructure, structure_from_graph, validate_structure


def _numbered(graph: nx.Graph, prefix: str = "") -> ConcurrencyStructure:
    return structure_from_graph(nx.relabel_nodes(graph, {v: f"{prefix}{v + 1}" for v in graph.nodes}))


def path(n: int) -> ConcurrencyStructure:
    """Type ``A_n``."""
    if n < 1:
        raise StructureError("A path needs at least one vertex")
    return _numbered(nx.path_graph(n))


def cycle(n: int) -> ConcurrencyStructure:
    if n < 3:
        raise StructureError("A cycle needs at least three vertices")
    return _numbered(nx.cycle_graph(n), "g")


def complete(n: int) -> ConcurrencyStructure:
    if n < 1:
        raise StructureError("A complete graph needs at least one vertex")
    return _numbered(nx.complete_graph(n))


def type_d(n: int) -> ConcurrencyStructure:
    """Path ``1..n-1`` with ``n`` attached to ``n-2``."""
    if n < 4:
        raise StructureError("Type D needs n >= 4")
    g = nx.path_graph(n - 1)
    g.add_edge(n - 3, n - 1)
    return _numbered(g)


def type_e(n: int) -> ConcurrencyStructure:
    """Path ``1..n-1`` with ``n`` attached to ``3``."""
    if n < 6:
        raise StructureError("Type E needs n >= 6")
    g = nx.path_graph(n - 1)
    g.add_edge(2, n - 1)
    return _numbered(g)


def gamma(p: int, q: int, r: int) -> ConcurrencyStructure:
    if not 0 <= p <= q <= r:
        raise StructureError(f"Gamma needs 0 <= p <= q <= r, got ({p}, {q}, {r})")
    g = nx.Graph()
    g.add_node("c")
    for arm, length in (("p", p), ("q", q), ("r", r)):
        nx.add_path(g, ["c"] + [f"{arm}{i}" for i in range(1, length + 1)])
    return structure_from_graph(g)


def affine_e6() -> ConcurrencyStructure:
    """``Gamma(2, 2, 2)`` with the letters ``a..g``; ``c`` is the branch point."""
    g = nx.Graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("c", "f"), ("f", "g")])
    return structure_from_graph(g)


def star(k: int) -> ConcurrencyStructure:
    if k < 1:
        raise StructureError("A star needs at least one leaf")
    g = nx.star_graph(k)
    return structure_from_graph(nx.relabel_nodes(g, {v: "c" if v == 0 else f"x{v}" for v in g.nodes}))


def diamond() -> ConcurrencyStructure:
    """``K_4`` without the edge ``1-3``."""
    g = nx.complete_graph(4)
    g.remove_edge(0, 2)
    return _numbered(g)


def paw() -> ConcurrencyStructure:
    """Triangle ``6-7-8`` with the pendant ``5`` on ``6``."""
    return validate_structure(["5", "6", "7", "8"], [("5", "6"), ("6", "7"), ("6", "8"), ("7", "8")])


def disjoint_union(*parts: ConcurrencyStructure) -> ConcurrencyStructure:
    pieces: list[str] = []
    pairs: list[tuple[str, str]] = []
    for part in parts:
        clash = set(pieces) & set(part.pieces)
        if clash:
            raise StructureError(f"Pieces {sorted(clash)} appear in more than one part")
        pieces.extend(part.pieces)
        pairs.extend(part.concurrent)
    return validate_structure(pieces, pairs)


def empty() -> ConcurrencyStructure:
    return ConcurrencyStructure(pieces=())
