"""Heaps of pieces stored in Cartier-Foata canonical form.

A heap over ``n`` vertices is kept as a tuple of labels and a strict order
matrix. Vertices are numbered layer by layer (``T_1`` first), and inside a
layer by alphabet order of their labels. Every layer is a trivial heap, so
its labels are distinct and the numbering is a complete invariant: two
heaps are equal exactly when their label tuples (canonical words) agree.
With this numbering ``order[x, y]`` implies ``x < y``.
"""

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np
import numpy.typing as npt

from ..errors import (
    InvalidVertexError,
    StructureMismatchError,
    UnknownPieceError,
)
from .structure import ConcurrencyStructure, concurrency_matrix

BoolMatrix = npt.NDArray[np.bool_]
Word = tuple[str, ...]


class TrivialFactor(NamedTuple):
    vertices: tuple[int, ...]
    labels: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class Heap:
    structure: ConcurrencyStructure
    labels: Word
    order: BoolMatrix
    layers: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Heap):
            return NotImplemented
        return self.labels == other.labels and self.structure == other.structure

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"Heap({format_factors(self)})"

    @property
    def vertices(self) -> range:
        return range(len(self.labels))

    @property
    def word(self) -> Word:
        return self.labels

    def label(self, v: int) -> str:
        self.check_vertex(v)
        return self.labels[v]

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self.labels):
            raise InvalidVertexError(v, len(self.labels))

    def less(self, x: int, y: int) -> bool:
        return bool(self.order[x, y])

    def is_trivial(self) -> bool:
        return not self.order.any()


def _transitive_closure(relation: BoolMatrix) -> BoolMatrix:
    closure = relation.copy()
    for k in range(closure.shape[0]):
        closure |= np.outer(closure[:, k], closure[k, :])
    return closure


def _layering(order: BoolMatrix) -> list[int]:
    """Cartier-Foata layer index of every vertex (0 for minimal vertices)."""
    n = order.shape[0]
    level = [-1] * n
    remaining = np.ones(n, dtype=bool)
    depth = 0
    while remaining.any():
        below = order[remaining].any(axis=0)
        minimal = np.flatnonzero(remaining & ~below)
        for v in minimal:
            level[v] = depth
        remaining[minimal] = False
        depth += 1
    return level


def _label_matrix(structure: ConcurrencyStructure, labels: Sequence[str]) -> BoolMatrix:
    idx = np.array([structure.index(p) for p in labels], dtype=np.intp)
    if not len(idx):
        return np.zeros((0, 0), dtype=bool)
    conc = concurrency_matrix(structure)
    return conc[np.ix_(idx, idx)]


def check_axioms(structure: ConcurrencyStructure, labels: Sequence[str], order: BoolMatrix) -> None:
    """Raise AssertionError unless ``order`` satisfies both heap axioms."""
    conc = _label_matrix(structure, labels)
    n = len(labels)
    assert not np.diag(order).any(), "order must be strict"
    comparable = order | order.T
    off_diag = conc & ~np.eye(n, dtype=bool)
    assert not (off_diag & ~comparable).any(), "concurrent labels must be comparable"
    assert (_transitive_closure(order & conc) == order).all(), (
        "order must be the closure of its concurrent part"
    )


def _build_indexed(
    structure: ConcurrencyStructure, labels: Sequence[str], relation: BoolMatrix
) -> tuple[Heap, list[int]]:
    """Close ``relation`` transitively and renumber vertices canonically.

    Also returns the canonical vertex of every input position.
    """
    order = _transitive_closure(relation)
    level = _layering(order)
    perm = sorted(range(len(labels)), key=lambda v: (level[v], structure.index(labels[v])))
    canon_order = order[np.ix_(perm, perm)] if perm else np.zeros((0, 0), dtype=bool)
    canon_labels = tuple(labels[v] for v in perm)
    layers: list[list[int]] = []
    for new, old in enumerate(perm):
        if level[old] == len(layers):
            layers.append([])
        layers[level[old]].append(new)
    canon_order.flags.writeable = False
    if __debug__:
        check_axioms(structure, canon_labels, canon_order)
    position = [0] * len(perm)
    for new, old in enumerate(perm):
        position[old] = new
    heap = Heap(structure, canon_labels, canon_order, tuple(tuple(t) for t in layers))
    return heap, position


def _build(structure: ConcurrencyStructure, labels: Sequence[str], relation: BoolMatrix) -> Heap:
    return _build_indexed(structure, labels, relation)[0]


def parse_word(structure: ConcurrencyStructure, word: str | Iterable[str]) -> Word:
    tokens = word.split() if isinstance(word, str) else [str(t) for t in word]
    for position, token in enumerate(tokens):
        if token not in structure:
            raise UnknownPieceError(token, position)
    return tuple(tokens)


def empty_heap(structure: ConcurrencyStructure) -> Heap:
    return _build(structure, (), np.zeros((0, 0), dtype=bool))


def heap_from_word(structure: ConcurrencyStructure, word: str | Iterable[str]) -> Heap:
    """The heap ``a_1 o a_2 o ... o a_r`` of singleton heaps.

    Letter ``i`` sits below letter ``j > i`` whenever their pieces are
    concurrent; the order is the transitive closure of that relation.
    """
    letters = parse_word(structure, word)
    relation = np.triu(_label_matrix(structure, letters), k=1)
    return _build(structure, letters, relation)


def compose(e: Heap, f: Heap) -> Heap:
    if e.structure != f.structure:
        raise StructureMismatchError("Cannot compose heaps over different structures")
    n, m = len(e), len(f)
    labels = e.labels + f.labels
    relation = np.zeros((n + m, n + m), dtype=bool)
    relation[:n, :n] = e.order
    relation[n:, n:] = f.order
    if n and m:
        relation[:n, n:] = _label_matrix(e.structure, labels)[:n, n:]
    return _build(e.structure, labels, relation)


def restricted_order(e: Heap, keep: Sequence[int]) -> BoolMatrix:
    """Order of the subheap on ``keep``, indexed like ``keep``.

    It is the closure of the comparable pairs of ``e`` whose labels are
    concurrent, which may be coarser than ``e``'s order restricted to ``keep``.
    """
    idx = np.asarray(keep, dtype=np.intp)
    if not len(idx):
        return np.zeros((0, 0), dtype=bool)
    conc = _label_matrix(e.structure, [e.labels[v] for v in idx])
    return _transitive_closure(e.order[np.ix_(idx, idx)] & conc)


def subheap(e: Heap, vertices: Iterable[int]) -> Heap:
    keep = sorted(set(vertices))
    for v in keep:
        e.check_vertex(v)
    return _build(e.structure, [e.labels[v] for v in keep], restricted_order(e, keep))


def delete_vertex(e: Heap, v: int) -> Heap:
    e.check_vertex(v)
    return subheap(e, (u for u in e.vertices if u != v))


def factorize(e: Heap) -> list[TrivialFactor]:
    return [TrivialFactor(layer, tuple(e.labels[v] for v in layer)) for layer in e.layers]


def opposite(e: Heap) -> Heap:
    """The heap on the same labelled set with the order reversed."""
    return _build(e.structure, e.labels, e.order.T.copy())


class DoubleEmbedding(NamedTuple):
    heap: Heap
    lower: tuple[int, ...]
    upper: tuple[int, ...]


def double_embedding(e: Heap) -> DoubleEmbedding:
    """The double of ``e`` with the vertex sets carrying ``opposite(e)`` and ``e``.

    The lower copy is ``T_p o ... o T_1``; the upper one reuses ``T_1`` and
    continues with ``T_2 o ... o T_p``.
    """
    factors = [f.labels for f in factorize(e)]
    word = [p for f in reversed(factors) for p in f] + [p for f in factors[1:] for p in f]
    letters = parse_word(e.structure, word)
    relation = np.triu(_label_matrix(e.structure, letters), k=1)
    doubled, position = _build_indexed(e.structure, letters, relation)
    n = len(e)
    first = len(factors[0]) if factors else 0
    lower = tuple(sorted(position[:n]))
    upper = tuple(sorted(position[n - first :]))
    return DoubleEmbedding(doubled, lower, upper)


def double(e: Heap) -> Heap:
    """``T_p o ... o T_2 o T_1 o T_2 o ... o T_p``."""
    return double_embedding(e).heap


def canonical_word(e: Heap) -> Word:
    return e.labels


def heaps_equal(e: Heap, f: Heap) -> bool:
    if e.structure != f.structure:
        raise StructureMismatchError("Cannot compare heaps over different structures")
    return canonical_word(e) == canonical_word(f)


def format_factors(e: Heap) -> str:
    if not len(e):
        return "1"
    return "".join("(" + " ".join(f.labels) + ")" for f in factorize(e))


def open_interval(e: Heap, x: int, y: int) -> list[int]:
    e.check_vertex(x)
    e.check_vertex(y)
    return [int(w) for w in np.flatnonzero(e.order[x] & e.order[:, y])]


def covering_pairs(e: Heap) -> list[tuple[int, int]]:
    """Edges of the Hasse diagram, ``(x, y)`` with ``y`` covering ``x``."""
    n = len(e)
    if not n:
        return []
    as_int = e.order.astype(np.int64)
    through = (as_int @ as_int) > 0
    cover = e.order & ~through
    return [(int(x), int(y)) for x, y in zip(*np.nonzero(cover))]


def occurrences(e: Heap, piece: str) -> list[int]:
    """Indices of the factors in which ``piece`` occurs."""
    e.structure.index(piece)
    return [j for j, f in enumerate(factorize(e)) if piece in f.labels]


def embed(e: Heap, structure: ConcurrencyStructure) -> Heap:
    """Canonical inclusion of a heap over a full sub-structure into ``structure``."""
    if not e.structure.is_restriction_of(structure):
        raise StructureMismatchError(
            "The heap's structure is not a full sub-structure of the target"
        )
    return heap_from_word(structure, e.labels)


def split_components(e: Heap, parts: Sequence[Iterable[str]]) -> list[Heap]:
    """Split a heap over a disjoint union of graphs into its component heaps.

    Each result lives over ``e``'s structure; they commute pairwise and their
    product is ``e``.
    """
    out = []
    for part in parts:
        members = set(part)
        out.append(subheap(e, (v for v in e.vertices if e.labels[v] in members)))
    return out


def commutation_class(
    structure: ConcurrencyStructure, word: str | Iterable[str], limit: Optional[int] = None
) -> set[Word]:
    """All words reachable by swapping adjacent letters that commute."""
    start = parse_word(structure, word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            if structure.commutes(w[i], w[i + 1]):
                nxt = w[:i] + (w[i + 1], w[i]) + w[i + 2 :]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
                    if limit is not None and len(seen) >= limit:
                        return seen
    return seen
