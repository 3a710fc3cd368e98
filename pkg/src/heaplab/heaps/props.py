from enum import Flag
from typing import NamedTuple, Optional

import numpy as np

from ..errors import InvalidChainError
from .heap import Heap, Word, delete_vertex, open_interval, subheap


class DescentSets(NamedTuple):
    left: frozenset[int]
    right: frozenset[int]


class BalancedConvexChain(NamedTuple):
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


class Exposure(Flag):
    NONE = 0
    PLUS = 1
    MINUS = 2


class DismantlingStep(NamedTuple):
    word: Word
    vertex: int
    piece: str
    side: Exposure


def minimal_vertices(e: Heap) -> list[int]:
    return [int(v) for v in np.flatnonzero(~e.order.any(axis=0))]


def maximal_vertices(e: Heap) -> list[int]:
    return [int(v) for v in np.flatnonzero(~e.order.any(axis=1))]


def descents(e: Heap) -> DescentSets:
    return DescentSets(frozenset(minimal_vertices(e)), frozenset(maximal_vertices(e)))


def _same_label_pairs(e: Heap) -> list[tuple[int, int]]:
    return [
        (int(x), int(z))
        for x, z in zip(*np.nonzero(e.order))
        if e.labels[x] == e.labels[z]
    ]


def balanced_convex_chains(e: Heap, max_length: int = 3) -> list[BalancedConvexChain]:
    """Balanced convex chains of length 2 and, if asked, 3.

    A pair ``x < z`` with equal labels is such a chain when its open interval
    is empty; ``x < y < z`` is one when the open interval is exactly ``{y}``.
    """
    if max_length not in (2, 3):
        raise ValueError("max_length must be 2 or 3")
    chains = []
    for x, z in _same_label_pairs(e):
        between = np.flatnonzero(e.order[x] & e.order[:, z])
        if len(between) == 0:
            chains.append(BalancedConvexChain((x, z)))
        elif len(between) == 1 and max_length == 3:
            chains.append(BalancedConvexChain((x, int(between[0]), z)))
    return sorted(chains)


def has_p2(e: Heap) -> bool:
    return not balanced_convex_chains(e, 3)


def has_p2_by_edges(e: Heap) -> bool:
    """P2 read off consecutive same-label pairs: each needs two vertices between."""
    for x, z in _same_label_pairs(e):
        between = np.flatnonzero(e.order[x] & e.order[:, z])
        if any(e.labels[int(w)] == e.labels[x] for w in between):
            continue
        if len(between) < 2:
            return False
    return True


def check_chain(e: Heap, chain: BalancedConvexChain) -> None:
    xs = chain.vertices
    if len(xs) < 2:
        raise InvalidChainError("A chain needs at least two vertices")
    for v in xs:
        e.check_vertex(v)
    for a, b in zip(xs, xs[1:]):
        if not e.less(a, b):
            raise InvalidChainError(f"Vertices {a} and {b} are not increasing in the heap")
    if e.labels[xs[0]] != e.labels[xs[-1]]:
        raise InvalidChainError("Chain is not balanced")
    members = set(xs)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if not set(open_interval(e, xs[i], xs[j])) <= members:
                raise InvalidChainError(f"Chain is not convex between {xs[i]} and {xs[j]}")


def contract(e: Heap, chain: BalancedConvexChain) -> Heap:
    """Contraction along a balanced convex chain: drop every vertex but the first."""
    check_chain(e, chain)
    dropped = set(chain.vertices[1:])
    return subheap(e, (v for v in e.vertices if v not in dropped))


def exposes(e: Heap, a: int) -> Exposure:
    """Which of the relations ``E(a) <+ E`` and ``E(a) <- E`` hold.

    Removing an extremal vertex leaves the order on the rest unchanged, so a
    vertex becomes newly maximal exactly when ``a`` was its only upper bound
    (dually for minimal).
    """
    e.check_vertex(a)
    flags = Exposure.NONE
    above = e.order[a]
    below = e.order[:, a]
    if not above.any():
        for b in np.flatnonzero(below):
            if e.labels[b] != e.labels[a] and e.order[b].sum() == 1:
                flags |= Exposure.PLUS
                break
    if not below.any():
        for b in np.flatnonzero(above):
            if e.labels[b] != e.labels[a] and e.order[:, b].sum() == 1:
                flags |= Exposure.MINUS
                break
    return flags


def dismantle(e: Heap) -> Optional[list[DismantlingStep]]:
    """A removal sequence from ``e`` down to a trivial heap, or None.

    Depth-first over single removals with ``exposes != NONE``; minus steps on
    minimal vertices are tried before plus steps on maximal ones. The memo
    lives for one call only.
    """
    memo: dict[Word, Optional[DismantlingStep]] = {}
    dead: set[Word] = set()

    def search(h: Heap) -> bool:
        if h.is_trivial():
            return True
        if h.labels in memo:
            return True
        if h.labels in dead:
            return False
        candidates = [(v, Exposure.MINUS) for v in minimal_vertices(h)] + [
            (v, Exposure.PLUS) for v in maximal_vertices(h)
        ]
        for v, side in candidates:
            if side & exposes(h, v):
                nxt = delete_vertex(h, v)
                if search(nxt):
                    memo[h.labels] = DismantlingStep(h.labels, v, h.labels[v], side)
                    return True
        dead.add(h.labels)
        return False

    if not search(e):
        return None
    steps = []
    h = e
    while not h.is_trivial():
        step = memo[h.labels]
        steps.append(step)
        h = delete_vertex(h, step.vertex)
    return steps


def has_p1(e: Heap) -> bool:
    return dismantle(e) is not None


def is_minimal_counterexample(e: Heap) -> bool:
    """P2 but not P1, while every extremal deletion is P1."""
    if not has_p2(e) or has_p1(e):
        return False
    extremal = set(minimal_vertices(e)) | set(maximal_vertices(e))
    return all(has_p1(delete_vertex(e, a)) for a in sorted(extremal))
