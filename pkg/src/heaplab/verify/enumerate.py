"""Exhaustive enumeration of heaps through their Cartier-Foata factor sequences.

A heap is listed as nonempty trivial factors ``T_1, ..., T_p`` where every
piece of ``T_{j+1}`` is concurrent with some piece of ``T_j``. Such a
sequence determines the heap and every heap has exactly one, so each heap
is produced once.
"""

import time
from functools import lru_cache
from typing import Iterator, Optional

import networkx as nx
from pydantic import Field

from .. import sys_utils
from ..heaps.heap import Heap, empty_heap, heap_from_word
from ..heaps.props import has_p2
from ..heaps.structure import ConcurrencyStructure
from ..types_ import BaseModel

Factor = tuple[str, ...]


class EnumerationSpec(BaseModel):
    structure: ConcurrencyStructure
    max_vertices: int = Field(ge=0)
    per_size_cap: Optional[int] = Field(default=None, ge=1)
    time_budget_s: Optional[float] = Field(default=None, gt=0)
    p2_only: bool = False


@lru_cache(maxsize=64)
def independent_sets(structure: ConcurrencyStructure) -> tuple[Factor, ...]:
    """Nonempty sets of pairwise commuting pieces, by size then alphabet order."""
    complement = nx.complement(structure.graph())
    sets = (tuple(structure.sort_pieces(c)) for c in nx.enumerate_all_cliques(complement))
    return tuple(sorted(sets, key=lambda s: (len(s), [structure.index(p) for p in s])))


@lru_cache(maxsize=64)
def _successors(structure: ConcurrencyStructure) -> dict[Factor, tuple[Factor, ...]]:
    factors = independent_sets(structure)
    return {
        prev: tuple(
            f for f in factors if all(any(structure.is_concurrent(a, b) for b in prev) for a in f)
        )
        for prev in factors
    }


class HeapEnumerator:
    """Iterates every heap with at most ``spec.max_vertices`` vertices.

    Iteration is depth-first over factor sequences, so the order is fixed
    for a given spec. ``truncated`` is set when a size cap or the time
    budget cut the stream short.
    """

    def __init__(self, spec: EnumerationSpec) -> None:
        self.spec = spec
        self.truncated = False
        self.counts: dict[int, int] = {}
        self._deadline: Optional[float] = None

    def _admit(self, heap: Heap) -> bool:
        size = len(heap)
        cap = self.spec.per_size_cap
        if cap is not None and self.counts.get(size, 0) >= cap:
            if not self.truncated:
                sys_utils.console.log(f"Per-size cap {cap} reached at size {size}")
            self.truncated = True
            return False
        self.counts[size] = self.counts.get(size, 0) + 1
        return True

    def _out_of_time(self) -> bool:
        if self._deadline is not None and time.monotonic() > self._deadline:
            if not self.truncated:
                sys_utils.console.log("Enumeration time budget exhausted, stream is partial")
            self.truncated = True
            return True
        return False

    def _extend(self, word: tuple[str, ...], last: Factor) -> Iterator[Heap]:
        structure = self.spec.structure
        for factor in _successors(structure)[last]:
            if len(word) + len(factor) > self.spec.max_vertices:
                break
            if self._out_of_time():
                return
            nxt = word + factor
            heap = heap_from_word(structure, nxt)
            if self.spec.p2_only and not has_p2(heap):
                continue
            if self._admit(heap):
                yield heap
            yield from self._extend(nxt, factor)

    def __iter__(self) -> Iterator[Heap]:
        structure = self.spec.structure
        if self.spec.time_budget_s is not None:
            self._deadline = time.monotonic() + self.spec.time_budget_s
        empty = empty_heap(structure)
        if self._admit(empty):
            yield empty
        for first in independent_sets(structure):
            if len(first) > self.spec.max_vertices:
                break
            if self._out_of_time():
                return
            heap = heap_from_word(structure, first)
            if self._admit(heap):
                yield heap
            yield from self._extend(first, first)


def enumerate_heaps(spec: EnumerationSpec) -> Iterator[Heap]:
    return iter(HeapEnumerator(spec))
